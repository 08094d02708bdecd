//! Picking a diverse movie shortlist. Each movie gets a genre profile; the coverage-diversity
//! objective rewards shortlists that are similar to the whole catalogue but penalizes
//! near-duplicates inside the list.

use rand::Rng;
use submax::objectives::{Instance, SimilarityMatrix};
use submax::oracle::OracleHandle;
use submax::rng::RngStream;
use submax::solvers::{sample_greedy, solve_main, SolverConfig};

const GENRES: [&str; 6] = ["action", "comedy", "drama", "horror", "romance", "scifi"];

fn main() -> submax::Result<()> {
    let mut rng = RngStream::new(42);
    let n = 400;
    // Most movies lean on one or two genres.
    let profiles: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let main = rng.gen_range(0..GENRES.len());
            (0..GENRES.len())
                .map(|g| if g == main { 1.0 } else { rng.gen_range(0.0..0.4) })
                .collect()
        })
        .collect();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let rows: Vec<Vec<f64>> = profiles
        .iter()
        .map(|a| {
            profiles
                .iter()
                .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / (norm(a) * norm(b)))
                .collect()
        })
        .collect();
    let inst = Instance::coverage(SimilarityMatrix::from_rows(rows)?, 0.75)?;

    let k = 12;
    let cfg = SolverConfig::new(k).eps(0.1);
    let h = OracleHandle::new(&inst, k)?;
    let out = solve_main(&h, &cfg, &mut RngStream::new(7))?;
    println!("shortlist value {:.2} using {} queries", out.value, h.queries());
    let mut counts = [0usize; GENRES.len()];
    for &m in out.solution.elements() {
        let p = &profiles[m];
        let g = (0..GENRES.len()).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap();
        counts[g] += 1;
    }
    for (g, c) in GENRES.iter().zip(counts) {
        println!("  {g:<8} {c}");
    }

    let h = OracleHandle::new(&inst, k)?;
    let sg = sample_greedy(&h, &cfg, &mut RngStream::new(7))?;
    println!(
        "sample_greedy value {:.2} using {} queries",
        h.value(&sg)?,
        h.queries() - 1
    );
    Ok(())
}
