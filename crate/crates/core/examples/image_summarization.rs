//! Summarizing an image collection with facility location. Embeddings are drawn around a few
//! cluster centres; a good summary should place one representative in each cluster.

use rand::Rng;
use submax::objectives::{Instance, SimilarityMatrix};
use submax::oracle::OracleHandle;
use submax::rng::RngStream;
use submax::solvers::{solve_main, SolverConfig};

fn main() -> submax::Result<()> {
    let mut rng = RngStream::new(3);
    let clusters = 6;
    let per = 40;
    let centres: Vec<[f64; 2]> = (0..clusters)
        .map(|_| [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)])
        .collect();
    let mut points = Vec::new();
    let mut label = Vec::new();
    for (c, centre) in centres.iter().enumerate() {
        for _ in 0..per {
            points.push([
                centre[0] + rng.gen_range(-1.0..1.0),
                centre[1] + rng.gen_range(-1.0..1.0),
            ]);
            label.push(c);
        }
    }
    let rows: Vec<Vec<f64>> = points
        .iter()
        .map(|a| {
            points
                .iter()
                .map(|b| (-((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)) / 4.0).exp())
                .collect()
        })
        .collect();
    let inst = Instance::facility(SimilarityMatrix::from_rows(rows)?);

    let h = OracleHandle::new(&inst, clusters)?;
    let out = solve_main(&h, &SolverConfig::new(clusters).eps(0.2), &mut RngStream::new(5))?;
    let mut hit: Vec<usize> = out.solution.elements().iter().map(|&i| label[i]).collect();
    hit.sort_unstable();
    hit.dedup();
    println!("summary {:?}", out.solution.sorted());
    println!(
        "value {:.3}, {} of {clusters} clusters represented, {} queries",
        out.value,
        hit.len(),
        h.queries()
    );
    Ok(())
}
