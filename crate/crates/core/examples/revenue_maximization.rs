//! Revenue maximization on a social network as a weighted cut: free samples go to `k` users,
//! and revenue comes from their neighbours who did not get one. The network round-trips
//! through an edge-list file to show the loader.

use submax::harness::{load_instance, write_instance};
use submax::objectives::{gen_synthetic, ObjectiveKind, SyntheticSpec};
use submax::oracle::{Objective, OracleHandle};
use submax::rng::RngStream;
use submax::solvers::{Algorithm, SolverConfig};

fn main() -> submax::Result<()> {
    let spec = SyntheticSpec::new(ObjectiveKind::GraphCut, 500)
        .density(0.05)
        .weights(0.5, 2.0);
    let net = gen_synthetic(&spec, &mut RngStream::new(11))?;
    let path = std::env::temp_dir().join("submax_revenue_edges.txt");
    write_instance(&net, &path)?;
    let net = load_instance(ObjectiveKind::GraphCut, &path, 0.0)?;
    println!("loaded {} users from {}", net.ground_size(), path.display());

    println!("{:<14} {:>4} {:>12} {:>10}", "algo", "k", "revenue", "queries");
    for k in [10, 25, 50] {
        for algo in [Algorithm::Main, Algorithm::SampleGreedy, Algorithm::RandomGreedy] {
            let h = OracleHandle::new(&net, k)?;
            let out = algo.run(&h, &SolverConfig::new(k).eps(0.25).seed(k as u64))?;
            let q = h.queries();
            println!("{:<14} {k:>4} {:>12.2} {q:>10}", algo.name(), h.value(&out.solution)?);
        }
    }
    Ok(())
}
