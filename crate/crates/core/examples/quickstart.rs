//! Smallest end-to-end run: build a graph-cut objective, solve, compare with a baseline.

use submax::objectives::{gen_synthetic, ObjectiveKind, SyntheticSpec};
use submax::oracle::OracleHandle;
use submax::rng::RngStream;
use submax::solvers::{random_greedy, solve_main, SolverConfig};

fn main() -> submax::Result<()> {
    let spec = SyntheticSpec::new(ObjectiveKind::GraphCut, 300).density(0.2);
    let inst = gen_synthetic(&spec, &mut RngStream::new(1))?;
    let k = 15;
    let cfg = SolverConfig::new(k).eps(0.25);

    let h = OracleHandle::new(&inst, k)?;
    let main = solve_main(&h, &cfg, &mut RngStream::new(2))?;
    println!(
        "solve_main    value {:>10.3}  queries {:>8}  failed {}",
        main.value,
        h.queries(),
        main.failed
    );
    println!("  picked {:?}", main.solution.sorted());

    let h = OracleHandle::new(&inst, k)?;
    let rg = random_greedy(&h, &cfg, &mut RngStream::new(2))?;
    println!(
        "random_greedy value {:>10.3}  queries {:>8}",
        h.value(&rg)?,
        h.queries() - 1
    );
    Ok(())
}
