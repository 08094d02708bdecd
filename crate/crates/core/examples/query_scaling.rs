//! Query counts as n grows with k = ⌈√n⌉: the stochastic methods grow linearly in n while
//! random greedy grows like n·k.

use submax::harness::{run_on, ExperimentSpec, InstanceSource};
use submax::objectives::{ObjectiveKind, SyntheticSpec};
use submax::solvers::Algorithm;

fn main() -> submax::Result<()> {
    let algos = [Algorithm::Main, Algorithm::SampleGreedy, Algorithm::RandomGreedy];
    println!(
        "{:>6} {:>4} {:>14} {:>14} {:>14}",
        "n", "k", "main", "samplegreedy", "randomgreedy"
    );
    for n in [500, 1000, 2000, 4000] {
        let k = (n as f64).sqrt().ceil() as usize;
        let source = InstanceSource::Synthetic(SyntheticSpec::new(ObjectiveKind::GraphCut, n).density(0.1));
        let mut spec = ExperimentSpec::new(source, algos.to_vec(), vec![k]);
        spec.eps = 0.25;
        spec.reps = 4;
        let inst = spec.load_instance()?;
        let records = run_on(&spec, &inst)?;
        let mean = |a: Algorithm| {
            let q: Vec<f64> = records
                .iter()
                .filter(|r| r.algo == a)
                .map(|r| r.queries as f64)
                .collect();
            q.iter().sum::<f64>() / q.len() as f64
        };
        println!(
            "{n:>6} {k:>4} {:>14.0} {:>14.0} {:>14.0}",
            mean(algos[0]),
            mean(algos[1]),
            mean(algos[2])
        );
    }
    Ok(())
}
