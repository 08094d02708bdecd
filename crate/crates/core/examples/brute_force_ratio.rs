//! Empirical approximation ratios against the exact optimum on instances small enough to
//! enumerate.

use submax::objectives::{brute_force_opt, gen_synthetic, ObjectiveKind, SyntheticSpec};
use submax::oracle::OracleHandle;
use submax::rng::RngStream;
use submax::solvers::{Algorithm, SolverConfig};

fn main() -> submax::Result<()> {
    let k = 4;
    let kinds = [
        (ObjectiveKind::GraphCut, 14),
        (ObjectiveKind::CoverageDiversity, 12),
        (ObjectiveKind::FacilityDiversity, 12),
    ];
    for (kind, n) in kinds {
        let mut sums = vec![0.0; Algorithm::ALL.len()];
        let trials = 10;
        for seed in 0..trials {
            let inst = gen_synthetic(&SyntheticSpec::new(kind, n), &mut RngStream::new(seed))?;
            let h = OracleHandle::new(&inst, k)?;
            let opt = brute_force_opt(&h, k)?.opt_value;
            for (i, algo) in Algorithm::ALL.iter().enumerate() {
                let out = algo.run(&h, &SolverConfig::new(k).eps(0.1).seed(seed))?;
                sums[i] += h.value(&out.solution)? / opt;
            }
        }
        println!("{kind} (n = {n}, k = {k})");
        for (algo, s) in Algorithm::ALL.iter().zip(sums) {
            println!("  {:<14} mean ratio {:.4}", algo.name(), s / trials as f64);
        }
    }
    Ok(())
}
