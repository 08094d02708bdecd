//! Inspecting a fast local search run: per-attempt trajectories, the sampled stopping point,
//! and the prefix-sum certificate behind the returned set.

use submax::objectives::{gen_synthetic, ObjectiveKind, SyntheticSpec};
use submax::oracle::OracleHandle;
use submax::rng::RngStream;
use submax::solvers::{check_local_opt_condition, fast_local_search, SolverConfig};

fn main() -> submax::Result<()> {
    let inst = gen_synthetic(
        &SyntheticSpec::new(ObjectiveKind::GraphCut, 200),
        &mut RngStream::new(8),
    )?;
    let (k, eps) = (10, 0.25);
    let h = OracleHandle::new(&inst, k)?;
    let report = fast_local_search(&h, &SolverConfig::new(k).eps(eps), &mut RngStream::new(1))?;
    println!(
        "init value {:.3}, {} iterations per attempt",
        report.init_value, report.iterations
    );
    for (i, a) in report.attempts.iter().enumerate() {
        println!(
            "attempt {i}: {} swaps, {:.3} -> {:.3}, stop at {}, check {}, {} queries",
            a.swaps,
            a.values[0],
            a.values[a.values.len() - 1],
            a.i_star,
            if a.check.satisfied { "passed" } else { "failed" },
            a.queries
        );
    }
    let Some(s) = report.solution else {
        println!("every attempt failed its check");
        return Ok(());
    };
    let cert = check_local_opt_condition(&h, &s, eps)?;
    println!("certified f(S) = {:.3}", cert.f_s);
    println!(
        "tightest t = {}, margin {:.4} (must be <= 0)",
        cert.worst_t, cert.worst_margin
    );
    println!("top add gains   {:?}", &cert.add_gains[..3.min(cert.add_gains.len())]);
    println!(
        "lowest losses   {:?}",
        &cert.removal_losses[..3.min(cert.removal_losses.len())]
    );
    Ok(())
}
