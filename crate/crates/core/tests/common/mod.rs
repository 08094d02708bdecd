//! Shared helpers: instances, an independent reference evaluator, and an exhaustive
//! optimum computed by bitmask enumeration.
#![allow(dead_code)]

use submax::objectives::{gen_synthetic, Instance, ObjectiveKind, SyntheticSpec};
use submax::rng::RngStream;

pub fn cut_instance(n: usize, density: f64, seed: u64) -> Instance {
    gen_synthetic(
        &SyntheticSpec::new(ObjectiveKind::GraphCut, n).density(density),
        &mut RngStream::new(seed),
    )
    .unwrap()
}

pub fn coverage_instance(n: usize, lambda: f64, seed: u64) -> Instance {
    gen_synthetic(
        &SyntheticSpec::new(ObjectiveKind::CoverageDiversity, n).lambda(lambda),
        &mut RngStream::new(seed),
    )
    .unwrap()
}

pub fn facility_instance(n: usize, seed: u64) -> Instance {
    gen_synthetic(
        &SyntheticSpec::new(ObjectiveKind::FacilityDiversity, n),
        &mut RngStream::new(seed),
    )
    .unwrap()
}

/// Objective value straight from the defining formulas, sharing no code with the crate's
/// evaluators.
pub fn reference_value(inst: &Instance, set: &[usize]) -> f64 {
    match inst {
        Instance::CoverageDiversity(c) => {
            let s = c.similarity();
            let n = s.len();
            let mut cover = 0.0;
            for u in 0..n {
                for &v in set {
                    cover += s.get(u, v);
                }
            }
            let mut within = 0.0;
            for &u in set {
                for &v in set {
                    within += s.get(u, v);
                }
            }
            cover - c.lambda() * within
        }
        Instance::FacilityDiversity(f) => {
            let s = f.similarity();
            let n = s.len();
            let mut rep = 0.0;
            for u in 0..n {
                let mut best = 0.0f64;
                for &v in set {
                    best = best.max(s.get(u, v));
                }
                rep += best;
            }
            let mut within = 0.0;
            for &u in set {
                for &v in set {
                    within += s.get(u, v);
                }
            }
            rep - within / n as f64
        }
        Instance::GraphCut(g) => {
            let g = g.graph();
            let mut total = 0.0;
            for &i in set {
                for j in 0..g.len() {
                    if !set.contains(&j) {
                        total += g.weight(i, j);
                    }
                }
            }
            total
        }
    }
}

/// Maximum of `reference_value` over all subsets of size at most `k`, by bitmask.
pub fn bitmask_opt(inst: &Instance, n: usize, k: usize) -> (f64, Vec<usize>) {
    let mut best = (reference_value(inst, &[]), Vec::new());
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > k {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let v = reference_value(inst, &set);
        if v > best.0 {
            best = (v, set);
        }
    }
    best
}
