use std::cmp::Ordering;

use rand::Rng;

use crate::error::{Error, Result};
use crate::oracle::{OracleHandle, Solution};
use crate::rng::RngStream;

use super::fast::best_sample_greedy;
use super::{better_of, SolverConfig};

/// Classical local search. Starting from the best of several Sample Greedy runs, applies
/// the best add (while `|S| < k`), else the best swap (when `|S| = k`), else the best
/// deletion, as long as it raises `f` by a factor of at least `1 + ε/k`. From `f(S) = 0`
/// any strict improvement is taken.
pub fn local_search(h: &OracleHandle<'_>, cfg: &SolverConfig, rng: &mut RngStream) -> Result<Solution> {
    cfg.validate()?;
    let ground = *h.ground();
    let k = cfg.k;
    let (start, _) = best_sample_greedy(h, cfg, rng)?;
    let mut ws = h.working(&start.strip_dummies(&ground))?;
    let n = ground.n_real();
    let mut moves = 0usize;

    loop {
        let f = h.current_value(&ws);
        let threshold = cfg.eps / k as f64 * f;
        let improves = |d: f64| d > 0.0 && d >= threshold;

        if ws.len() < k {
            let outside: Vec<usize> = (0..n).filter(|&u| !ws.contains(u)).collect();
            let mut best = (f64::NEG_INFINITY, usize::MAX);
            for u in outside {
                let g = h.gain(&mut ws, u);
                if g > best.0 {
                    best = (g, u);
                }
            }
            if improves(best.0) {
                ws.insert(best.1);
                moves += 1;
                continue;
            }
        }
        if ws.len() == k {
            let members = ws.members().to_vec();
            let outside: Vec<usize> = (0..n).filter(|&u| !ws.contains(u)).collect();
            let mut best = (f64::NEG_INFINITY, usize::MAX, usize::MAX);
            for &v in &members {
                for &u in &outside {
                    let d = h.swap_delta(&mut ws, v, u);
                    if d > best.0 {
                        best = (d, v, u);
                    }
                }
            }
            if improves(best.0) {
                ws.remove(best.1);
                ws.insert(best.2);
                moves += 1;
                continue;
            }
        }
        if !ws.is_empty() {
            let members = ws.members().to_vec();
            let mut best = (f64::NEG_INFINITY, usize::MAX);
            for v in members {
                let d = -h.loss(&mut ws, v);
                if d > best.0 {
                    best = (d, v);
                }
            }
            if improves(best.0) {
                ws.remove(best.1);
                moves += 1;
                continue;
            }
        }
        break;
    }
    log::debug!("local search stopped after {moves} moves");
    Ok(ws.to_solution(k))
}

/// Greedy that adds, in each of `k` iterations, a uniformly random element among the `k`
/// candidates of largest marginal gain. During the first `⌈k·t_s⌉` iterations the elements
/// of `z` are not candidates. Dummies stay in the pool, so an element with negative gain
/// is only picked once fewer than `k` candidates score at least zero.
pub fn guided_random_greedy(
    h: &OracleHandle<'_>,
    z: &Solution,
    cfg: &SolverConfig,
    rng: &mut RngStream,
) -> Result<Solution> {
    cfg.validate()?;
    let ground = *h.ground();
    let total = ground.total();
    let mut in_z = vec![false; total];
    for &id in z.elements() {
        if id >= total {
            return Err(Error::InvalidElement { id, total });
        }
        in_z[id] = true;
    }
    let k = cfg.k;
    let phase_one = cfg.guided_iterations();
    let mut ws = h.empty_working();
    let mut scored: Vec<(f64, usize)> = Vec::with_capacity(total);

    for i in 1..=k {
        let guided = i <= phase_one;
        scored.clear();
        for (id, &z) in in_z.iter().enumerate() {
            if ws.contains(id) || (guided && z) {
                continue;
            }
            scored.push((h.gain(&mut ws, id), id));
        }
        if scored.is_empty() {
            continue;
        }
        let by_gain = |a: &(f64, usize), b: &(f64, usize)| match b.0.total_cmp(&a.0) {
            Ordering::Equal => a.1.cmp(&b.1),
            o => o,
        };
        let top = k.min(scored.len());
        if top < scored.len() {
            scored.select_nth_unstable_by(top - 1, by_gain);
        }
        scored[..top].sort_by(by_gain);
        let (_, u) = scored[rng.gen_range(0..top)];
        ws.insert(u);
    }
    Ok(ws.to_solution(k))
}

/// Guided random greedy without guidance.
pub fn random_greedy(h: &OracleHandle<'_>, cfg: &SolverConfig, rng: &mut RngStream) -> Result<Solution> {
    let cfg = cfg.clone().flip_point(0.0);
    guided_random_greedy(h, &Solution::empty(cfg.k), &cfg, rng)
}

/// Classical local search, then guided random greedy steered away from its output; returns
/// the better of the two, dummies stripped.
pub fn warmup_solve(h: &OracleHandle<'_>, cfg: &SolverConfig, rng: &mut RngStream) -> Result<Solution> {
    let ground = *h.ground();
    let z = local_search(h, cfg, rng)?;
    let a = guided_random_greedy(h, &z, cfg, rng)?.strip_dummies(&ground);
    let z_value = h.value(&z)?;
    let a_value = h.value(&a)?;
    Ok(better_of((z, z_value), (a, a_value)).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{Instance, Modular, WeightedGraph};

    #[test]
    fn local_search_on_modular_takes_top_k() {
        let obj = Modular::new(vec![5.0, 4.0, 1.0]);
        let h = OracleHandle::new(&obj, 2).unwrap();
        let cfg = SolverConfig::new(2).eps(0.01);
        for seed in 0..10 {
            let s = local_search(&h, &cfg, &mut RngStream::new(seed)).unwrap();
            assert_eq!(s.sorted(), vec![0, 1]);
            assert_eq!(h.value(&s).unwrap(), 9.0);
        }
    }

    #[test]
    fn local_search_single_element() {
        let obj = Modular::new(vec![2.5]);
        let h = OracleHandle::new(&obj, 1).unwrap();
        let s = local_search(&h, &SolverConfig::new(1), &mut RngStream::new(0)).unwrap();
        assert_eq!(s.elements(), &[0]);
    }

    #[test]
    fn local_search_finds_star_center() {
        // Cut on a star: the centre alone cuts every edge; adding leaves only loses weight.
        let g = WeightedGraph::from_edges(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        let inst = Instance::cut(g);
        let h = OracleHandle::new(&inst, 3).unwrap();
        for seed in 0..10 {
            let s = local_search(&h, &SolverConfig::new(3).eps(0.1), &mut RngStream::new(seed)).unwrap();
            assert_eq!(h.value(&s).unwrap(), 3.0, "seed {seed}: {:?}", s.sorted());
        }
    }

    #[test]
    fn random_greedy_top_one_is_forced() {
        let obj = Modular::new(vec![3.0, 1.0, 2.0]);
        let h = OracleHandle::new(&obj, 1).unwrap();
        for seed in 0..10 {
            let s = random_greedy(&h, &SolverConfig::new(1), &mut RngStream::new(seed)).unwrap();
            assert_eq!(h.value(&s).unwrap(), 3.0);
        }
    }

    #[test]
    fn guide_covering_real_elements_yields_zero() {
        let obj = Modular::new(vec![3.0, 1.0, 2.0]);
        let h = OracleHandle::new(&obj, 2).unwrap();
        let z = Solution::from_ids([0, 1, 2], 3).unwrap();
        let cfg = SolverConfig::new(2).flip_point(1.0);
        let s = guided_random_greedy(&h, &z, &cfg, &mut RngStream::new(1)).unwrap();
        assert_eq!(h.value(&s).unwrap(), 0.0);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn warmup_dominates_its_parts() {
        let obj = Modular::new(vec![1.0, 6.0, 2.0, 5.0, 0.5]);
        let h = OracleHandle::new(&obj, 2).unwrap();
        let cfg = SolverConfig::new(2).eps(0.1);
        for seed in 0..5 {
            let w = warmup_solve(&h, &cfg, &mut RngStream::new(seed)).unwrap();
            let mut rng = RngStream::new(seed);
            let z = local_search(&h, &cfg, &mut rng).unwrap();
            let a = guided_random_greedy(&h, &z, &cfg, &mut rng).unwrap();
            let wv = h.value(&w).unwrap();
            assert!(wv >= h.value(&z).unwrap() && wv >= h.value(&a).unwrap());
        }
    }
}
