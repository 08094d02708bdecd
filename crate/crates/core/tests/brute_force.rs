mod common;

use common::{bitmask_opt, coverage_instance, cut_instance, facility_instance, reference_value};
use submax::objectives::{brute_force_opt, Instance};
use submax::oracle::{Objective, OracleHandle, Solution};
use submax::rng::RngStream;
use submax::solvers::{fast_local_search, local_search, SolverConfig};

fn small_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for seed in 0..10 {
        out.push(cut_instance(10 + (seed as usize % 3), 0.4, seed));
        out.push(coverage_instance(9 + (seed as usize % 4), 0.75, seed));
        out.push(facility_instance(10, seed));
    }
    out
}

fn union_and_intersection(inst: &Instance, s: &[usize], opt: &[usize]) -> (f64, f64) {
    let mut union: Vec<usize> = s.to_vec();
    union.extend(opt.iter().filter(|v| !s.contains(v)));
    let inter: Vec<usize> = s.iter().copied().filter(|v| opt.contains(v)).collect();
    (reference_value(inst, &union), reference_value(inst, &inter))
}

#[test]
fn enumeration_agrees_with_bitmask_oracle() {
    for inst in small_instances() {
        let n = inst.ground_size();
        for k in [1, 3, 5] {
            let h = OracleHandle::new(&inst, k).unwrap();
            let cert = brute_force_opt(&h, k).unwrap();
            let (value, _) = bitmask_opt(&inst, n, k);
            assert!((cert.opt_value - value).abs() <= 1e-9);
            assert!(cert.opt_set.len() <= k);
            let expected: u64 = (0..=k).map(|i| binomial(n, i)).sum();
            assert_eq!(cert.enumerated, expected);
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[test]
fn local_search_satisfies_both_inequalities() {
    for (i, inst) in small_instances().into_iter().enumerate() {
        let n = inst.ground_size();
        let k = 3;
        let eps = 0.1;
        let (_, opt) = bitmask_opt(&inst, n, k);
        let h = OracleHandle::new(&inst, k).unwrap();
        let s = local_search(&h, &SolverConfig::new(k).eps(eps), &mut RngStream::new(i as u64)).unwrap();
        let ids = s.strip_dummies(h.ground()).sorted();
        let f = reference_value(&inst, &ids);
        let (f_union, f_inter) = union_and_intersection(&inst, &ids, &opt);
        assert!(f >= (f_union + f_inter) / (2.0 + eps) - 1e-9, "instance {i}");
        assert!(f >= f_inter / (1.0 + eps) - 1e-9, "instance {i}");
    }
}

#[test]
fn certified_fast_local_search_satisfies_both_inequalities() {
    for (i, inst) in small_instances().into_iter().enumerate() {
        let n = inst.ground_size();
        let k = 4;
        let eps = 0.25;
        let (_, opt) = bitmask_opt(&inst, n, k);
        let h = OracleHandle::new(&inst, k).unwrap();
        for seed in 0..5u64 {
            let cfg = SolverConfig::new(k).eps(eps);
            let report = fast_local_search(&h, &cfg, &mut RngStream::new(seed)).unwrap();
            let Some(s) = report.solution else { continue };
            assert_eq!(s.len(), k);
            let ids = s.strip_dummies(h.ground()).sorted();
            let f = reference_value(&inst, &ids);
            let (f_union, f_inter) = union_and_intersection(&inst, &ids, &opt);
            assert!(
                f >= (f_union + f_inter) / (2.0 + eps) - 1e-9,
                "instance {i} seed {seed}"
            );
            assert!(f >= f_inter / (1.0 + eps) - 1e-9, "instance {i} seed {seed}");
        }
    }
}

#[test]
fn brute_force_tie_break_is_lexicographic() {
    // Two disjoint unit edges: {0}, {1}, {2}, {3} all cut weight 1 with k = 1.
    let g = submax::objectives::WeightedGraph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
    let inst = Instance::cut(g);
    let h = OracleHandle::new(&inst, 1).unwrap();
    let cert = brute_force_opt(&h, 1).unwrap();
    assert_eq!(cert.opt_set, Solution::from_ids([0], 1).unwrap());
}
