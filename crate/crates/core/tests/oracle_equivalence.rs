mod common;

use common::{coverage_instance, cut_instance, facility_instance, reference_value};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use submax::objectives::Instance;
use submax::oracle::{submodularity_probe, Objective, OracleHandle, Solution};
use submax::rng::RngStream;

fn instances(seed: u64) -> Vec<Instance> {
    vec![
        cut_instance(14, 0.4, seed),
        coverage_instance(12, 0.75, seed),
        coverage_instance(12, 0.25, seed),
        facility_instance(12, seed),
    ]
}

fn real(ids: &[usize], n: usize) -> Vec<usize> {
    ids.iter().copied().filter(|&i| i < n).collect()
}

/// Random walk over working sets, comparing every incremental answer with a from-scratch
/// reference evaluation.
fn walk(inst: &Instance, k: usize, steps: usize, seed: u64) {
    let h = OracleHandle::new(inst, k).unwrap();
    let n = inst.ground_size();
    let total = h.ground().total();
    let mut rng = RngStream::new(seed);
    let mut ws = h.empty_working();
    for _ in 0..steps {
        let members = ws.members().to_vec();
        let base = reference_value(inst, &real(&members, n));
        assert!((h.current_value(&ws) - base).abs() <= 1e-9);

        let u = rng.gen_range(0..total);
        let mut with = real(&members, n);
        if u < n && !members.contains(&u) {
            with.push(u);
        }
        assert!((h.gain(&mut ws, u) - (reference_value(inst, &with) - base)).abs() <= 1e-9);

        if let Some(&v) = members.choose(&mut rng) {
            let without: Vec<usize> = real(&members, n).into_iter().filter(|&x| x != v).collect();
            assert!((h.loss(&mut ws, v) - (base - reference_value(inst, &without))).abs() <= 1e-9);
            let mut swapped = without.clone();
            if u < n && !members.contains(&u) {
                swapped.push(u);
            }
            let expect = if u == v {
                0.0
            } else {
                reference_value(inst, &swapped) - base
            };
            assert!((h.swap_delta(&mut ws, v, u) - expect).abs() <= 1e-9);
        }

        if !members.is_empty() && (members.len() >= k || rng.gen_bool(0.4)) {
            ws.remove(*members.choose(&mut rng).unwrap());
        } else if !ws.contains(u) {
            ws.insert(u);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn incremental_matches_reference(seed in 0u64..10_000, k in 1usize..6) {
        for inst in instances(seed) {
            walk(&inst, k, 60, seed ^ 0x55);
        }
    }

    #[test]
    fn handle_value_ignores_dummies(seed in 0u64..10_000, picks in proptest::collection::vec(0usize..20, 0..6)) {
        let inst = cut_instance(14, 0.5, seed);
        let h = OracleHandle::new(&inst, 3).unwrap();
        let mut ids = picks;
        ids.sort_unstable();
        ids.dedup();
        let s = Solution::from_ids(ids.iter().copied(), 20).unwrap();
        let expect = reference_value(&inst, &real(&ids, 14));
        prop_assert!((h.value(&s).unwrap() - expect).abs() <= 1e-9);
        for d in h.ground().dummies() {
            prop_assert_eq!(h.marginal(d, &s).unwrap(), 0.0);
        }
    }

    #[test]
    fn marginal_matches_value_difference(seed in 0u64..10_000, u in 0usize..12) {
        let inst = facility_instance(12, seed);
        let h = OracleHandle::new(&inst, 4).unwrap();
        let s = Solution::from_ids([1, 5, 7], 4).unwrap();
        let mut t = s.clone();
        let expect = if s.contains(u) {
            0.0
        } else {
            t.push(u).unwrap();
            reference_value(&inst, t.elements()) - reference_value(&inst, s.elements())
        };
        prop_assert!((h.marginal(u, &s).unwrap() - expect).abs() <= 1e-9);
    }
}

#[test]
fn every_call_is_one_query() {
    let inst = coverage_instance(10, 0.75, 3);
    let h = OracleHandle::new(&inst, 2).unwrap();
    let s = Solution::from_ids([0, 11], 2).unwrap();
    h.value(&s).unwrap();
    h.marginal(3, &s).unwrap();
    h.marginal(12, &s).unwrap();
    let mut ws = h.working(&s).unwrap();
    assert_eq!(h.queries(), 3);
    ws.insert(4);
    ws.remove(4);
    assert_eq!(h.queries(), 3);
    h.gain(&mut ws, 5);
    h.loss(&mut ws, 0);
    h.swap_delta(&mut ws, 0, 5);
    h.current_value(&ws);
    assert_eq!(h.queries(), 7);
}

#[test]
fn shipped_objectives_are_submodular() {
    for (i, inst) in instances(9).into_iter().enumerate() {
        let h = OracleHandle::new(&inst, 2).unwrap();
        assert!(submodularity_probe(&h, 2_000, &mut RngStream::new(i as u64)).unwrap());
    }
}
