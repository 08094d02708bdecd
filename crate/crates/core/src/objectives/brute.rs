use crate::error::{Error, Result};
use crate::oracle::{OracleHandle, Solution};

/// Largest real ground set the exhaustive search accepts.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Exact optimum over all subsets of size at most `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptCertificate {
    pub opt_set: Solution,
    pub opt_value: f64,
    pub enumerated: u64,
}

/// Enumerates every subset of real elements of size `0..=k`. Ties go to the
/// lexicographically smallest sorted id list.
pub fn brute_force_opt(h: &OracleHandle<'_>, k: usize) -> Result<OptCertificate> {
    let n = h.ground().n_real();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let k = k.min(n);
    let mut best_ids: Vec<usize> = Vec::new();
    let mut best_value = h.value(&Solution::empty(k))?;
    let mut enumerated = 1u64;

    for size in 1..=k {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let value = h.value(&Solution::from_ids(combo.iter().copied(), k)?)?;
            enumerated += 1;
            if value > best_value || (value == best_value && combo < best_ids) {
                best_value = value;
                best_ids.clone_from(&combo);
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }

    Ok(OptCertificate {
        opt_set: Solution::from_ids(best_ids, k)?,
        opt_value: best_value,
        enumerated,
    })
}

/// Advances `combo` (strictly increasing ids below `n`) to the next combination in
/// lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let size = combo.len();
    let mut i = size;
    while i > 0 {
        i -= 1;
        if combo[i] < n - size + i {
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{Instance, Modular, WeightedGraph};

    #[test]
    fn path_graph_singleton() {
        let inst = Instance::cut(WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap());
        let h = OracleHandle::new(&inst, 1).unwrap();
        let cert = brute_force_opt(&h, 1).unwrap();
        assert_eq!(cert.opt_set.elements(), &[1]);
        assert_eq!(cert.opt_value, 2.0);
        assert_eq!(cert.enumerated, 4);
    }

    #[test]
    fn single_node_has_zero_cut() {
        let inst = Instance::cut(WeightedGraph::from_edges(1, []).unwrap());
        let h = OracleHandle::new(&inst, 1).unwrap();
        let cert = brute_force_opt(&h, 1).unwrap();
        assert_eq!(cert.opt_value, 0.0);
        assert!(cert.opt_set.is_empty());
    }

    #[test]
    fn full_budget_cut_is_a_proper_subset() {
        let inst = Instance::cut(WeightedGraph::from_edges(4, [(0, 1, 1.0), (2, 3, 3.0)]).unwrap());
        let h = OracleHandle::new(&inst, 4).unwrap();
        let cert = brute_force_opt(&h, 4).unwrap();
        assert_eq!(cert.opt_value, 4.0);
        assert!(cert.opt_set.len() < 4);
        assert_eq!(cert.enumerated, 16);
    }

    #[test]
    fn size_guard() {
        let obj = Modular::new(vec![1.0; 25]);
        let h = OracleHandle::new(&obj, 2).unwrap();
        assert!(matches!(brute_force_opt(&h, 2), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }
}
