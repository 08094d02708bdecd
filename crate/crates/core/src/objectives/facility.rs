use crate::oracle::{MarginalTracker, Objective};

use super::SimilarityMatrix;

const NONE: usize = usize::MAX;

/// `f(S) = Σ_{u ∈ N} max_{v ∈ S} s(u, v) − (1/|N|) Σ_{u ∈ S} Σ_{v ∈ S} s(u, v)`,
/// with the maximum over the empty set taken as 0.
#[derive(Debug, Clone)]
pub struct FacilityDiversity {
    sim: SimilarityMatrix,
}

impl FacilityDiversity {
    pub fn new(sim: SimilarityMatrix) -> Self {
        Self { sim }
    }

    pub fn similarity(&self) -> &SimilarityMatrix {
        &self.sim
    }
}

impl Objective for FacilityDiversity {
    fn ground_size(&self) -> usize {
        self.sim.len()
    }

    fn evaluate(&self, set: &[usize]) -> f64 {
        let n = self.sim.len();
        let mut represented = 0.0;
        for u in 0..n {
            represented += set.iter().map(|&v| self.sim.get(u, v)).fold(0.0, f64::max);
        }
        let mut within = 0.0;
        for &u in set {
            for &v in set {
                within += self.sim.get(u, v);
            }
        }
        represented - within / n as f64
    }

    fn tracker(&self) -> Box<dyn MarginalTracker + '_> {
        let n = self.sim.len();
        Box::new(FacilityTracker {
            sim: &self.sim,
            inv_n: 1.0 / n as f64,
            members: Vec::new(),
            best: vec![(0.0, NONE); n],
            second: vec![(0.0, NONE); n],
            pair: vec![0.0; n],
            value: 0.0,
        })
    }
}

/// Keeps, for every row `u`, the two largest `s(u, v)` over `v ∈ S` (floored at 0) so that
/// both gains and removal losses are O(n).
struct FacilityTracker<'a> {
    sim: &'a SimilarityMatrix,
    inv_n: f64,
    members: Vec<usize>,
    best: Vec<(f64, usize)>,
    second: Vec<(f64, usize)>,
    // Σ_{v ∈ S} (s(x, v) + s(v, x))
    pair: Vec<f64>,
    value: f64,
}

impl FacilityTracker<'_> {
    fn recompute_row(&mut self, u: usize) {
        let mut best = (0.0, NONE);
        let mut second = (0.0, NONE);
        for &v in &self.members {
            let s = self.sim.get(u, v);
            if s > best.0 {
                second = best;
                best = (s, v);
            } else if s > second.0 {
                second = (s, v);
            }
        }
        self.best[u] = best;
        self.second[u] = second;
    }
}

impl MarginalTracker for FacilityTracker<'_> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&mut self, x: usize) -> f64 {
        let n = self.best.len();
        let mut represented = 0.0;
        for u in 0..n {
            let d = self.sim.get(u, x) - self.best[u].0;
            if d > 0.0 {
                represented += d;
            }
        }
        represented - self.inv_n * (self.pair[x] + self.sim.get(x, x))
    }

    fn loss(&mut self, v: usize) -> f64 {
        let represented: f64 = self
            .best
            .iter()
            .zip(&self.second)
            .filter(|(b, _)| b.1 == v)
            .map(|(b, s)| b.0 - s.0)
            .sum();
        represented - self.inv_n * (self.pair[v] - self.sim.get(v, v))
    }

    fn insert(&mut self, y: usize) {
        self.value += self.gain(y);
        self.members.push(y);
        let n = self.best.len();
        for u in 0..n {
            let s = self.sim.get(u, y);
            if s > self.best[u].0 {
                self.second[u] = self.best[u];
                self.best[u] = (s, y);
            } else if s > self.second[u].0 {
                self.second[u] = (s, y);
            }
        }
        let row = self.sim.row(y);
        for (x, p) in self.pair.iter_mut().enumerate() {
            *p += row[x] + self.sim.get(x, y);
        }
    }

    fn remove(&mut self, v: usize) {
        self.value -= self.loss(v);
        self.members.retain(|&x| x != v);
        let n = self.best.len();
        for u in 0..n {
            if self.best[u].1 == v || self.second[u].1 == v {
                self.recompute_row(u);
            }
        }
        let row = self.sim.row(v);
        for (x, p) in self.pair.iter_mut().enumerate() {
            *p -= row[x] + self.sim.get(x, v);
        }
    }
}
