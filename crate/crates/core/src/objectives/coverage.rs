use crate::error::{Error, Result};
use crate::oracle::{MarginalTracker, Objective};

use super::SimilarityMatrix;

/// `f(S) = Σ_{u ∈ N} Σ_{v ∈ S} s(u, v) − λ Σ_{u ∈ S} Σ_{v ∈ S} s(u, v)`.
///
/// Non-negative for `λ ≤ 1`, monotone for `λ ≤ 0.5`.
#[derive(Debug, Clone)]
pub struct CoverageDiversity {
    sim: SimilarityMatrix,
    lambda: f64,
    column_sums: Vec<f64>,
}

impl CoverageDiversity {
    pub fn new(sim: SimilarityMatrix, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Config(format!("lambda must lie in [0, 1], got {lambda}")));
        }
        let n = sim.len();
        let mut column_sums = vec![0.0; n];
        for u in 0..n {
            for (v, s) in sim.row(u).iter().enumerate() {
                column_sums[v] += s;
            }
        }
        Ok(Self {
            sim,
            lambda,
            column_sums,
        })
    }

    pub fn similarity(&self) -> &SimilarityMatrix {
        &self.sim
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl Objective for CoverageDiversity {
    fn ground_size(&self) -> usize {
        self.sim.len()
    }

    fn evaluate(&self, set: &[usize]) -> f64 {
        let coverage: f64 = set.iter().map(|&v| self.column_sums[v]).sum();
        let mut within = 0.0;
        for &u in set {
            for &v in set {
                within += self.sim.get(u, v);
            }
        }
        coverage - self.lambda * within
    }

    fn tracker(&self) -> Box<dyn MarginalTracker + '_> {
        Box::new(CoverageTracker {
            obj: self,
            // pair[x] = Σ_{v ∈ S} (s(x, v) + s(v, x))
            pair: vec![0.0; self.sim.len()],
            value: 0.0,
        })
    }
}

struct CoverageTracker<'a> {
    obj: &'a CoverageDiversity,
    pair: Vec<f64>,
    value: f64,
}

impl MarginalTracker for CoverageTracker<'_> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&mut self, u: usize) -> f64 {
        let s = &self.obj.sim;
        self.obj.column_sums[u] - self.obj.lambda * (self.pair[u] + s.get(u, u))
    }

    fn loss(&mut self, v: usize) -> f64 {
        let s = &self.obj.sim;
        self.obj.column_sums[v] - self.obj.lambda * (self.pair[v] - s.get(v, v))
    }

    fn insert(&mut self, u: usize) {
        self.value += self.gain(u);
        let s = &self.obj.sim;
        let row = s.row(u);
        for (x, p) in self.pair.iter_mut().enumerate() {
            *p += row[x] + s.get(x, u);
        }
    }

    fn remove(&mut self, v: usize) {
        self.value -= self.loss(v);
        let s = &self.obj.sim;
        let row = s.row(v);
        for (x, p) in self.pair.iter_mut().enumerate() {
            *p -= row[x] + s.get(x, v);
        }
    }

    fn swap_delta(&mut self, out: usize, inc: usize) -> f64 {
        let s = &self.obj.sim;
        let gain_without = self.obj.column_sums[inc]
            - self.obj.lambda * (self.pair[inc] - s.get(inc, out) - s.get(out, inc) + s.get(inc, inc));
        gain_without - self.loss(out)
    }
}
