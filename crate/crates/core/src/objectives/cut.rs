use crate::oracle::{MarginalTracker, Objective};

use super::WeightedGraph;

/// `f(S) = Σ_{i ∈ S} Σ_{j ∉ S} w(i, j)`.
#[derive(Debug, Clone)]
pub struct GraphCut {
    graph: WeightedGraph,
}

impl GraphCut {
    pub fn new(graph: WeightedGraph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }
}

impl Objective for GraphCut {
    fn ground_size(&self) -> usize {
        self.graph.len()
    }

    fn evaluate(&self, set: &[usize]) -> f64 {
        let mut inside = vec![false; self.graph.len()];
        for &u in set {
            inside[u] = true;
        }
        set.iter()
            .flat_map(|&u| self.graph.neighbors(u))
            .filter(|&&(j, _)| !inside[j])
            .map(|&(_, w)| w)
            .sum()
    }

    fn tracker(&self) -> Box<dyn MarginalTracker + '_> {
        Box::new(CutTracker {
            graph: &self.graph,
            toward_set: vec![0.0; self.graph.len()],
            value: 0.0,
        })
    }
}

struct CutTracker<'a> {
    graph: &'a WeightedGraph,
    // Σ_{i ∈ S} w(i, x)
    toward_set: Vec<f64>,
    value: f64,
}

impl MarginalTracker for CutTracker<'_> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&mut self, u: usize) -> f64 {
        self.graph.degree(u) - 2.0 * self.toward_set[u]
    }

    fn loss(&mut self, v: usize) -> f64 {
        self.graph.degree(v) - 2.0 * self.toward_set[v]
    }

    fn insert(&mut self, u: usize) {
        self.value += self.gain(u);
        for &(j, w) in self.graph.neighbors(u) {
            self.toward_set[j] += w;
        }
    }

    fn remove(&mut self, v: usize) {
        self.value -= self.loss(v);
        for &(j, w) in self.graph.neighbors(v) {
            self.toward_set[j] -= w;
        }
    }

    fn swap_delta(&mut self, out: usize, inc: usize) -> f64 {
        let w = self.graph.weight(out, inc);
        let gain_without = self.graph.degree(inc) - 2.0 * (self.toward_set[inc] - w);
        gain_without - self.loss(out)
    }
}
