//! Application objectives: coverage with a diversity penalty (movie recommendation),
//! facility location with a diversity penalty (image summarization), and weighted graph
//! cut (revenue maximization). Each comes with an incremental tracker so that a marginal
//! costs O(n) arithmetic at worst.

mod brute;
mod coverage;
mod cut;
mod facility;
mod synthetic;

use std::fmt;
use std::str::FromStr;

pub use brute::{brute_force_opt, OptCertificate, BRUTE_FORCE_LIMIT};
pub use coverage::CoverageDiversity;
pub use cut::GraphCut;
pub use facility::FacilityDiversity;
pub use synthetic::{gen_synthetic, SyntheticSpec};

use crate::error::{Error, Result};
use crate::oracle::{MarginalTracker, NaiveTracker, Objective, Solution};

/// Dense square matrix of non-negative similarities, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SimilarityMatrix {
    /// Builds from rows; negative entries are clamped to 0.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("similarity matrix has no rows".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            data.extend(row.into_iter().map(|x| x.max(0.0)));
        }
        Ok(Self { n, data })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[f64] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }
}

/// Undirected graph with non-negative symmetric weights and no self-loops.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
    degree: Vec<f64>,
}

impl WeightedGraph {
    /// Builds from undirected edges. Repeated pairs are summed; self-loops are ignored.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::Shape(format!("edge ({u}, {v}) outside {n} nodes")));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::Config(format!("edge ({u}, {v}) has invalid weight {w}")));
            }
            if u == v {
                continue;
            }
            add_weight(&mut adjacency[u], v, w);
            add_weight(&mut adjacency[v], u, w);
        }
        for list in &mut adjacency {
            list.sort_unstable_by_key(|&(j, _)| j);
        }
        let degree = adjacency
            .iter()
            .map(|list| list.iter().map(|&(_, w)| w).sum())
            .collect();
        Ok(Self { adjacency, degree })
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> f64 {
        self.degree[u]
    }

    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.adjacency[u]
            .binary_search_by_key(&v, |&(j, _)| j)
            .map(|ix| self.adjacency[u][ix].1)
            .unwrap_or(0.0)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&(v, _)| u < v).map(move |&(v, w)| (u, v, w)))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            adjacency: self
                .adjacency
                .iter()
                .map(|l| l.iter().map(|&(j, w)| (j, w * c)).collect())
                .collect(),
            degree: self.degree.iter().map(|d| d * c).collect(),
        }
    }
}

fn add_weight(list: &mut Vec<(usize, f64)>, v: usize, w: f64) {
    match list.iter_mut().find(|(j, _)| *j == v) {
        Some(entry) => entry.1 += w,
        None => list.push((v, w)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjectiveKind {
    CoverageDiversity,
    FacilityDiversity,
    GraphCut,
}

impl ObjectiveKind {
    pub fn name(self) -> &'static str {
        match self {
            ObjectiveKind::CoverageDiversity => "coverage",
            ObjectiveKind::FacilityDiversity => "facility",
            ObjectiveKind::GraphCut => "cut",
        }
    }
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ObjectiveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coverage" => Ok(ObjectiveKind::CoverageDiversity),
            "facility" => Ok(ObjectiveKind::FacilityDiversity),
            "cut" => Ok(ObjectiveKind::GraphCut),
            other => Err(Error::Config(format!(
                "unknown objective '{other}' (expected coverage, facility or cut)"
            ))),
        }
    }
}

/// One concrete objective together with its data.
#[derive(Debug, Clone)]
pub enum Instance {
    CoverageDiversity(CoverageDiversity),
    FacilityDiversity(FacilityDiversity),
    GraphCut(GraphCut),
}

impl Instance {
    pub fn coverage(sim: SimilarityMatrix, lambda: f64) -> Result<Self> {
        Ok(Instance::CoverageDiversity(CoverageDiversity::new(sim, lambda)?))
    }

    pub fn facility(sim: SimilarityMatrix) -> Self {
        Instance::FacilityDiversity(FacilityDiversity::new(sim))
    }

    pub fn cut(graph: WeightedGraph) -> Self {
        Instance::GraphCut(GraphCut::new(graph))
    }

    pub fn kind(&self) -> ObjectiveKind {
        match self {
            Instance::CoverageDiversity(_) => ObjectiveKind::CoverageDiversity,
            Instance::FacilityDiversity(_) => ObjectiveKind::FacilityDiversity,
            Instance::GraphCut(_) => ObjectiveKind::GraphCut,
        }
    }

    /// Same instance with every similarity or weight multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        match self {
            Instance::CoverageDiversity(o) => {
                Instance::CoverageDiversity(CoverageDiversity::new(o.similarity().scaled(c), o.lambda()).unwrap())
            }
            Instance::FacilityDiversity(o) => {
                Instance::FacilityDiversity(FacilityDiversity::new(o.similarity().scaled(c)))
            }
            Instance::GraphCut(o) => Instance::GraphCut(GraphCut::new(o.graph().scaled(c))),
        }
    }

    fn as_objective(&self) -> &dyn Objective {
        match self {
            Instance::CoverageDiversity(o) => o,
            Instance::FacilityDiversity(o) => o,
            Instance::GraphCut(o) => o,
        }
    }

    fn checked_ids<'s>(&self, expected: ObjectiveKind, s: &'s Solution) -> Result<&'s [usize]> {
        if self.kind() != expected {
            return Err(Error::WrongObjective {
                expected: expected.name(),
                found: self.kind().name(),
            });
        }
        let n = self.ground_size();
        if let Some(&id) = s.elements().iter().find(|&&id| id >= n) {
            return Err(Error::InvalidElement { id, total: n });
        }
        Ok(s.elements())
    }
}

impl Objective for Instance {
    fn ground_size(&self) -> usize {
        self.as_objective().ground_size()
    }

    fn evaluate(&self, set: &[usize]) -> f64 {
        self.as_objective().evaluate(set)
    }

    fn tracker(&self) -> Box<dyn MarginalTracker + '_> {
        self.as_objective().tracker()
    }
}

pub fn coverage_diversity_value(inst: &Instance, s: &Solution) -> Result<f64> {
    let ids = inst.checked_ids(ObjectiveKind::CoverageDiversity, s)?;
    Ok(inst.evaluate(ids))
}

pub fn facility_diversity_value(inst: &Instance, s: &Solution) -> Result<f64> {
    let ids = inst.checked_ids(ObjectiveKind::FacilityDiversity, s)?;
    Ok(inst.evaluate(ids))
}

pub fn cut_value(inst: &Instance, s: &Solution) -> Result<f64> {
    let ids = inst.checked_ids(ObjectiveKind::GraphCut, s)?;
    Ok(inst.evaluate(ids))
}

/// Modular function `f(S) = Σ_{u ∈ S} w_u` with non-negative weights.
#[derive(Debug, Clone)]
pub struct Modular {
    weights: Vec<f64>,
}

impl Modular {
    pub fn new(weights: Vec<f64>) -> Self {
        assert!(
            weights.iter().all(|&w| w >= 0.0),
            "modular weights must be non-negative"
        );
        Self { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl Objective for Modular {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn evaluate(&self, set: &[usize]) -> f64 {
        set.iter().map(|&u| self.weights[u]).sum()
    }

    fn tracker(&self) -> Box<dyn MarginalTracker + '_> {
        Box::new(NaiveTracker::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(ids: &[usize]) -> Solution {
        Solution::from_ids(ids.iter().copied(), 16).unwrap()
    }

    #[test]
    fn coverage_worked_example() {
        let sim = SimilarityMatrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        let inst = Instance::coverage(sim, 0.5).unwrap();
        // column sum of element 1 is 6, minus 0.5 * s_11 = 2.
        assert_eq!(coverage_diversity_value(&inst, &sol(&[1])).unwrap(), 4.0);
        assert_eq!(coverage_diversity_value(&inst, &sol(&[])).unwrap(), 0.0);
        assert!(matches!(
            cut_value(&inst, &sol(&[0])),
            Err(Error::WrongObjective { .. })
        ));
    }

    #[test]
    fn facility_worked_examples() {
        let sim = SimilarityMatrix::from_rows(vec![vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let inst = Instance::facility(sim);
        assert_eq!(facility_diversity_value(&inst, &sol(&[0])).unwrap(), 1.0);
        assert_eq!(facility_diversity_value(&inst, &sol(&[])).unwrap(), 0.0);
        assert_eq!(facility_diversity_value(&inst, &sol(&[0, 1])).unwrap(), 0.5);
        assert!(coverage_diversity_value(&inst, &sol(&[0])).is_err());
    }

    #[test]
    fn cut_worked_examples() {
        let triangle = Instance::cut(WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap());
        assert_eq!(cut_value(&triangle, &sol(&[0])).unwrap(), 2.0);
        assert_eq!(cut_value(&triangle, &sol(&[])).unwrap(), 0.0);
        assert_eq!(cut_value(&triangle, &sol(&[0, 1, 2])).unwrap(), 0.0);
        let path = Instance::cut(WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap());
        assert_eq!(cut_value(&path, &sol(&[1])).unwrap(), 2.0);
        assert!(matches!(
            cut_value(&path, &sol(&[7])),
            Err(Error::InvalidElement { .. })
        ));
        assert!(facility_diversity_value(&path, &sol(&[1])).is_err());
    }

    #[test]
    fn negative_similarities_clamp_to_zero() {
        let sim = SimilarityMatrix::from_rows(vec![vec![1.0, -0.5], vec![-0.5, 1.0]]).unwrap();
        assert_eq!(sim.get(0, 1), 0.0);
        assert!(SimilarityMatrix::from_rows(vec![vec![1.0, 2.0], vec![2.0]]).is_err());
    }

    #[test]
    fn graph_merges_duplicates_and_drops_loops() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 0, 1.0), (2, 2, 5.0)]).unwrap();
        assert_eq!(g.weight(0, 1), 2.0);
        assert_eq!(g.weight(1, 0), 2.0);
        assert_eq!(g.degree(2), 0.0);
        assert_eq!(g.edge_count(), 1);
        assert!(WeightedGraph::from_edges(2, [(0, 1, -1.0)]).is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("cut".parse::<ObjectiveKind>().unwrap(), ObjectiveKind::GraphCut);
        assert!("knapsack".parse::<ObjectiveKind>().is_err());
    }
}
