use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::{Instance, ObjectiveKind, SimilarityMatrix, WeightedGraph};

/// Parameters of a synthetic instance.
///
/// Graph-cut instances are Erdős–Rényi graphs with edge probability `density` and weights
/// uniform in `[weight_lo, weight_hi]`. Similarity instances are Gram matrices of `n`
/// random vectors with `dim` coordinates uniform in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub kind: ObjectiveKind,
    pub n: usize,
    pub density: f64,
    pub lambda: f64,
    pub weight_lo: f64,
    pub weight_hi: f64,
    pub dim: usize,
}

impl SyntheticSpec {
    pub fn new(kind: ObjectiveKind, n: usize) -> Self {
        Self {
            kind,
            n,
            density: 0.5,
            lambda: 0.75,
            weight_lo: 0.0,
            weight_hi: 1.0,
            dim: 25,
        }
    }

    pub fn density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }

    pub fn lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn weights(mut self, lo: f64, hi: f64) -> Self {
        self.weight_lo = lo;
        self.weight_hi = hi;
        self
    }

    pub fn dim(mut self, dim: usize) -> Self {
        self.dim = dim;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config(format!(
                "synthetic instances need n >= 2, got {}",
                self.n
            )));
        }
        match self.kind {
            ObjectiveKind::GraphCut => {
                if !(0.0..=1.0).contains(&self.density) {
                    return Err(Error::Config(format!(
                        "density must lie in [0, 1], got {}",
                        self.density
                    )));
                }
                if !(self.weight_lo >= 0.0 && self.weight_lo <= self.weight_hi && self.weight_hi.is_finite()) {
                    return Err(Error::Config(format!(
                        "weight range [{}, {}] must be non-negative and ordered",
                        self.weight_lo, self.weight_hi
                    )));
                }
            }
            ObjectiveKind::CoverageDiversity | ObjectiveKind::FacilityDiversity => {
                if self.dim == 0 {
                    return Err(Error::Config("feature dimension must be positive".into()));
                }
                if !(0.0..=1.0).contains(&self.lambda) {
                    return Err(Error::Config(format!("lambda must lie in [0, 1], got {}", self.lambda)));
                }
            }
        }
        Ok(())
    }
}

pub fn gen_synthetic(spec: &SyntheticSpec, rng: &mut RngStream) -> Result<Instance> {
    spec.validate()?;
    match spec.kind {
        ObjectiveKind::GraphCut => Ok(Instance::cut(random_graph(spec, rng)?)),
        ObjectiveKind::CoverageDiversity => Instance::coverage(gram_matrix(spec, rng)?, spec.lambda),
        ObjectiveKind::FacilityDiversity => Ok(Instance::facility(gram_matrix(spec, rng)?)),
    }
}

fn random_graph(spec: &SyntheticSpec, rng: &mut RngStream) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    for u in 0..spec.n {
        for v in u + 1..spec.n {
            if rng.gen_bool(spec.density) {
                let w = if spec.weight_hi > spec.weight_lo {
                    rng.gen_range(spec.weight_lo..=spec.weight_hi)
                } else {
                    spec.weight_lo
                };
                edges.push((u, v, w));
            }
        }
    }
    WeightedGraph::from_edges(spec.n, edges)
}

fn gram_matrix(spec: &SyntheticSpec, rng: &mut RngStream) -> Result<SimilarityMatrix> {
    let features: Vec<Vec<f64>> = (0..spec.n)
        .map(|_| (0..spec.dim).map(|_| rng.gen::<f64>()).collect())
        .collect();
    let rows = features
        .iter()
        .map(|a| {
            features
                .iter()
                .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    SimilarityMatrix::from_rows(rows)
}
