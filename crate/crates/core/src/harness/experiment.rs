use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::objectives::{gen_synthetic, Instance, ObjectiveKind, SyntheticSpec};
use crate::oracle::{Objective, OracleHandle};
use crate::rng::{derive_seed, RngStream};
use crate::solvers::{Algorithm, PMode, SolverConfig, DEFAULT_FLIP_POINT};

use super::io::load_instance;

/// Where the benchmark instance comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    File {
        kind: ObjectiveKind,
        path: PathBuf,
        lambda: f64,
    },
    /// Generated from a stream derived from the experiment's master seed.
    Synthetic(SyntheticSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub source: InstanceSource,
    pub algorithms: Vec<Algorithm>,
    pub ks: Vec<usize>,
    pub eps: f64,
    pub flip_point: f64,
    pub p_mode: PMode,
    pub reps: usize,
    pub seed: u64,
    /// Run cells on the rayon pool.
    pub parallel: bool,
}

impl ExperimentSpec {
    pub fn new(source: InstanceSource, algorithms: Vec<Algorithm>, ks: Vec<usize>) -> Self {
        Self {
            source,
            algorithms,
            ks,
            eps: 0.1,
            flip_point: DEFAULT_FLIP_POINT,
            p_mode: PMode::Practical,
            reps: 8,
            seed: 0,
            parallel: true,
        }
    }

    pub fn load_instance(&self) -> Result<Instance> {
        match &self.source {
            InstanceSource::File { kind, path, lambda } => load_instance(*kind, path, *lambda),
            InstanceSource::Synthetic(spec) => {
                gen_synthetic(spec, &mut RngStream::new(derive_seed(self.seed, &[u64::MAX])))
            }
        }
    }

    fn config(&self, k: usize, seed: u64) -> SolverConfig {
        SolverConfig::new(k)
            .eps(self.eps)
            .flip_point(self.flip_point)
            .p_mode(self.p_mode)
            .seed(seed)
    }

    /// Checks the experiment against an instance with `n_real` elements.
    pub fn validate(&self, n_real: usize) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        if self.ks.is_empty() {
            return Err(Error::Config("no k values given".into()));
        }
        for &k in &self.ks {
            if k == 0 || k > n_real {
                return Err(Error::Config(format!("k = {k} is outside [1, {n_real}]")));
            }
            self.config(k, 0).validate()?;
        }
        Ok(())
    }
}

/// One solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algo: Algorithm,
    pub k: usize,
    pub seed: u64,
    pub value: f64,
    pub queries: u64,
    pub wall_ms: f64,
    pub failed: bool,
}

/// Seed of one cell; depends only on the master seed, the algorithm, `k` and the
/// repetition index.
pub fn cell_seed(master: u64, algo: Algorithm, k: usize, rep: usize) -> u64 {
    let algo_ix = Algorithm::ALL
        .iter()
        .position(|&a| a == algo)
        .expect("listed algorithm") as u64;
    derive_seed(master, &[algo_ix, k as u64, rep as u64])
}

/// Loads the instance and runs every (algorithm, k, repetition) cell.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<RunRecord>> {
    let instance = spec.load_instance()?;
    run_on(spec, &instance)
}

/// Runs every cell of `spec` against an already loaded objective. Records come back in
/// (algorithm, k, repetition) order regardless of scheduling.
pub fn run_on(spec: &ExperimentSpec, objective: &dyn Objective) -> Result<Vec<RunRecord>> {
    spec.validate(objective.ground_size())?;
    let cells: Vec<(Algorithm, usize, usize)> = spec
        .algorithms
        .iter()
        .flat_map(|&a| {
            spec.ks
                .iter()
                .flat_map(move |&k| (0..spec.reps).map(move |r| (a, k, r)))
        })
        .collect();
    let run = |&(algo, k, rep): &(Algorithm, usize, usize)| run_cell(spec, objective, algo, k, rep);
    if spec.parallel {
        cells.par_iter().map(run).collect()
    } else {
        cells.iter().map(run).collect()
    }
}

fn run_cell(
    spec: &ExperimentSpec,
    objective: &dyn Objective,
    algo: Algorithm,
    k: usize,
    rep: usize,
) -> Result<RunRecord> {
    let seed = cell_seed(spec.seed, algo, k, rep);
    let h = OracleHandle::new(objective, k)?;
    let start = Instant::now();
    let outcome = algo.run(&h, &spec.config(k, seed))?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let queries = h.queries();
    let value = h.value(&outcome.solution)?;
    log::debug!("{algo} k={k} rep={rep}: value {value}, {queries} queries");
    Ok(RunRecord {
        algo,
        k,
        seed,
        value,
        queries,
        wall_ms,
        failed: outcome.failed,
    })
}
