//! Solvers for `max f(S)` subject to `|S| ≤ k`.
//!
//! [`fast`] holds the `O(n + k²)`-query pipeline: [`fast::init_solution`],
//! [`fast::fast_local_search`], [`fast::guided_stochastic_greedy`] and [`fast::solve_main`].
//! [`baseline`] holds the classical local search, (guided) random greedy and the
//! `O(nk²)` combination built from them. [`bounds`] evaluates the approximation guarantee
//! and picks the flip point.

pub mod baseline;
pub mod bounds;
pub mod fast;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracle::{OracleHandle, Solution};
use crate::rng::RngStream;

pub use baseline::{guided_random_greedy, local_search, random_greedy, warmup_solve};
pub use bounds::{mixed_coefficients, optimize_bound_params, BoundParams, GreedyCoefficients, DEFAULT_FLIP_POINT};
pub use fast::{
    check_local_opt_condition, fast_local_search, guided_stochastic_greedy, init_solution, sample_greedy, solve_main,
    FastLocalSearchReport, LocalOptReport, MainOutcome,
};

/// Accuracy used by the repeated Sample Greedy initializer in theoretical mode,
/// `1/e − 1/4`.
pub const INIT_EPS: f64 = 0.117_879_441_171_442_33;

/// How the sampling rate `p` of the stochastic greedy is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PMode {
    /// `p = 8 k⁻¹ ε⁻² ln(2/ε)`.
    Theoretical,
    /// `p = 8 / (k ε)`.
    Practical,
}

impl PMode {
    pub fn rate(self, k: usize, eps: f64) -> f64 {
        let k = k as f64;
        match self {
            PMode::Theoretical => 8.0 / (k * eps * eps) * (2.0 / eps).ln(),
            PMode::Practical => 8.0 / (k * eps),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PMode::Theoretical => "theoretical",
            PMode::Practical => "practical",
        }
    }
}

impl FromStr for PMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theoretical" => Ok(PMode::Theoretical),
            "practical" => Ok(PMode::Practical),
            other => Err(Error::Config(format!(
                "unknown p-mode '{other}' (expected theoretical or practical)"
            ))),
        }
    }
}

/// All tunables of the solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub k: usize,
    pub eps: f64,
    /// Fraction of greedy iterations that avoid the guiding set.
    pub flip_point: f64,
    pub p_mode: PMode,
    pub seed: u64,
    /// Overrides the fast local search iteration count `L`.
    pub iterations: Option<usize>,
    /// Overrides the stochastic greedy sampling rate `p`.
    pub sample_rate: Option<f64>,
    /// Exclude the current solution from the stochastic greedy's candidate pool.
    pub exclude_current: bool,
    /// Reuse marginals inside fast local search while the current set is unchanged.
    pub memoize: bool,
}

impl SolverConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            eps: 0.1,
            flip_point: DEFAULT_FLIP_POINT,
            p_mode: PMode::Practical,
            seed: 0,
            iterations: None,
            sample_rate: None,
            exclude_current: true,
            memoize: true,
        }
    }

    pub fn eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn flip_point(mut self, t: f64) -> Self {
        self.flip_point = t;
        self
    }

    pub fn p_mode(mut self, mode: PMode) -> Self {
        self.p_mode = mode;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn iterations(mut self, l: usize) -> Self {
        self.iterations = Some(l);
        self
    }

    pub fn sample_rate(mut self, p: f64) -> Self {
        self.sample_rate = Some(p);
        self
    }

    pub fn exclude_current(mut self, on: bool) -> Self {
        self.exclude_current = on;
        self
    }

    pub fn memoize(mut self, on: bool) -> Self {
        self.memoize = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::Config(format!("eps must lie in (0, 1), got {}", self.eps)));
        }
        if !(0.0..=1.0).contains(&self.flip_point) {
            return Err(Error::Config(format!(
                "flip point must lie in [0, 1], got {}",
                self.flip_point
            )));
        }
        if let Some(p) = self.sample_rate {
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::Config(format!("sample rate must be positive, got {p}")));
            }
        }
        if self.iterations == Some(0) {
            return Err(Error::Config("iteration override must be positive".into()));
        }
        Ok(())
    }

    /// Sampling rate for a stochastic greedy run at accuracy `eps`.
    pub fn rate(&self, eps: f64) -> f64 {
        self.sample_rate.unwrap_or_else(|| self.p_mode.rate(self.k, eps))
    }

    /// `⌈log₂(1/ε)⌉`, the number of local search attempts and of initializer runs.
    pub fn attempts(&self) -> usize {
        ((1.0 / self.eps).log2() - 1e-12).ceil().max(1.0) as usize
    }

    /// `L = ⌈16k / (ε(1 − 1/e))⌉` unless overridden.
    pub fn local_search_iterations(&self) -> usize {
        self.iterations.unwrap_or_else(|| {
            let l = 16.0 * self.k as f64 / (self.eps * (1.0 - (-1.0f64).exp()));
            (l - 1e-9).ceil() as usize
        })
    }

    /// Number of iterations that avoid the guiding set, `⌈k · t_s⌉`.
    pub fn guided_iterations(&self) -> usize {
        ceil_tol(self.k as f64 * self.flip_point).min(self.k)
    }
}

/// `⌈x⌉` that ignores floating noise just above an integer.
pub(crate) fn ceil_tol(x: f64) -> usize {
    (x - 1e-9).ceil().max(0.0) as usize
}

/// Entry points exposed by the benchmark harness and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Fast local search followed by guided stochastic greedy.
    Main,
    /// Classical local search followed by guided random greedy.
    Warmup,
    LocalSearch,
    FastLocalSearch,
    RandomGreedy,
    SampleGreedy,
    /// Guided random greedy steered by the classical local search output.
    GuidedRandomGreedy,
    /// Guided stochastic greedy steered by the fast local search output.
    GuidedStochasticGreedy,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Main,
        Algorithm::Warmup,
        Algorithm::LocalSearch,
        Algorithm::FastLocalSearch,
        Algorithm::RandomGreedy,
        Algorithm::SampleGreedy,
        Algorithm::GuidedRandomGreedy,
        Algorithm::GuidedStochasticGreedy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Main => "main",
            Algorithm::Warmup => "warmup",
            Algorithm::LocalSearch => "localsearch",
            Algorithm::FastLocalSearch => "fastls",
            Algorithm::RandomGreedy => "randomgreedy",
            Algorithm::SampleGreedy => "samplegreedy",
            Algorithm::GuidedRandomGreedy => "guidedrg",
            Algorithm::GuidedStochasticGreedy => "guidedsg",
        }
    }

    /// Runs with a fresh stream seeded from `cfg.seed`. The returned solution has its
    /// dummies stripped.
    pub fn run(self, h: &OracleHandle<'_>, cfg: &SolverConfig) -> Result<RunOutcome> {
        cfg.validate()?;
        let mut rng = RngStream::new(cfg.seed);
        let ground = *h.ground();
        let finish = |s: Solution| RunOutcome {
            solution: s.strip_dummies(&ground),
            failed: false,
        };
        Ok(match self {
            Algorithm::Main => {
                let out = solve_main(h, cfg, &mut rng)?;
                RunOutcome {
                    solution: out.solution,
                    failed: out.failed,
                }
            }
            Algorithm::Warmup => finish(warmup_solve(h, cfg, &mut rng)?),
            Algorithm::LocalSearch => finish(local_search(h, cfg, &mut rng)?),
            Algorithm::FastLocalSearch => match fast_local_search(h, cfg, &mut rng)?.solution {
                Some(s) => finish(s),
                None => RunOutcome {
                    solution: Solution::empty(cfg.k),
                    failed: true,
                },
            },
            Algorithm::RandomGreedy => finish(random_greedy(h, cfg, &mut rng)?),
            Algorithm::SampleGreedy => finish(sample_greedy(h, cfg, &mut rng)?),
            Algorithm::GuidedRandomGreedy => {
                let z = local_search(h, cfg, &mut rng)?;
                finish(guided_random_greedy(h, &z, cfg, &mut rng)?)
            }
            Algorithm::GuidedStochasticGreedy => {
                let z = fast_local_search(h, cfg, &mut rng)?
                    .solution
                    .unwrap_or_else(|| Solution::empty(cfg.k));
                finish(guided_stochastic_greedy(h, &z, cfg, &mut rng)?)
            }
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            Error::Config(format!(
                "unknown algorithm '{s}' (expected one of {})",
                names.join(", ")
            ))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub solution: Solution,
    pub failed: bool,
}

/// Picks the better of two candidate sets by value; on a tie the lexicographically
/// smaller sorted id list wins.
pub(crate) fn better_of(a: (Solution, f64), b: (Solution, f64)) -> (Solution, f64) {
    if b.1 > a.1 || (b.1 == a.1 && b.0.sorted() < a.0.sorted()) {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attempts_and_iterations() {
        assert_eq!(SolverConfig::new(3).eps(0.1).attempts(), 4);
        assert_eq!(SolverConfig::new(3).eps(0.5).attempts(), 1);
        assert_eq!(SolverConfig::new(3).eps(0.25).attempts(), 2);
        assert_eq!(SolverConfig::new(3).eps(0.9).attempts(), 1);
        // 16 * 10 / (0.25 * 0.6321205588) = 1012.46
        assert_eq!(SolverConfig::new(10).eps(0.25).local_search_iterations(), 1013);
        assert_eq!(SolverConfig::new(10).iterations(7).local_search_iterations(), 7);
    }

    #[test]
    fn practical_rate() {
        assert!((PMode::Practical.rate(100, 0.1) - 0.8).abs() < 1e-12);
        let theo = PMode::Theoretical.rate(10, 0.5);
        assert!((theo - 8.0 / (10.0 * 0.25) * 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn guided_iterations_round_up() {
        assert_eq!(SolverConfig::new(10).flip_point(0.3).guided_iterations(), 3);
        assert_eq!(SolverConfig::new(10).flip_point(0.31).guided_iterations(), 4);
        assert_eq!(SolverConfig::new(10).flip_point(0.0).guided_iterations(), 0);
        assert_eq!(SolverConfig::new(10).flip_point(1.0).guided_iterations(), 10);
    }

    #[test]
    fn init_eps_matches_definition() {
        assert!((INIT_EPS - ((-1.0f64).exp() - 0.25)).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(SolverConfig::new(0).validate().is_err());
        assert!(SolverConfig::new(2).eps(1.0).validate().is_err());
        assert!(SolverConfig::new(2).eps(0.0).validate().is_err());
        assert!(SolverConfig::new(2).flip_point(1.5).validate().is_err());
        assert!(SolverConfig::new(2).validate().is_ok());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("greedy".parse::<Algorithm>().is_err());
    }
}
