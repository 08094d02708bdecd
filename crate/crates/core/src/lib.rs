//! Query-efficient maximization of non-negative (possibly non-monotone) submodular
//! functions subject to a cardinality constraint `|S| ≤ k`.
//!
//! The entry point for most uses is [`solvers::solve_main`]: a sampled local search
//! followed by a stochastic greedy that is steered away from the local optimum, using a
//! number of oracle queries linear in `n` plus `O(k²)`. Classical baselines live in
//! [`solvers::baseline`]; [`harness`] runs seeded benchmarks and writes CSV/SVG reports.
//!
//! ```
//! use submax::objectives::{Instance, WeightedGraph};
//! use submax::oracle::OracleHandle;
//! use submax::rng::RngStream;
//! use submax::solvers::{solve_main, SolverConfig};
//!
//! let graph = WeightedGraph::from_edges(4, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0)]).unwrap();
//! let cut = Instance::cut(graph);
//! let oracle = OracleHandle::new(&cut, 2).unwrap();
//! let out = solve_main(&oracle, &SolverConfig::new(2).eps(0.25), &mut RngStream::new(7)).unwrap();
//! assert!(out.value >= 0.0);
//! println!("{:?} -> {} ({} queries)", out.solution.sorted(), out.value, oracle.queries());
//! ```

pub mod error;
pub mod harness;
pub mod objectives;
pub mod oracle;
pub mod rng;
pub mod solvers;

pub use error::{Error, Result};
