use std::cmp::Ordering;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::oracle::{OracleHandle, Solution, WorkingSet};
use crate::rng::RngStream;

use super::{better_of, ceil_tol, PMode, SolverConfig, INIT_EPS};

/// Marginals behind the local optimality test: for every `t ∈ [0, k]` the sum of the
/// `t` largest add-gains must not exceed the sum of the `t` smallest removal losses plus
/// `ε·f(S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOptReport {
    /// `f(u | S)` for every `u ∉ S`, descending.
    pub add_gains: Vec<f64>,
    /// `f(v | S − v)` for every `v ∈ S`, ascending.
    pub removal_losses: Vec<f64>,
    pub f_s: f64,
    pub satisfied: bool,
    /// The `t` with the largest `gains(t) − losses(t) − ε·f(S)`.
    pub worst_t: usize,
    pub worst_margin: f64,
}

/// Tests the local optimality condition at `s`, which must hold exactly `k` ids
/// (dummies included). Costs `|ground| + 1` queries.
pub fn check_local_opt_condition(h: &OracleHandle<'_>, s: &Solution, eps: f64) -> Result<LocalOptReport> {
    let k = h.ground().n_dummy() / 2;
    if s.len() != k {
        return Err(Error::InvalidSolution(format!(
            "local optimality check needs exactly {k} elements, got {}",
            s.len()
        )));
    }
    let mut ws = h.working(s)?;
    let total = h.ground().total();
    let mut add_gains = Vec::with_capacity(total - k);
    for u in 0..total {
        if !ws.contains(u) {
            add_gains.push(h.gain(&mut ws, u));
        }
    }
    let mut removal_losses: Vec<f64> = s.elements().iter().map(|&v| h.loss(&mut ws, v)).collect();
    let f_s = h.current_value(&ws);
    add_gains.sort_by(|a, b| b.total_cmp(a));
    removal_losses.sort_by(f64::total_cmp);

    let slack = eps * f_s;
    let (mut gains, mut losses) = (0.0, 0.0);
    let mut worst_t = 0;
    let mut worst_margin = -slack;
    let mut satisfied = 0.0 <= slack;
    for t in 1..=k {
        gains += add_gains[t - 1];
        losses += removal_losses[t - 1];
        let margin = gains - losses - slack;
        if gains > losses + slack {
            satisfied = false;
        }
        if margin > worst_margin {
            worst_margin = margin;
            worst_t = t;
        }
    }
    Ok(LocalOptReport {
        add_gains,
        removal_losses,
        f_s,
        satisfied,
        worst_t,
        worst_margin,
    })
}

/// One pass of `L` swap iterations starting from the initial solution.
#[derive(Debug, Clone, PartialEq)]
pub struct AttemptReport {
    pub swaps: usize,
    /// `f(S_0)` followed by the value after every accepted swap.
    pub values: Vec<f64>,
    pub i_star: usize,
    pub check: LocalOptReport,
    /// Queries spent by this attempt, including its final check.
    pub queries: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FastLocalSearchReport {
    /// Approximate local optimum of size exactly `k` (dummies included), or `None` when
    /// every attempt failed its check.
    pub solution: Option<Solution>,
    pub init: Solution,
    pub init_value: f64,
    pub iterations: usize,
    pub attempts: Vec<AttemptReport>,
}

impl FastLocalSearchReport {
    pub fn failed(&self) -> bool {
        self.solution.is_none()
    }

    /// `f` of the returned set, as measured by the successful check.
    pub fn value(&self) -> Option<f64> {
        self.solution.as_ref()?;
        self.attempts.last().map(|a| a.check.f_s)
    }
}

/// Best of `⌈log₂(1/ε)⌉` independent Sample Greedy runs, padded with dummies to size `k`.
pub fn init_solution(h: &OracleHandle<'_>, cfg: &SolverConfig, rng: &mut RngStream) -> Result<Solution> {
    Ok(init_with_value(h, cfg, rng)?.0)
}

fn init_with_value(h: &OracleHandle<'_>, cfg: &SolverConfig, rng: &mut RngStream) -> Result<(Solution, f64)> {
    let (mut s, value) = best_sample_greedy(h, cfg, rng)?;
    s.pad_with_dummies(h.ground());
    Ok((s, value))
}

/// Best of `⌈log₂(1/ε)⌉` unguided stochastic greedy runs and its value, unpadded.
pub(crate) fn best_sample_greedy(
    h: &OracleHandle<'_>,
    cfg: &SolverConfig,
    rng: &mut RngStream,
) -> Result<(Solution, f64)> {
    cfg.validate()?;
    let eps = match cfg.p_mode {
        PMode::Theoretical => INIT_EPS,
        PMode::Practical => cfg.eps,
    };
    let no_guide = Solution::empty(cfg.k);
    let mut best: Option<(Solution, f64)> = None;
    for _ in 0..cfg.attempts() {
        let mut child = rng.fork();
        let ws = run_stochastic_greedy(h, &no_guide, cfg, eps, 0.0, &mut child)?;
        let candidate = (ws.to_solution(cfg.k), h.current_value(&ws));
        best = Some(match best {
            None => candidate,
            Some(b) => better_of(b, candidate),
        });
    }
    Ok(best.expect("at least one initializer run"))
}

const STALE: u64 = u64::MAX;

/// Marginals valid for one version of the current set.
struct Memo {
    enabled: bool,
    version: u64,
    gains: Vec<(u64, f64)>,
    swaps: Vec<(u64, f64)>,
    argmin: Option<(u64, usize)>,
}

impl Memo {
    fn new(total: usize, enabled: bool) -> Self {
        Self {
            enabled,
            version: 0,
            gains: vec![(STALE, 0.0); total],
            swaps: vec![(STALE, 0.0); total],
            argmin: None,
        }
    }

    fn bump(&mut self) {
        self.version += 1;
    }

    fn cached(&self, slot: (u64, f64)) -> Option<f64> {
        (self.enabled && slot.0 == self.version).then_some(slot.1)
    }
}

/// Local search with sampled swaps. Runs `⌈log₂(1/ε)⌉` attempts of `L` iterations from the
/// same initial solution; each attempt certifies a uniformly chosen intermediate set and
/// returns it if the local optimality check passes.
pub fn fast_local_search(
    h: &OracleHandle<'_>,
    cfg: &SolverConfig,
    rng: &mut RngStream,
) -> Result<FastLocalSearchReport> {
    let (init, init_value) = init_with_value(h, cfg, rng)?;
    let iterations = cfg.local_search_iterations();
    let total = h.ground().total();
    let sample_size = total.div_ceil(cfg.k).min(total);
    let mut attempts = Vec::new();

    for _ in 0..cfg.attempts() {
        let before = h.queries();
        let mut ws = h.working(&init)?;
        let mut memo = Memo::new(total, cfg.memoize);
        let mut values = vec![init_value];
        // (iteration, removed, added)
        let mut swaps: Vec<(usize, usize, usize)> = Vec::new();

        for i in 1..=iterations {
            let mut best: Option<(f64, usize)> = None;
            for id in sample(rng, total, sample_size) {
                let g = match memo.cached(memo.gains[id]) {
                    Some(g) => g,
                    None => {
                        let g = h.gain(&mut ws, id);
                        memo.gains[id] = (memo.version, g);
                        g
                    }
                };
                if best.is_none_or(|(bg, bid)| g > bg || (g == bg && id < bid)) {
                    best = Some((g, id));
                }
            }
            let u = match best {
                Some((g, id)) if g > 0.0 => id,
                _ => ws.free_dummy(),
            };
            let v = match memo.argmin.filter(|&(ver, _)| memo.enabled && ver == memo.version) {
                Some((_, v)) => v,
                None => {
                    let v = argmin_loss(h, &mut ws);
                    memo.argmin = Some((memo.version, v));
                    v
                }
            };
            let delta = match memo.cached(memo.swaps[u]) {
                Some(d) => d,
                None => {
                    let d = h.swap_delta(&mut ws, v, u);
                    memo.swaps[u] = (memo.version, d);
                    d
                }
            };
            if delta > 0.0 {
                ws.remove(v);
                ws.insert(u);
                memo.bump();
                swaps.push((i, v, u));
                values.push(values.last().unwrap() + delta);
            }
        }

        let i_star = rng.gen_range(0..iterations);
        let mut ids = init.elements().to_vec();
        for &(_, out, inc) in swaps.iter().take_while(|&&(i, _, _)| i <= i_star) {
            let pos = ids.iter().position(|&x| x == out).expect("swapped-out id is a member");
            ids[pos] = inc;
        }
        let candidate = Solution::from_ids(ids, cfg.k)?;
        let check = check_local_opt_condition(h, &candidate, cfg.eps)?;
        let passed = check.satisfied;
        attempts.push(AttemptReport {
            swaps: swaps.len(),
            values,
            i_star,
            check,
            queries: h.queries() - before,
        });
        log::debug!(
            "fast local search attempt {}: {} swaps, i* = {i_star}, passed = {passed}",
            attempts.len(),
            swaps.len()
        );
        if passed {
            return Ok(FastLocalSearchReport {
                solution: Some(candidate),
                init,
                init_value,
                iterations,
                attempts,
            });
        }
    }
    Ok(FastLocalSearchReport {
        solution: None,
        init,
        init_value,
        iterations,
        attempts,
    })
}

/// Member with the smallest removal loss, lowest id on ties. `|S|` queries.
fn argmin_loss<'o>(h: &OracleHandle<'o>, ws: &mut WorkingSet<'o>) -> usize {
    let members = ws.members().to_vec();
    let mut best = (f64::INFINITY, usize::MAX);
    for v in members {
        let l = h.loss(ws, v);
        if l < best.0 || (l == best.0 && v < best.1) {
            best = (l, v);
        }
    }
    best.1
}

/// Stochastic greedy that avoids `z` during its first `⌈k·t_s⌉` iterations. Each iteration
/// samples part of the allowed pool, ranks the sample by marginal gain, and adds the
/// element at a uniformly random rank within the leading window if its gain is
/// non-negative.
pub fn guided_stochastic_greedy(
    h: &OracleHandle<'_>,
    z: &Solution,
    cfg: &SolverConfig,
    rng: &mut RngStream,
) -> Result<Solution> {
    let ws = run_stochastic_greedy(h, z, cfg, cfg.eps, cfg.flip_point, rng)?;
    Ok(ws.to_solution(cfg.k))
}

/// Guided stochastic greedy without guidance.
pub fn sample_greedy(h: &OracleHandle<'_>, cfg: &SolverConfig, rng: &mut RngStream) -> Result<Solution> {
    guided_stochastic_greedy(h, &Solution::empty(cfg.k), cfg, rng)
}

fn run_stochastic_greedy<'o>(
    h: &OracleHandle<'o>,
    z: &Solution,
    cfg: &SolverConfig,
    eps: f64,
    flip_point: f64,
    rng: &mut RngStream,
) -> Result<WorkingSet<'o>> {
    cfg.validate()?;
    let ground = h.ground();
    for &id in z.elements() {
        if id >= ground.total() {
            return Err(Error::InvalidElement {
                id,
                total: ground.total(),
            });
        }
    }
    let k = cfg.k;
    let n = ground.total();
    let p = cfg.rate(eps);
    let mut in_z = vec![false; n];
    for &id in z.elements() {
        in_z[id] = true;
    }
    let s1 = k as f64 / (n - z.len()).max(1) as f64;
    let s2 = k as f64 / n as f64;
    let phase_one = ceil_tol(k as f64 * flip_point).min(k);

    let mut ws = h.empty_working();
    let mut pool = Vec::with_capacity(n);
    let mut ranked: Vec<(f64, usize)> = Vec::new();
    for i in 1..=k {
        let guided = i <= phase_one;
        pool.clear();
        pool.extend((0..n).filter(|&id| !(guided && in_z[id]) && !(cfg.exclude_current && ws.contains(id))));
        let m = pool.len();
        if m == 0 {
            continue;
        }
        let target = ceil_tol(p * m as f64).max(1);
        let size = target.min(m);
        ranked.clear();
        for idx in sample(rng, m, size) {
            let id = pool[idx];
            ranked.push((h.gain(&mut ws, id), id));
        }
        ranked.sort_by(|a, b| match b.0.total_cmp(&a.0) {
            Ordering::Equal => a.1.cmp(&b.1),
            o => o,
        });
        let s = if guided { s1 } else { s2 };
        let window = (s * target as f64).clamp(1.0, size as f64);
        let d = window * (1.0 - rng.gen::<f64>());
        let rank = (d.ceil() as usize).clamp(1, size);
        let (gain, u) = ranked[rank - 1];
        if gain >= 0.0 && !ws.contains(u) && ws.len() < k {
            ws.insert(u);
        }
    }
    Ok(ws)
}

/// Result of the combined solver.
#[derive(Debug, Clone, PartialEq)]
pub struct MainOutcome {
    /// Better of the local optimum and the guided greedy set, dummies stripped; empty on
    /// failure.
    pub solution: Solution,
    pub value: f64,
    pub failed: bool,
    pub z_value: Option<f64>,
    pub a_value: Option<f64>,
}

/// Fast local search, then guided stochastic greedy steered away from its output. Returns
/// the better of the two sets, or the empty set when the local search fails.
pub fn solve_main(h: &OracleHandle<'_>, cfg: &SolverConfig, rng: &mut RngStream) -> Result<MainOutcome> {
    let report = fast_local_search(h, cfg, rng)?;
    let ground = *h.ground();
    let Some(z) = report.solution.clone() else {
        return Ok(MainOutcome {
            solution: Solution::empty(cfg.k),
            value: 0.0,
            failed: true,
            z_value: None,
            a_value: None,
        });
    };
    let z_value = report.value().expect("successful search carries its check");
    let ws = run_stochastic_greedy(h, &z, cfg, cfg.eps, cfg.flip_point, rng)?;
    let a_value = h.current_value(&ws);
    let a = ws.to_solution(cfg.k).strip_dummies(&ground);
    let (solution, value) = better_of((z.strip_dummies(&ground), z_value), (a, a_value));
    Ok(MainOutcome {
        solution,
        value,
        failed: false,
        z_value: Some(z_value),
        a_value: Some(a_value),
    })
}
