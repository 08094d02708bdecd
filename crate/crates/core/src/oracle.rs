//! Ground set, solutions, and the query-counting oracle every solver talks to.
//!
//! The ground set is the objective's real elements followed by `2k` dummy ids. Dummies have
//! identically zero marginal contribution and are never shown to an [`Objective`]: the
//! [`OracleHandle`] strips them before evaluation.
//!
//! One call to [`OracleHandle::value`], [`OracleHandle::marginal`], or any of the
//! working-set queries ([`OracleHandle::gain`], [`OracleHandle::loss`],
//! [`OracleHandle::current_value`], [`OracleHandle::swap_delta`]) is one query, no matter how
//! cheaply the objective answers it. Inserting into or removing from a [`WorkingSet`] is
//! bookkeeping and costs nothing.

use std::cell::Cell;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Real elements `[0, n_real)` followed by dummies `[n_real, n_real + n_dummy)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundSet {
    n_real: usize,
    n_dummy: usize,
}

impl GroundSet {
    pub fn new(n_real: usize, k: usize) -> Result<Self> {
        if n_real == 0 || k == 0 || k > n_real {
            return Err(Error::InvalidConstraint { k, n_real });
        }
        Ok(Self { n_real, n_dummy: 2 * k })
    }

    pub fn n_real(&self) -> usize {
        self.n_real
    }

    pub fn n_dummy(&self) -> usize {
        self.n_dummy
    }

    pub fn total(&self) -> usize {
        self.n_real + self.n_dummy
    }

    pub fn is_dummy(&self, id: usize) -> bool {
        id >= self.n_real
    }

    pub fn dummies(&self) -> std::ops::Range<usize> {
        self.n_real..self.total()
    }

    fn check(&self, id: usize) -> Result<()> {
        if id < self.total() {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                id,
                total: self.total(),
            })
        }
    }
}

/// Builds the ground set for `n_real` elements and cardinality bound `k`, with exactly `2k`
/// dummies appended.
pub fn make_ground_set(n_real: usize, k: usize) -> Result<GroundSet> {
    GroundSet::new(n_real, k)
}

/// A duplicate-free set of element ids with a cardinality bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    elements: Vec<usize>,
    capacity: usize,
}

impl Solution {
    pub fn empty(capacity: usize) -> Self {
        Self {
            elements: Vec::new(),
            capacity,
        }
    }

    pub fn from_ids(ids: impl IntoIterator<Item = usize>, capacity: usize) -> Result<Self> {
        let mut s = Self::empty(capacity);
        for id in ids {
            s.push(id)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, id: usize) -> Result<()> {
        if self.elements.contains(&id) {
            return Err(Error::InvalidSolution(format!("duplicate element {id}")));
        }
        if self.elements.len() >= self.capacity {
            return Err(Error::InvalidSolution(format!("capacity {} exceeded", self.capacity)));
        }
        self.elements.push(id);
        Ok(())
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.elements.contains(&id)
    }

    /// Element ids in ascending order.
    pub fn sorted(&self) -> Vec<usize> {
        let mut ids = self.elements.clone();
        ids.sort_unstable();
        ids
    }

    pub fn strip_dummies(&self, ground: &GroundSet) -> Solution {
        Solution {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&id| !ground.is_dummy(id))
                .collect(),
            capacity: self.capacity,
        }
    }

    /// Pads with the lowest-id dummies not already present until `len() == capacity`.
    pub fn pad_with_dummies(&mut self, ground: &GroundSet) {
        let mut next = ground.dummies();
        while self.elements.len() < self.capacity {
            let d = next
                .find(|d| !self.elements.contains(d))
                .expect("2k dummies always suffice to pad a set of size at most k");
            self.elements.push(d);
        }
    }
}

/// Non-negative submodular set function over `[0, ground_size())`.
///
/// `evaluate` receives duplicate-free real ids only.
pub trait Objective: Send + Sync {
    fn ground_size(&self) -> usize;

    fn evaluate(&self, set: &[usize]) -> f64;

    /// Incremental evaluator positioned at the empty set.
    fn tracker(&self) -> Box<dyn MarginalTracker + '_>;
}

/// Incremental view of an objective at a current set `S` of real ids.
///
/// Callers guarantee that `gain`/`insert` receive non-members and `loss`/`remove` receive
/// members.
pub trait MarginalTracker {
    /// `f(S)`.
    fn value(&self) -> f64;

    /// `f(u | S)` for `u ∉ S`.
    fn gain(&mut self, u: usize) -> f64;

    /// `f(v | S - v)` for `v ∈ S`.
    fn loss(&mut self, v: usize) -> f64;

    fn insert(&mut self, u: usize);

    fn remove(&mut self, v: usize);

    /// `f(S - out + inc) - f(S)` for `out ∈ S`, `inc ∉ S`.
    fn swap_delta(&mut self, out: usize, inc: usize) -> f64 {
        let loss = self.loss(out);
        self.remove(out);
        let gain = self.gain(inc);
        self.insert(out);
        gain - loss
    }
}

/// Fallback tracker that re-evaluates the objective from scratch.
pub struct NaiveTracker<'a, O: ?Sized> {
    objective: &'a O,
    members: Vec<usize>,
    value: f64,
}

impl<'a, O: Objective + ?Sized> NaiveTracker<'a, O> {
    pub fn new(objective: &'a O) -> Self {
        let value = objective.evaluate(&[]);
        Self {
            objective,
            members: Vec::new(),
            value,
        }
    }
}

impl<O: Objective + ?Sized> MarginalTracker for NaiveTracker<'_, O> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&mut self, u: usize) -> f64 {
        self.members.push(u);
        let with = self.objective.evaluate(&self.members);
        self.members.pop();
        with - self.value
    }

    fn loss(&mut self, v: usize) -> f64 {
        let without: Vec<usize> = self.members.iter().copied().filter(|&x| x != v).collect();
        self.value - self.objective.evaluate(&without)
    }

    fn insert(&mut self, u: usize) {
        self.members.push(u);
        self.value = self.objective.evaluate(&self.members);
    }

    fn remove(&mut self, v: usize) {
        self.members.retain(|&x| x != v);
        self.value = self.objective.evaluate(&self.members);
    }
}

/// Counter of oracle invocations for one run.
#[derive(Debug, Default)]
pub struct QueryLedger {
    queries: Cell<u64>,
}

impl QueryLedger {
    fn record(&self) {
        self.queries.set(self.queries.get() + 1);
    }

    pub fn queries(&self) -> u64 {
        self.queries.get()
    }

    pub fn reset(&self) {
        self.queries.set(0);
    }
}

/// Current set of a solver, possibly containing dummies, with an incremental evaluator for
/// its real part.
pub struct WorkingSet<'o> {
    ground: GroundSet,
    members: Vec<usize>,
    flags: Vec<bool>,
    tracker: Box<dyn MarginalTracker + 'o>,
}

impl WorkingSet<'_> {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.flags[id]
    }

    pub fn insert(&mut self, id: usize) {
        assert!(!self.flags[id], "element {id} already in the working set");
        self.flags[id] = true;
        self.members.push(id);
        if !self.ground.is_dummy(id) {
            self.tracker.insert(id);
        }
    }

    pub fn remove(&mut self, id: usize) {
        assert!(self.flags[id], "element {id} not in the working set");
        self.flags[id] = false;
        let pos = self.members.iter().position(|&x| x == id).unwrap();
        self.members.remove(pos);
        if !self.ground.is_dummy(id) {
            self.tracker.remove(id);
        }
    }

    /// Lowest-id dummy that is not a member.
    pub fn free_dummy(&self) -> usize {
        self.ground
            .dummies()
            .find(|&d| !self.flags[d])
            .expect("at most k members leaves at least k free dummies")
    }

    pub fn to_solution(&self, capacity: usize) -> Solution {
        Solution {
            elements: self.members.clone(),
            capacity: capacity.max(self.members.len()),
        }
    }
}

/// Evaluation surface over an objective, with dummy semantics and query accounting.
pub struct OracleHandle<'o> {
    objective: &'o dyn Objective,
    ground: GroundSet,
    ledger: QueryLedger,
}

impl<'o> OracleHandle<'o> {
    /// Handle for cardinality bound `k`: the objective's elements plus `2k` dummies.
    pub fn new(objective: &'o dyn Objective, k: usize) -> Result<Self> {
        let ground = make_ground_set(objective.ground_size(), k)?;
        Ok(Self {
            objective,
            ground,
            ledger: QueryLedger::default(),
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn objective(&self) -> &'o dyn Objective {
        self.objective
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn queries(&self) -> u64 {
        self.ledger.queries()
    }

    fn check_solution(&self, s: &Solution) -> Result<()> {
        s.elements.iter().try_for_each(|&id| self.ground.check(id))
    }

    fn real_ids(&self, s: &Solution) -> Vec<usize> {
        s.elements
            .iter()
            .copied()
            .filter(|&id| !self.ground.is_dummy(id))
            .collect()
    }

    /// `f(S)` with dummies stripped.
    pub fn value(&self, s: &Solution) -> Result<f64> {
        self.check_solution(s)?;
        self.ledger.record();
        Ok(self.objective.evaluate(&self.real_ids(s)))
    }

    /// `f(u | S)`; exactly zero for dummies and for `u ∈ S`.
    pub fn marginal(&self, u: usize, s: &Solution) -> Result<f64> {
        self.ground.check(u)?;
        self.check_solution(s)?;
        self.ledger.record();
        if self.ground.is_dummy(u) || s.contains(u) {
            return Ok(0.0);
        }
        let mut tracker = self.objective.tracker();
        for id in self.real_ids(s) {
            tracker.insert(id);
        }
        Ok(tracker.gain(u))
    }

    /// Working set positioned at the empty set. Not a query.
    pub fn empty_working(&self) -> WorkingSet<'o> {
        WorkingSet {
            ground: self.ground,
            members: Vec::new(),
            flags: vec![false; self.ground.total()],
            tracker: self.objective.tracker(),
        }
    }

    /// Working set positioned at `s`. Not a query.
    pub fn working(&self, s: &Solution) -> Result<WorkingSet<'o>> {
        self.check_solution(s)?;
        let mut ws = self.empty_working();
        for &id in s.elements() {
            ws.insert(id);
        }
        Ok(ws)
    }

    /// `f(u | S)` against a working set. One query.
    pub fn gain(&self, ws: &mut WorkingSet<'o>, u: usize) -> f64 {
        self.ledger.record();
        if self.ground.is_dummy(u) || ws.contains(u) {
            0.0
        } else {
            ws.tracker.gain(u)
        }
    }

    /// `f(v | S - v)` for a member `v`. One query.
    pub fn loss(&self, ws: &mut WorkingSet<'o>, v: usize) -> f64 {
        assert!(ws.contains(v), "loss queried for non-member {v}");
        self.ledger.record();
        if self.ground.is_dummy(v) {
            0.0
        } else {
            ws.tracker.loss(v)
        }
    }

    /// `f(S)`. One query.
    pub fn current_value(&self, ws: &WorkingSet<'o>) -> f64 {
        self.ledger.record();
        ws.tracker.value()
    }

    /// `f(S - out + inc) - f(S)` for a member `out`. One query.
    pub fn swap_delta(&self, ws: &mut WorkingSet<'o>, out: usize, inc: usize) -> f64 {
        assert!(ws.contains(out), "swap removes non-member {out}");
        self.ledger.record();
        if inc == out {
            return 0.0;
        }
        let out_real = !self.ground.is_dummy(out);
        let inc_real = !self.ground.is_dummy(inc) && !ws.contains(inc);
        match (out_real, inc_real) {
            (false, false) => 0.0,
            (false, true) => ws.tracker.gain(inc),
            (true, false) => -ws.tracker.loss(out),
            (true, true) => ws.tracker.swap_delta(out, inc),
        }
    }
}

/// Samples random chains `S ⊆ T` of real elements and `u ∉ T`, and checks the
/// diminishing-returns inequality `f(u | S) ≥ f(u | T) − 1e−9` in every trial.
pub fn submodularity_probe(h: &OracleHandle<'_>, trials: usize, rng: &mut RngStream) -> Result<bool> {
    if trials == 0 {
        return Err(Error::Precondition("submodularity probe needs trials >= 1".into()));
    }
    let n = h.ground().n_real();
    if n < 2 {
        return Ok(true);
    }
    for _ in 0..trials {
        let t_len = rng.gen_range(0..n);
        let mut perm = sample(rng, n, t_len + 1).into_vec();
        let u = perm.pop().unwrap();
        let s_len = rng.gen_range(0..=t_len);
        let big = Solution::from_ids(perm.iter().copied(), n)?;
        let small = Solution::from_ids(perm[..s_len].iter().copied(), n)?;
        if h.marginal(u, &small)? < h.marginal(u, &big)? - 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::Modular;

    #[test]
    fn ground_set_sizes() {
        let g = make_ground_set(10, 3).unwrap();
        assert_eq!(g.total(), 16);
        assert_eq!(g.dummies(), 10..16);
        assert!(g.is_dummy(10) && !g.is_dummy(9));
        assert_eq!(make_ground_set(1, 1).unwrap().total(), 3);
        assert!(matches!(make_ground_set(5, 6), Err(Error::InvalidConstraint { .. })));
        assert!(matches!(make_ground_set(5, 0), Err(Error::InvalidConstraint { .. })));
    }

    #[test]
    fn solution_rejects_duplicates_and_overflow() {
        assert!(Solution::from_ids([1, 2, 1], 5).is_err());
        assert!(Solution::from_ids([1, 2, 3], 2).is_err());
        let s = Solution::from_ids([4, 1], 3).unwrap();
        assert_eq!(s.sorted(), vec![1, 4]);
    }

    #[test]
    fn padding_uses_lowest_free_dummies() {
        let g = make_ground_set(4, 3).unwrap();
        let mut s = Solution::from_ids([4, 0], 3).unwrap();
        s.pad_with_dummies(&g);
        assert_eq!(s.elements(), &[4, 0, 5]);
        assert_eq!(s.strip_dummies(&g).elements(), &[0]);
    }

    #[test]
    fn dummy_and_member_marginals_are_zero() {
        let obj = Modular::new(vec![3.0, 1.0, 2.0]);
        let h = OracleHandle::new(&obj, 1).unwrap();
        let s = Solution::from_ids([0], 3).unwrap();
        assert_eq!(h.marginal(3, &s).unwrap(), 0.0);
        assert_eq!(h.marginal(0, &s).unwrap(), 0.0);
        assert_eq!(h.marginal(2, &s).unwrap(), 2.0);
        assert_eq!(h.queries(), 3);
        let with_dummy = Solution::from_ids([0, 4], 3).unwrap();
        assert_eq!(h.value(&with_dummy).unwrap(), h.value(&s).unwrap());
        assert!(matches!(h.marginal(5, &s), Err(Error::InvalidElement { .. })));
        assert!(h.value(&Solution::from_ids([9], 3).unwrap()).is_err());
    }

    #[test]
    fn working_set_queries_are_counted_once() {
        let obj = Modular::new(vec![3.0, 1.0, 2.0]);
        let h = OracleHandle::new(&obj, 2).unwrap();
        let mut ws = h.empty_working();
        assert_eq!(h.gain(&mut ws, 0), 3.0);
        ws.insert(0);
        ws.insert(3);
        assert_eq!(h.loss(&mut ws, 0), 3.0);
        assert_eq!(h.loss(&mut ws, 3), 0.0);
        assert_eq!(h.current_value(&ws), 3.0);
        assert_eq!(h.swap_delta(&mut ws, 0, 2), -1.0);
        assert_eq!(h.swap_delta(&mut ws, 3, 2), 2.0);
        assert_eq!(h.swap_delta(&mut ws, 0, 4), -3.0);
        assert_eq!(h.queries(), 7);
        assert_eq!(ws.free_dummy(), 4);
        h.ledger().reset();
        assert_eq!(h.queries(), 0);
    }

    #[test]
    fn probe_requires_trials() {
        let obj = Modular::new(vec![1.0; 4]);
        let h = OracleHandle::new(&obj, 1).unwrap();
        let mut rng = RngStream::new(0);
        assert!(submodularity_probe(&h, 0, &mut rng).is_err());
        assert!(submodularity_probe(&h, 200, &mut rng).unwrap());
    }

    struct SquaredSize(usize);

    impl Objective for SquaredSize {
        fn ground_size(&self) -> usize {
            self.0
        }
        fn evaluate(&self, set: &[usize]) -> f64 {
            (set.len() * set.len()) as f64
        }
        fn tracker(&self) -> Box<dyn MarginalTracker + '_> {
            Box::new(NaiveTracker::new(self))
        }
    }

    #[test]
    fn probe_flags_supermodular_stub() {
        // f(S) = |S|^2 has f(u | S) = 2|S| + 1, increasing in S.
        let obj = SquaredSize(8);
        let h = OracleHandle::new(&obj, 1).unwrap();
        let mut rng = RngStream::new(5);
        assert!(!submodularity_probe(&h, 100, &mut rng).unwrap());
    }
}
