//! Exhaustive and pruned backtracking searches for small instances.
//!
//! Every search assigns agents to seats vertex by vertex. Components are
//! visited by decreasing maximum degree, each in walk order. With symmetry
//! breaking on, only one arrangement per orbit of a group of seat-graph
//! automorphisms is visited: dihedral moves of cycles, reflections of paths,
//! leaf permutations of stars, permutations of cliques and permutations of
//! isomorphic components. All objectives here are invariant under those moves.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval;
use crate::model::{classify_seat_graph, Arrangement, ComponentKind, Instance, UtilityType};
use crate::scalar::Scalar;

const FREE: usize = usize::MAX;

/// Largest agent count enumerated without an explicit override.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// Exceeding either limit ends a search as inconclusive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactConfig {
    pub budget: SearchBudget,
    /// Visit one arrangement per symmetry orbit.
    pub dedup: bool,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            budget: SearchBudget::unlimited(),
            dedup: true,
        }
    }
}

impl From<SearchBudget> for ExactConfig {
    fn from(budget: SearchBudget) -> Self {
        ExactConfig {
            budget,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactStatus {
    Found,
    NoneExists,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult<T> {
    pub status: ExactStatus,
    /// Verified witness. For an inconclusive optimisation, the best seen.
    pub witness: Option<Arrangement>,
    /// Objective value of the witness, where the problem has one.
    pub objective: Option<T>,
    pub nodes_explored: u64,
}

impl<T> ExactResult<T> {
    pub fn found(&self) -> bool {
        self.status == ExactStatus::Found
    }
}

/// Per-depth symmetry-breaking constraints for a fixed vertex order.
#[derive(Clone, Debug)]
struct Symmetry {
    order: Vec<usize>,
    /// The agent at this depth must exceed the agents at these depths.
    greater_than: Vec<Vec<usize>>,
    /// The agent at this depth must exceed the smallest agent in this depth range.
    above_min_of: Vec<Option<(usize, usize)>>,
}

impl Symmetry {
    fn new(g: &crate::model::SeatGraph, dedup: bool) -> Self {
        let n = g.vertex_count();
        let mut comps = classify_seat_graph(g).components;
        // stable, so isomorphic components keep their relative order
        comps.sort_by_key(|c| std::cmp::Reverse(c.order.iter().map(|&v| g.degree(v)).max().unwrap_or(0)));
        let mut order = Vec::with_capacity(n);
        let mut greater_than = vec![Vec::new(); n];
        let mut above_min_of = vec![None; n];
        let mut last_of_class: Vec<((ComponentKind, usize), (usize, usize))> = Vec::new();
        for c in &comps {
            let start = order.len();
            order.extend_from_slice(&c.order);
            let end = order.len();
            if !dedup {
                continue;
            }
            let k = c.size;
            match c.kind {
                ComponentKind::Cycle => {
                    for d in start + 1..end {
                        greater_than[d].push(start);
                    }
                    greater_than[end - 1].push(start + 1);
                }
                ComponentKind::Path | ComponentKind::K2 if k >= 2 => greater_than[end - 1].push(start),
                ComponentKind::Star => {
                    for d in start + 2..end {
                        greater_than[d].push(d - 1);
                    }
                }
                ComponentKind::Clique => {
                    for d in start + 1..end {
                        greater_than[d].push(d - 1);
                    }
                }
                _ => {}
            }
            if c.kind == ComponentKind::Other {
                continue;
            }
            let class = (c.kind, k);
            if let Some((_, prev)) = last_of_class.iter().find(|(cl, _)| *cl == class) {
                for slot in &mut above_min_of[start..end] {
                    *slot = Some(*prev);
                }
            }
            match last_of_class.iter_mut().find(|(cl, _)| *cl == class) {
                Some(entry) => entry.1 = (start, end),
                None => last_of_class.push((class, (start, end))),
            }
        }
        Symmetry {
            order,
            greater_than,
            above_min_of,
        }
    }

    /// Whether `a` may sit at depth `d` given the agents at earlier depths.
    #[inline]
    fn allows(&self, d: usize, a: usize, at_depth: impl Fn(usize) -> usize) -> bool {
        if self.greater_than[d].iter().any(|&e| a < at_depth(e)) {
            return false;
        }
        match self.above_min_of[d] {
            Some((s, e)) => (s..e).any(|x| at_depth(x) < a),
            None => true,
        }
    }
}

/// Lazily yields arrangements; see [`enumerate_arrangements`].
pub struct Arrangements {
    sym: Symmetry,
    n: usize,
    /// Agent at each depth.
    chosen: Vec<usize>,
    used: Vec<bool>,
    next: Vec<usize>,
    depth: usize,
    done: bool,
}

impl Iterator for Arrangements {
    type Item = Arrangement;

    fn next(&mut self) -> Option<Arrangement> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Arrangement::identity(0));
        }
        loop {
            if self.depth == self.n {
                let mut agent_at = vec![0; self.n];
                for (d, &a) in self.chosen.iter().enumerate() {
                    agent_at[self.sym.order[d]] = a;
                }
                self.depth -= 1;
                self.used[self.chosen[self.depth]] = false;
                return Some(Arrangement::from_agent_at(agent_at).expect("search builds bijections"));
            }
            let d = self.depth;
            let chosen = &self.chosen;
            let candidate = (self.next[d]..self.n)
                .find(|&a| !self.used[a] && self.sym.allows(d, a, |e| chosen[e]));
            match candidate {
                Some(a) => {
                    self.chosen[d] = a;
                    self.used[a] = true;
                    self.next[d] = a + 1;
                    self.depth += 1;
                    if self.depth < self.n {
                        self.next[self.depth] = 0;
                    }
                }
                None => {
                    if d == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth -= 1;
                    self.used[self.chosen[self.depth]] = false;
                }
            }
        }
    }
}

/// Every arrangement exactly once, or with `dedup` one per symmetry orbit.
/// Fails above [`DEFAULT_ENUMERATION_CAP`] agents.
pub fn enumerate_arrangements<T: Scalar>(inst: &Instance<T>, dedup: bool) -> Result<Arrangements> {
    enumerate_arrangements_capped(inst, dedup, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_arrangements_capped<T: Scalar>(
    inst: &Instance<T>,
    dedup: bool,
    cap: usize,
) -> Result<Arrangements> {
    let n = inst.agent_count();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "agents for enumeration",
            value: n,
            cap,
        });
    }
    inst.ensure_valid()?;
    Ok(Arrangements {
        sym: Symmetry::new(inst.seats(), dedup),
        n,
        chosen: vec![FREE; n],
        used: vec![false; n],
        next: vec![0; n],
        depth: 0,
        done: false,
    })
}

/// Partial assignment visible to goals.
struct State<'a, T> {
    inst: &'a Instance<T>,
    order: Vec<usize>,
    agent_at: Vec<usize>,
    used: Vec<bool>,
    /// Vertices whose closed neighbourhood is fully assigned once depth `d` is placed.
    closes_at: Vec<Vec<usize>>,
    /// Vertices closed so far, in closing order.
    closed: Vec<usize>,
}

impl<T: Scalar> State<'_, T> {
    fn utility_of_seat(&self, v: usize) -> T {
        let occ = &self.agent_at;
        eval::utility_at(self.inst, occ[v], v, |w| occ[w])
    }

    /// Envy between the agents on two closed seats.
    fn envies_seat(&self, x: usize, y: usize) -> bool {
        let occ = &self.agent_at;
        let (p, q) = (occ[x], occ[y]);
        let after = eval::utility_at(self.inst, p, y, |w| if w == x { q } else { occ[w] });
        after > self.utility_of_seat(x)
    }

    /// Best value `p` could get from some unseated agent other than itself.
    fn best_unseated(&self, p: usize) -> Option<T> {
        (0..self.used.len())
            .filter(|&q| q != p && !self.used[q])
            .map(|q| self.inst.value(p, q).clone())
            .reduce(T::max_of)
    }

    /// Upper bound on the final utility of agent `p` if seated on `v`.
    fn utility_bound(&self, p: usize, v: usize) -> T {
        let nbrs = self.inst.seats().neighbours(v);
        if nbrs.is_empty() {
            return T::zero();
        }
        let free = nbrs.iter().filter(|&&w| self.agent_at[w] == FREE).count();
        let fixed = nbrs
            .iter()
            .filter(|&&w| self.agent_at[w] != FREE)
            .map(|&w| self.inst.value(p, self.agent_at[w]).clone());
        let hope = if free > 0 { self.best_unseated(p) } else { None };
        match self.inst.utility() {
            UtilityType::S => {
                let base = fixed.fold(T::zero(), |a, b| a + b);
                match hope {
                    Some(h) => base + h * T::from_int(free as i64),
                    None => base,
                }
            }
            UtilityType::B => eval::aggregate(UtilityType::B, fixed.chain(hope)),
            UtilityType::W => eval::aggregate(UtilityType::W, fixed.chain(hope)),
        }
    }
}

enum Flow {
    Continue,
    Stop,
}

trait Goal<T> {
    /// Called after placing the agent at depth `d`; false prunes.
    fn accept(&mut self, s: &State<'_, T>, d: usize) -> bool;
    /// Called on a complete arrangement.
    fn leaf(&mut self, s: &State<'_, T>) -> Flow;
}

struct Engine<'a, T> {
    state: State<'a, T>,
    sym: Symmetry,
    /// Agents in the order they are tried.
    agent_order: Vec<usize>,
    budget: SearchBudget,
    started: Instant,
    nodes: u64,
    aborted: bool,
}

impl<'a, T: Scalar> Engine<'a, T> {
    fn new(inst: &'a Instance<T>, cfg: &ExactConfig) -> Result<Self> {
        inst.ensure_valid()?;
        let n = inst.agent_count();
        let g = inst.seats();
        let sym = Symmetry::new(g, cfg.dedup);
        let mut depth_of = vec![0; n];
        for (d, &v) in sym.order.iter().enumerate() {
            depth_of[v] = d;
        }
        let mut closes_at = vec![Vec::new(); n];
        for v in 0..n {
            let d = g.neighbours(v).iter().map(|&w| depth_of[w]).fold(depth_of[v], usize::max);
            closes_at[d].push(v);
        }
        let best_pair: Vec<Option<T>> = (0..n)
            .map(|p| (0..n).filter(|&q| q != p).map(|q| inst.value(p, q).clone()).reduce(T::max_of))
            .collect();
        let mut agent_order: Vec<usize> = (0..n).collect();
        agent_order.sort_by(|&a, &b| match (&best_pair[a], &best_pair[b]) {
            (Some(x), Some(y)) => y.cmp_total(x),
            _ => std::cmp::Ordering::Equal,
        });
        Ok(Engine {
            state: State {
                inst,
                order: sym.order.clone(),
                agent_at: vec![FREE; n],
                used: vec![false; n],
                closes_at,
                closed: Vec::with_capacity(n),
            },
            sym,
            agent_order,
            budget: cfg.budget,
            started: Instant::now(),
            nodes: 0,
            aborted: false,
        })
    }

    fn out_of_budget(&mut self) -> bool {
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                return true;
            }
        }
        if let Some(limit) = self.budget.time_limit {
            if self.nodes.is_multiple_of(256) && self.started.elapsed() > limit {
                return true;
            }
        }
        false
    }

    fn run<G: Goal<T>>(&mut self, goal: &mut G) {
        let _ = self.dfs(goal, 0);
    }

    fn dfs<G: Goal<T>>(&mut self, goal: &mut G, d: usize) -> Flow {
        let n = self.state.order.len();
        if d == n {
            return goal.leaf(&self.state);
        }
        let v = self.state.order[d];
        for i in 0..self.agent_order.len() {
            let a = self.agent_order[i];
            if self.state.used[a] {
                continue;
            }
            let (order, occ) = (&self.state.order, &self.state.agent_at);
            if !self.sym.allows(d, a, |e| occ[order[e]]) {
                continue;
            }
            self.nodes += 1;
            if self.out_of_budget() {
                self.aborted = true;
                return Flow::Stop;
            }
            self.state.agent_at[v] = a;
            self.state.used[a] = true;
            let closed_before = self.state.closed.len();
            let newly = std::mem::take(&mut self.state.closes_at[d]);
            self.state.closed.extend_from_slice(&newly);
            self.state.closes_at[d] = newly;
            let flow = if goal.accept(&self.state, d) {
                self.dfs(goal, d + 1)
            } else {
                Flow::Continue
            };
            self.state.closed.truncate(closed_before);
            self.state.agent_at[v] = FREE;
            self.state.used[a] = false;
            if let Flow::Stop = flow {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
}

/// Rejects a partial assignment with an envious pair (or a blocking pair)
/// among closed seats.
struct NoEnvy {
    mutual: bool,
    witness: Option<Arrangement>,
}

impl<T: Scalar> Goal<T> for NoEnvy {
    fn accept(&mut self, s: &State<'_, T>, d: usize) -> bool {
        let fresh = s.closes_at[d].len();
        let split = s.closed.len() - fresh;
        for &x in &s.closed[split..] {
            for &y in &s.closed {
                if x == y {
                    continue;
                }
                let bad = if self.mutual {
                    s.envies_seat(x, y) && s.envies_seat(y, x)
                } else {
                    s.envies_seat(x, y) || s.envies_seat(y, x)
                };
                if bad {
                    return false;
                }
            }
        }
        true
    }

    fn leaf(&mut self, s: &State<'_, T>) -> Flow {
        self.witness = Some(Arrangement::from_agent_at(s.agent_at.clone()).expect("complete"));
        Flow::Stop
    }
}

/// Prunes when an affected seated agent cannot reach the bar. With `strict`
/// the bar must be exceeded; on a leaf the bar may be raised.
struct MinBar<T> {
    bar: Option<T>,
    strict: bool,
    /// Keep searching for strictly better leaves.
    optimise: bool,
    witness: Option<(Arrangement, T)>,
}

impl<T: Scalar> MinBar<T> {
    fn meets(&self, value: &T) -> bool {
        match &self.bar {
            None => true,
            Some(b) if self.strict => value > b,
            Some(b) => value >= b,
        }
    }
}

impl<T: Scalar> Goal<T> for MinBar<T> {
    fn accept(&mut self, s: &State<'_, T>, d: usize) -> bool {
        if self.bar.is_none() {
            return true;
        }
        let v = s.order[d];
        std::iter::once(v)
            .chain(s.inst.seats().neighbours(v).iter().copied())
            .filter(|&x| s.agent_at[x] != FREE)
            .all(|x| self.meets(&s.utility_bound(s.agent_at[x], x)))
    }

    fn leaf(&mut self, s: &State<'_, T>) -> Flow {
        let value = s
            .order
            .iter()
            .map(|&v| s.utility_of_seat(v))
            .reduce(T::min_of)
            .unwrap_or_else(T::zero);
        if !self.meets(&value) {
            return Flow::Continue;
        }
        let arr = Arrangement::from_agent_at(s.agent_at.clone()).expect("complete");
        self.witness = Some((arr, value.clone()));
        if self.optimise {
            self.bar = Some(value);
            Flow::Continue
        } else {
            Flow::Stop
        }
    }
}

/// Branch and bound on welfare: prunes when an upper bound on the final
/// welfare does not beat the incumbent.
struct MaxWelfare<T> {
    best: T,
    witness: Option<Arrangement>,
}

impl<T: Scalar> Goal<T> for MaxWelfare<T> {
    fn accept(&mut self, s: &State<'_, T>, _d: usize) -> bool {
        let n = s.agent_at.len();
        let free_seats: Vec<usize> = (0..n).filter(|&v| s.agent_at[v] == FREE).collect();
        let mut bound = T::zero();
        for v in 0..n {
            if s.agent_at[v] != FREE {
                bound = bound + s.utility_bound(s.agent_at[v], v);
            }
        }
        for p in (0..n).filter(|&p| !s.used[p]) {
            let best = free_seats
                .iter()
                .map(|&v| s.utility_bound(p, v))
                .reduce(T::max_of)
                .expect("an unseated agent has a free seat");
            bound = bound + best;
        }
        bound > self.best
    }

    fn leaf(&mut self, s: &State<'_, T>) -> Flow {
        let total = s.order.iter().fold(T::zero(), |acc, &v| acc + s.utility_of_seat(v));
        if total > self.best {
            self.best = total;
            self.witness = Some(Arrangement::from_agent_at(s.agent_at.clone()).expect("complete"));
        }
        Flow::Continue
    }
}

fn status(aborted: bool, found: bool) -> ExactStatus {
    match (found, aborted) {
        (true, _) => ExactStatus::Found,
        (false, true) => ExactStatus::Inconclusive,
        (false, false) => ExactStatus::NoneExists,
    }
}

fn verify(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidWitness(format!("search returned a {what} witness that fails re-verification")))
    }
}

/// Maximum total welfare.
pub fn solve_mwa_exact<T: Scalar>(inst: &Instance<T>, cfg: &ExactConfig) -> Result<ExactResult<T>> {
    let mut engine = Engine::new(inst, cfg)?;
    let seed = Arrangement::identity(inst.agent_count());
    let mut goal = MaxWelfare {
        best: eval::welfare(inst, &seed),
        witness: None,
    };
    engine.run(&mut goal);
    let witness = goal.witness.unwrap_or(seed);
    let objective = eval::welfare(inst, &witness);
    verify(objective == goal.best, "welfare")?;
    Ok(ExactResult {
        status: if engine.aborted { ExactStatus::Inconclusive } else { ExactStatus::Found },
        witness: Some(witness),
        objective: Some(objective),
        nodes_explored: engine.nodes,
    })
}

/// Maximum of the minimum utility.
pub fn solve_mua_exact<T: Scalar>(inst: &Instance<T>, cfg: &ExactConfig) -> Result<ExactResult<T>> {
    let mut engine = Engine::new(inst, cfg)?;
    let seed = Arrangement::identity(inst.agent_count());
    let seed_value = eval::min_utility(inst, &seed);
    let mut goal = MinBar {
        bar: Some(seed_value.clone()),
        strict: true,
        optimise: true,
        witness: None,
    };
    engine.run(&mut goal);
    let (witness, value) = goal.witness.unwrap_or((seed, seed_value));
    let objective = eval::min_utility(inst, &witness);
    verify(objective == value, "maximin")?;
    Ok(ExactResult {
        status: if engine.aborted { ExactStatus::Inconclusive } else { ExactStatus::Found },
        witness: Some(witness),
        objective: Some(objective),
        nodes_explored: engine.nodes,
    })
}

/// An arrangement in which every agent has utility at least `threshold`.
pub fn find_min_utility_at_least<T: Scalar>(
    inst: &Instance<T>,
    threshold: &T,
    cfg: &ExactConfig,
) -> Result<ExactResult<T>> {
    let mut engine = Engine::new(inst, cfg)?;
    let mut goal = MinBar {
        bar: Some(threshold.clone()),
        strict: false,
        optimise: false,
        witness: None,
    };
    engine.run(&mut goal);
    let objective = match &goal.witness {
        Some((arr, _)) => {
            let m = eval::min_utility(inst, arr);
            verify(m >= *threshold, "threshold")?;
            Some(m)
        }
        None => None,
    };
    Ok(ExactResult {
        status: status(engine.aborted, goal.witness.is_some()),
        witness: goal.witness.map(|(a, _)| a),
        objective,
        nodes_explored: engine.nodes,
    })
}

fn find_without_envy<T: Scalar>(inst: &Instance<T>, cfg: &ExactConfig, mutual: bool) -> Result<ExactResult<T>> {
    let mut engine = Engine::new(inst, cfg)?;
    let mut goal = NoEnvy { mutual, witness: None };
    engine.run(&mut goal);
    if let Some(arr) = &goal.witness {
        if mutual {
            verify(eval::is_exchange_stable(inst, arr), "exchange-stable")?;
        } else {
            verify(eval::is_envy_free(inst, arr), "envy-free")?;
        }
    }
    Ok(ExactResult {
        status: status(engine.aborted, goal.witness.is_some()),
        witness: goal.witness,
        objective: None,
        nodes_explored: engine.nodes,
    })
}

pub fn find_envy_free_exact<T: Scalar>(inst: &Instance<T>, cfg: &ExactConfig) -> Result<ExactResult<T>> {
    find_without_envy(inst, cfg, false)
}

pub fn find_exchange_stable_exact<T: Scalar>(inst: &Instance<T>, cfg: &ExactConfig) -> Result<ExactResult<T>> {
    find_without_envy(inst, cfg, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{default_names, Positions, SeatGraph, ValuationMatrix};
    use crate::scalar::rational;
    use crate::Rational;
    use std::collections::HashSet;

    fn ones(g: SeatGraph) -> Instance<Rational> {
        let n = g.vertex_count();
        Instance::validated(
            default_names(n),
            ValuationMatrix::from_fn(n, |_, _| rational(1, 1)),
            g,
            UtilityType::S,
            None,
        )
        .unwrap()
    }

    #[test]
    fn triangle_counts() {
        let inst = ones(SeatGraph::cycle(3).unwrap());
        assert_eq!(enumerate_arrangements(&inst, false).unwrap().count(), 6);
        assert_eq!(enumerate_arrangements(&inst, true).unwrap().count(), 1);
    }

    #[test]
    fn matching_counts() {
        let inst = ones(SeatGraph::matching(2));
        assert_eq!(enumerate_arrangements(&inst, true).unwrap().count(), 3);
    }

    #[test]
    fn full_enumeration_is_exhaustive_and_distinct() {
        let g = SeatGraph::disjoint_union(&[SeatGraph::path(3), SeatGraph::star(3)]);
        let inst = ones(g);
        let all: HashSet<_> = enumerate_arrangements(&inst, false).unwrap().collect();
        assert_eq!(all.len(), 5040);
    }

    #[test]
    fn cap_is_enforced() {
        let inst = ones(SeatGraph::path(11));
        assert!(matches!(
            enumerate_arrangements(&inst, true),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_arrangements_capped(&inst, true, 11).is_ok());
    }

    #[test]
    fn zero_valuations_optimum_is_zero() {
        let n = 5;
        let inst = Instance::validated(
            default_names(n),
            ValuationMatrix::from_fn(n, |_, _| rational(0, 1)),
            SeatGraph::path(n),
            UtilityType::W,
            None,
        )
        .unwrap();
        let cfg = ExactConfig::default();
        assert_eq!(solve_mwa_exact(&inst, &cfg).unwrap().objective, Some(rational(0, 1)));
        assert_eq!(solve_mua_exact(&inst, &cfg).unwrap().objective, Some(rational(0, 1)));
        assert!(find_min_utility_at_least(&inst, &rational(0, 1), &cfg).unwrap().found());
    }

    #[test]
    fn one_dimensional_four_cycle_has_no_envy_free_arrangement() {
        let pos = Positions::new(vec![rational(0, 1), rational(1, 1), rational(3, 1), rational(7, 1)]);
        let inst =
            Instance::from_positions(default_names(4), pos, SeatGraph::cycle(4).unwrap(), UtilityType::S).unwrap();
        let r = find_envy_free_exact(&inst, &ExactConfig::default()).unwrap();
        assert_eq!(r.status, ExactStatus::NoneExists);
        assert!(find_exchange_stable_exact(&inst, &ExactConfig::default()).unwrap().found());
    }

    #[test]
    fn small_layout_optima_match_enumeration() {
        let pos = Positions::new(vec![rational(0, 1), rational(1, 1), rational(3, 1)]);
        for u in [UtilityType::S, UtilityType::B, UtilityType::W] {
            let inst = Instance::from_positions(default_names(3), pos.clone(), SeatGraph::path(3), u).unwrap();
            let arrs: Vec<_> = enumerate_arrangements(&inst, false).unwrap().collect();
            let best_w = arrs.iter().map(|a| eval::welfare(&inst, a)).max().unwrap();
            let best_m = arrs.iter().map(|a| eval::min_utility(&inst, a)).max().unwrap();
            let cfg = ExactConfig::default();
            assert_eq!(solve_mwa_exact(&inst, &cfg).unwrap().objective, Some(best_w));
            assert_eq!(solve_mua_exact(&inst, &cfg).unwrap().objective, Some(best_m));
        }
    }

    #[test]
    fn node_budget_gives_inconclusive() {
        let pos = Positions::new((0..8).map(|x| rational(x * x, 1)).collect());
        let inst = Instance::from_positions(default_names(8), pos, SeatGraph::path(8), UtilityType::S).unwrap();
        let r = find_envy_free_exact(&inst, &SearchBudget::nodes(5).into()).unwrap();
        assert_eq!(r.status, ExactStatus::Inconclusive);
        assert!(r.witness.is_none());
    }
}
