//! Utilities, envy, exchange-blocking pairs, welfare and the score-vector order.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AgentId, Arrangement, Instance, UtilityType};
use crate::scalar::Scalar;

/// Folds neighbour valuations under a utility rule. No neighbours gives zero.
pub(crate) fn aggregate<T: Scalar>(rule: UtilityType, values: impl IntoIterator<Item = T>) -> T {
    let mut it = values.into_iter();
    let Some(first) = it.next() else {
        return T::zero();
    };
    match rule {
        UtilityType::S => it.fold(first, |acc, v| acc + v),
        UtilityType::B => it.fold(first, T::max_of),
        UtilityType::W => it.fold(first, T::min_of),
    }
}

/// Utility of agent `p` sitting on vertex `v`, where `occupant(w)` names the
/// agent on each neighbour `w` of `v`.
#[inline]
pub(crate) fn utility_at<T: Scalar>(
    inst: &Instance<T>,
    p: usize,
    v: usize,
    occupant: impl Fn(usize) -> usize,
) -> T {
    aggregate(
        inst.utility(),
        inst.seats()
            .neighbours(v)
            .iter()
            .map(|&w| inst.value(p, occupant(w)).clone()),
    )
}

#[inline]
pub(crate) fn utility_raw<T: Scalar>(inst: &Instance<T>, arr: &Arrangement, p: usize) -> T {
    let occ = arr.occupants();
    utility_at(inst, p, arr.seats()[p], |w| occ[w])
}

/// Utility `p` would have after exchanging seats with `q`.
#[inline]
pub(crate) fn swapped_utility<T: Scalar>(
    inst: &Instance<T>,
    arr: &Arrangement,
    p: usize,
    q: usize,
) -> T {
    let (vp, vq) = (arr.seats()[p], arr.seats()[q]);
    let occ = arr.occupants();
    utility_at(inst, p, vq, |w| if w == vp { q } else { occ[w] })
}

#[inline]
pub(crate) fn envies_raw<T: Scalar>(inst: &Instance<T>, arr: &Arrangement, p: usize, q: usize) -> bool {
    swapped_utility(inst, arr, p, q) > utility_raw(inst, arr, p)
}

fn check_agent(arr: &Arrangement, p: AgentId) -> Result<usize> {
    if p.index() >= arr.len() {
        return Err(Error::OutOfRange {
            what: "agents",
            index: p.index(),
            len: arr.len(),
        });
    }
    Ok(p.index())
}

/// Utility of `p` under the instance's rule. Agents on isolated vertices get 0.
pub fn utility<T: Scalar>(inst: &Instance<T>, arr: &Arrangement, p: AgentId) -> Result<T> {
    let p = check_agent(arr, p)?;
    Ok(utility_raw(inst, arr, p))
}

/// Utilities of all agents, indexed by agent.
pub fn utilities<T: Scalar>(inst: &Instance<T>, arr: &Arrangement) -> Vec<T> {
    (0..arr.len()).map(|p| utility_raw(inst, arr, p)).collect()
}

pub fn welfare<T: Scalar>(inst: &Instance<T>, arr: &Arrangement) -> T {
    (0..arr.len()).fold(T::zero(), |acc, p| acc + utility_raw(inst, arr, p))
}

/// Minimum utility over all agents; zero for an empty instance.
pub fn min_utility<T: Scalar>(inst: &Instance<T>, arr: &Arrangement) -> T {
    (0..arr.len())
        .map(|p| utility_raw(inst, arr, p))
        .reduce(T::min_of)
        .unwrap_or_else(T::zero)
}

/// Whether `p` strictly gains by exchanging seats with `q`. Ties are not envy.
pub fn envies<T: Scalar>(inst: &Instance<T>, arr: &Arrangement, p: AgentId, q: AgentId) -> Result<bool> {
    if p == q {
        return Err(Error::SameAgent(p.index()));
    }
    let (p, q) = (check_agent(arr, p)?, check_agent(arr, q)?);
    Ok(envies_raw(inst, arr, p, q))
}

/// Two agents who envy each other, with `p < q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockingPair {
    pub p: AgentId,
    pub q: AgentId,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the lexicographically smallest pair.
    #[default]
    First,
    All,
}

/// Exchange-blocking pairs in lexicographic order.
pub fn find_blocking_pairs<T: Scalar>(
    inst: &Instance<T>,
    arr: &Arrangement,
    mode: SearchMode,
) -> Vec<BlockingPair> {
    let n = arr.len();
    let current = utilities(inst, arr);
    let mut out = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            if swapped_utility(inst, arr, p, q) > current[p]
                && swapped_utility(inst, arr, q, p) > current[q]
            {
                out.push(BlockingPair {
                    p: AgentId(p),
                    q: AgentId(q),
                });
                if mode == SearchMode::First {
                    return out;
                }
            }
        }
    }
    out
}

/// First ordered pair `(p, q)` such that `p` envies `q`.
pub fn find_envy<T: Scalar>(inst: &Instance<T>, arr: &Arrangement) -> Option<(AgentId, AgentId)> {
    let n = arr.len();
    let current = utilities(inst, arr);
    (0..n)
        .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
        .find(|&(p, q)| swapped_utility(inst, arr, p, q) > current[p])
        .map(|(p, q)| (AgentId(p), AgentId(q)))
}

pub fn is_envy_free<T: Scalar>(inst: &Instance<T>, arr: &Arrangement) -> bool {
    let free = find_envy(inst, arr).is_none();
    debug_assert!(!free || is_exchange_stable(inst, arr), "envy-free but not stable");
    free
}

pub fn is_exchange_stable<T: Scalar>(inst: &Instance<T>, arr: &Arrangement) -> bool {
    find_blocking_pairs(inst, arr, SearchMode::First).is_empty()
}

/// Whether every ordered pair has the same valuation both ways.
pub fn is_symmetric<T: Scalar>(inst: &Instance<T>) -> bool {
    let n = inst.agent_count();
    (0..n).all(|p| (p + 1..n).all(|q| inst.value(p, q) == inst.value(q, p)))
}

/// Distinct pair scores of a symmetric instance, descending.
pub fn score_levels<T: Scalar>(inst: &Instance<T>) -> Result<Vec<T>> {
    if !is_symmetric(inst) {
        return Err(Error::NotSymmetric);
    }
    let n = inst.agent_count();
    let mut levels: Vec<T> = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .map(|(p, q)| inst.value(p, q).clone())
        .collect();
    levels.sort_by(|a, b| b.cmp_total(a));
    levels.dedup();
    Ok(levels)
}

/// Number of seat-graph edges per pair-score level, levels descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreVector<T> {
    levels: Vec<T>,
    counts: Vec<usize>,
}

impl<T: Scalar> ScoreVector<T> {
    /// Fails unless `levels` and `counts` have equal length.
    pub fn new(levels: Vec<T>, counts: Vec<usize>) -> Result<Self> {
        if levels.len() != counts.len() {
            return Err(Error::LevelMismatch);
        }
        Ok(ScoreVector { levels, counts })
    }

    pub fn levels(&self) -> &[T] {
        &self.levels
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Score vector against precomputed levels from [`score_levels`].
pub fn score_vector_with_levels<T: Scalar>(
    inst: &Instance<T>,
    levels: &[T],
    arr: &Arrangement,
) -> ScoreVector<T> {
    let occ = arr.occupants();
    let mut counts = vec![0; levels.len()];
    for &(u, v) in inst.seats().edges() {
        let s = inst.value(occ[u], occ[v]);
        let i = levels
            .binary_search_by(|l| s.cmp_total(l))
            .expect("edge score is a level");
        counts[i] += 1;
    }
    ScoreVector {
        levels: levels.to_vec(),
        counts,
    }
}

pub fn score_vector<T: Scalar>(inst: &Instance<T>, arr: &Arrangement) -> Result<ScoreVector<T>> {
    let levels = score_levels(inst)?;
    Ok(score_vector_with_levels(inst, &levels, arr))
}

/// Whether `a` is w-better than `b`: scanning from the lowest level upward,
/// `a` has strictly fewer edges at the first level where the counts differ.
pub fn w_better<T: Scalar>(a: &ScoreVector<T>, b: &ScoreVector<T>) -> Result<bool> {
    if a.levels != b.levels {
        return Err(Error::LevelMismatch);
    }
    let first_diff = a
        .counts
        .iter()
        .zip(&b.counts)
        .rev()
        .map(|(x, y)| x.cmp(y))
        .find(|o| *o != Ordering::Equal);
    Ok(first_diff == Some(Ordering::Less))
}
