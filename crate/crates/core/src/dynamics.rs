//! Better-response swap dynamics: repeatedly satisfy exchange-blocking pairs.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::eval::{self, BlockingPair, ScoreVector, SearchMode};
use crate::model::{Arrangement, Instance, UtilityType};
use crate::scalar::Scalar;

/// Which blocking pair to satisfy when several exist.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "policy")]
pub enum PairSelectionPolicy {
    /// Lexicographically smallest pair.
    #[default]
    FirstByIndex,
    /// Largest combined utility gain; ties by smallest pair.
    BestImprovement,
    /// Uniform among all blocking pairs, from a seeded stream.
    Random { seed: u64 },
}

/// Potential of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Potential<T> {
    /// Total welfare, strictly increasing under S-utility.
    Welfare(T),
    /// Score vector, strictly w-better after each W-utility swap.
    Scores(ScoreVector<T>),
    /// Total welfare under B-utility. Reported for inspection only; nothing
    /// is claimed about its monotonicity.
    Unguaranteed(T),
}

impl<T: Scalar> Potential<T> {
    /// Whether `self` strictly improves on `prev`. `None` when no order is
    /// claimed or the kinds differ.
    pub fn improves_on(&self, prev: &Potential<T>) -> Option<bool> {
        match (self, prev) {
            (Potential::Welfare(a), Potential::Welfare(b)) => Some(a > b),
            (Potential::Scores(a), Potential::Scores(b)) => eval::w_better(a, b).ok(),
            _ => None,
        }
    }

    pub fn is_guaranteed(&self) -> bool {
        !matches!(self, Potential::Unguaranteed(_))
    }
}

/// Potential for a symmetric instance. Fails on asymmetric preferences.
pub fn potential<T: Scalar>(inst: &Instance<T>, arr: &Arrangement) -> Result<Potential<T>> {
    let levels = eval::score_levels(inst)?;
    Ok(potential_with_levels(inst, &levels, arr))
}

fn potential_with_levels<T: Scalar>(inst: &Instance<T>, levels: &[T], arr: &Arrangement) -> Potential<T> {
    match inst.utility() {
        UtilityType::S => Potential::Welfare(eval::welfare(inst, arr)),
        UtilityType::W => Potential::Scores(eval::score_vector_with_levels(inst, levels, arr)),
        UtilityType::B => Potential::Unguaranteed(eval::welfare(inst, arr)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step<T> {
    pub pair: BlockingPair,
    /// Potential after the swap; absent for asymmetric instances.
    pub potential: Option<Potential<T>>,
}

/// Record of one dynamics run, sufficient to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace<T> {
    pub initial: Arrangement,
    pub initial_potential: Option<Potential<T>>,
    pub steps: Vec<Step<T>>,
    pub final_arrangement: Arrangement,
    /// The final arrangement has no blocking pair.
    pub terminated: bool,
    pub step_count: usize,
    /// Symmetric preferences under S or W, where a potential forces termination.
    pub guaranteed: bool,
    /// Stopped because an arrangement repeated.
    pub cycle_detected: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DynamicsConfig {
    pub policy: PairSelectionPolicy,
    /// Defaults to `n^4`.
    pub max_steps: Option<u64>,
    /// Remember every visited arrangement and stop on a repeat.
    pub detect_cycles: bool,
}

/// `n^4`, saturating.
pub fn default_max_steps(n: usize) -> u64 {
    (n as u64).saturating_pow(4)
}

pub fn run_swap_dynamics<T: Scalar>(
    inst: &Instance<T>,
    start: &Arrangement,
    policy: PairSelectionPolicy,
    max_steps: Option<u64>,
) -> Result<Trace<T>> {
    run_swap_dynamics_with(
        inst,
        start,
        &DynamicsConfig {
            policy,
            max_steps,
            detect_cycles: false,
        },
    )
}

pub fn run_swap_dynamics_with<T: Scalar>(
    inst: &Instance<T>,
    start: &Arrangement,
    config: &DynamicsConfig,
) -> Result<Trace<T>> {
    inst.ensure_valid()?;
    if start.len() != inst.agent_count() {
        return Err(crate::Error::NotBijection(format!(
            "arrangement has {} agents, instance has {}",
            start.len(),
            inst.agent_count()
        )));
    }
    let levels = eval::score_levels(inst).ok();
    let guaranteed = levels.is_some() && inst.utility() != UtilityType::B;
    let max_steps = config
        .max_steps
        .unwrap_or_else(|| default_max_steps(inst.agent_count()));
    let mut rng = match config.policy {
        PairSelectionPolicy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let snapshot = |arr: &Arrangement| levels.as_ref().map(|l| potential_with_levels(inst, l, arr));

    let mut arr = start.clone();
    let mut seen = HashSet::new();
    if config.detect_cycles {
        seen.insert(arr.clone());
    }
    let mut steps = Vec::new();
    let mut terminated = false;
    let mut cycle_detected = false;
    loop {
        let pair = match config.policy {
            PairSelectionPolicy::FirstByIndex => {
                eval::find_blocking_pairs(inst, &arr, SearchMode::First).into_iter().next()
            }
            PairSelectionPolicy::BestImprovement => best_improvement(inst, &arr),
            PairSelectionPolicy::Random { .. } => {
                let all = eval::find_blocking_pairs(inst, &arr, SearchMode::All);
                let rng = rng.as_mut().expect("seeded for random policy");
                (!all.is_empty()).then(|| all[rng.random_range(0..all.len())])
            }
        };
        let Some(pair) = pair else {
            terminated = true;
            break;
        };
        if steps.len() as u64 >= max_steps {
            break;
        }
        arr.swap_in_place(pair.p.index(), pair.q.index());
        steps.push(Step {
            pair,
            potential: snapshot(&arr),
        });
        if config.detect_cycles && !seen.insert(arr.clone()) {
            cycle_detected = true;
            break;
        }
    }
    Ok(Trace {
        initial: start.clone(),
        initial_potential: snapshot(start),
        step_count: steps.len(),
        steps,
        final_arrangement: arr,
        terminated,
        guaranteed,
        cycle_detected,
    })
}

fn best_improvement<T: Scalar>(inst: &Instance<T>, arr: &Arrangement) -> Option<BlockingPair> {
    let current = eval::utilities(inst, arr);
    let mut best: Option<(T, BlockingPair)> = None;
    for pair in eval::find_blocking_pairs(inst, arr, SearchMode::All) {
        let (p, q) = (pair.p.index(), pair.q.index());
        let gain = eval::swapped_utility(inst, arr, p, q) - current[p].clone()
            + eval::swapped_utility(inst, arr, q, p)
            - current[q].clone();
        if best.as_ref().is_none_or(|(g, _)| gain > *g) {
            best = Some((gain, pair));
        }
    }
    best.map(|(_, pair)| pair)
}
