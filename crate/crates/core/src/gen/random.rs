use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    classify_preferences, default_names, Instance, Positions, PreferenceClass, SeatGraph, UtilityType,
    ValuationMatrix,
};
use crate::scalar::Scalar;

/// Attempts at drawing strict 1-D positions before giving up.
const STRICT_LAYOUT_ATTEMPTS: usize = 1000;

/// Shape of the random seat graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFamily {
    /// Perfect matching; `n` even.
    Matching,
    /// One path on all seats.
    Path,
    /// One cycle on all seats; `n >= 3`.
    Cycle,
    /// Paths of random lengths.
    PathGraph,
    /// Cycles of random lengths, each at least 3.
    CycleGraph,
    /// Stars of random sizes, each with at least one leaf.
    StarMix,
    /// Cliques of random sizes.
    Cluster,
    /// Every edge present with probability 1/2.
    Arbitrary,
    /// No edges.
    Empty,
}

/// Inputs for [`gen_random`]. Every flag set in `prefs` is guaranteed on the
/// output; unset flags are not forbidden.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomParams {
    pub n: usize,
    pub graph: GraphFamily,
    pub prefs: PreferenceClass,
    pub utility: UtilityType,
    /// Inclusive integer range for valuations, or for positions when a 1-D
    /// class is requested.
    pub value_range: (i64, i64),
    pub seed: u64,
}

impl RandomParams {
    pub fn new(n: usize, graph: GraphFamily, utility: UtilityType, seed: u64) -> Self {
        RandomParams {
            n,
            graph,
            prefs: PreferenceClass::default(),
            utility,
            value_range: (0, 9),
            seed,
        }
    }
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentParams(msg.into())
}

/// Splits `n` into random parts of at least `min` each.
fn random_parts(rng: &mut ChaCha8Rng, n: usize, min: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut rest = n;
    while rest > 0 {
        let mut s = if rest <= min { rest } else { rng.random_range(min..=rest) };
        if rest - s < min {
            s = rest;
        }
        parts.push(s);
        rest -= s;
    }
    parts
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, family: GraphFamily) -> Result<SeatGraph> {
    Ok(match family {
        GraphFamily::Matching => {
            if !n.is_multiple_of(2) {
                return Err(inconsistent("a perfect matching needs an even number of seats"));
            }
            SeatGraph::matching(n / 2)
        }
        GraphFamily::Path => SeatGraph::path(n),
        GraphFamily::Cycle => SeatGraph::cycle(n).map_err(|_| inconsistent("a cycle needs at least 3 seats"))?,
        GraphFamily::PathGraph => {
            let parts: Vec<SeatGraph> = random_parts(rng, n, 1).into_iter().map(SeatGraph::path).collect();
            SeatGraph::disjoint_union(&parts)
        }
        GraphFamily::CycleGraph => {
            if n < 3 {
                return Err(inconsistent("a cycle graph needs at least 3 seats"));
            }
            let parts = random_parts(rng, n, 3)
                .into_iter()
                .map(SeatGraph::cycle)
                .collect::<Result<Vec<_>>>()?;
            SeatGraph::disjoint_union(&parts)
        }
        GraphFamily::StarMix => {
            if n < 2 {
                return Err(inconsistent("a star needs at least 2 seats"));
            }
            let parts: Vec<SeatGraph> = random_parts(rng, n, 2)
                .into_iter()
                .map(|s| SeatGraph::star(s - 1))
                .collect();
            SeatGraph::disjoint_union(&parts)
        }
        GraphFamily::Cluster => {
            let parts: Vec<SeatGraph> = random_parts(rng, n, 1).into_iter().map(SeatGraph::clique).collect();
            SeatGraph::disjoint_union(&parts)
        }
        GraphFamily::Arbitrary => {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(0.5))
                .collect();
            SeatGraph::new(n, edges)?
        }
        GraphFamily::Empty => SeatGraph::empty(n),
    })
}

/// True when no agent is equidistant from two others.
fn strict_layout(xs: &[i64]) -> bool {
    xs.iter().enumerate().all(|(p, &x)| {
        let mut d: Vec<i64> = xs
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != p)
            .map(|(_, &y)| (x - y).abs())
            .collect();
        d.sort_unstable();
        d.windows(2).all(|w| w[0] != w[1])
    })
}

fn random_positions(rng: &mut ChaCha8Rng, p: &RandomParams) -> Result<Vec<i64>> {
    let (lo, hi) = p.value_range;
    let width = (hi - lo + 1).max(0) as usize;
    if p.prefs.binary && p.n > 2 {
        return Err(inconsistent("1-D preferences are binary only for at most 2 agents"));
    }
    let distinct = p.prefs.unique_positions || p.prefs.strict;
    if distinct && width < p.n {
        return Err(inconsistent(format!("{} distinct positions do not fit in [{lo}, {hi}]", p.n)));
    }
    let draw = |rng: &mut ChaCha8Rng| -> Vec<i64> {
        if distinct {
            let range: Vec<i64> = (lo..=hi).collect();
            range.choose_multiple(rng, p.n).copied().collect()
        } else {
            (0..p.n).map(|_| rng.random_range(lo..=hi)).collect()
        }
    };
    if !p.prefs.strict {
        return Ok(draw(rng));
    }
    for _ in 0..STRICT_LAYOUT_ATTEMPTS {
        let xs = draw(rng);
        if strict_layout(&xs) {
            return Ok(xs);
        }
    }
    Err(inconsistent(format!(
        "no strict 1-D layout of {} agents found in [{lo}, {hi}]",
        p.n
    )))
}

/// Values each agent row may draw from.
fn value_pool(p: &RandomParams) -> Vec<i64> {
    let (mut lo, mut hi) = p.value_range;
    if p.prefs.binary {
        lo = lo.max(0);
        hi = hi.min(1);
    }
    if p.prefs.positive {
        lo = lo.max(1);
    } else if p.prefs.nonnegative {
        lo = lo.max(0);
    }
    (lo..=hi).collect()
}

/// Proper colouring of the pairs of `n` agents: every agent sees each colour
/// at most once. Uses `n - 1` colours for even `n`, `n` for odd.
fn pair_colour(n: usize, p: usize, q: usize) -> usize {
    if n % 2 == 1 {
        (p + q) % n
    } else {
        let m = n - 1;
        if p == m {
            (2 * q) % m
        } else if q == m {
            (2 * p) % m
        } else {
            (p + q) % m
        }
    }
}

fn colour_count(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        2 => 1,
        _ if n.is_multiple_of(2) => n - 1,
        _ => n,
    }
}

fn random_valuations<T: Scalar>(rng: &mut ChaCha8Rng, p: &RandomParams) -> Result<ValuationMatrix<T>> {
    let n = p.n;
    let pool = value_pool(p);
    if pool.is_empty() {
        return Err(inconsistent("no valuation satisfies the requested classes in the value range"));
    }
    let entry = |v: i64| T::from_int(v);
    if p.prefs.strict && p.prefs.symmetric {
        let need = colour_count(n);
        if pool.len() < need {
            return Err(inconsistent(format!(
                "strict symmetric preferences for {n} agents need {need} distinct values, range has {}",
                pool.len()
            )));
        }
        let colours: Vec<i64> = pool.choose_multiple(rng, need).copied().collect();
        let mut label: Vec<usize> = (0..n).collect();
        label.shuffle(rng);
        return Ok(ValuationMatrix::symmetric_from_fn(n, |a, b| {
            entry(colours[pair_colour(n, label[a], label[b])])
        }));
    }
    if p.prefs.strict {
        if pool.len() < n.saturating_sub(1) {
            return Err(inconsistent(format!(
                "strict preferences for {n} agents need {} distinct values, range has {}",
                n - 1,
                pool.len()
            )));
        }
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| pool.choose_multiple(rng, n.saturating_sub(1)).copied().collect())
            .collect();
        return Ok(ValuationMatrix::from_fn(n, |a, b| {
            entry(rows[a][if b < a { b } else { b - 1 }])
        }));
    }
    let mut pick = || *pool.choose(rng).expect("pool is non-empty");
    Ok(if p.prefs.symmetric {
        ValuationMatrix::symmetric_from_fn(n, |_, _| entry(pick()))
    } else {
        ValuationMatrix::from_fn(n, |_, _| entry(pick()))
    })
}

fn satisfies(have: &PreferenceClass, want: &PreferenceClass) -> bool {
    let ok = |w: bool, h: bool| !w || h;
    ok(want.nonnegative, have.nonnegative)
        && ok(want.positive, have.positive)
        && ok(want.binary, have.binary)
        && ok(want.symmetric, have.symmetric)
        && ok(want.strict, have.strict)
        && ok(want.one_dimensional, have.one_dimensional)
        && ok(want.unique_positions, have.unique_positions)
}

/// Seeded random instance. The same parameters always give the same
/// instance.
pub fn gen_random<T: Scalar>(params: &RandomParams) -> Result<Instance<T>> {
    let n = params.n;
    if n < 2 {
        return Err(Error::TooFewAgents(n));
    }
    let (lo, hi) = params.value_range;
    if lo > hi {
        return Err(inconsistent(format!("empty value range [{lo}, {hi}]")));
    }
    if params.prefs.binary && params.prefs.strict && n > 3 {
        return Err(inconsistent("binary preferences are strict only for at most 3 agents"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let seats = random_graph(&mut rng, n, params.graph)?;
    let inst = if params.prefs.one_dimensional || params.prefs.unique_positions {
        let xs = random_positions(&mut rng, params)?;
        let pos = Positions::new(xs.into_iter().map(T::from_int).collect());
        Instance::from_positions(default_names(n), pos, seats, params.utility)?
    } else {
        let vals = random_valuations(&mut rng, params)?;
        Instance::validated(default_names(n), vals, seats, params.utility, None)?
    };
    if !satisfies(&classify_preferences(&inst), &params.prefs) {
        return Err(inconsistent("the requested preference classes cannot be met together"));
    }
    Ok(inst)
}
