use serde::{Deserialize, Serialize};

use super::{copies, AgentRole, Family, GeneratedInstance, ReductionSource};
use crate::error::{Error, Result};
use crate::model::{default_names, Arrangement, Instance, Positions, SeatGraph, UtilityType};
use crate::scalar::Scalar;

/// Largest item count the packing oracle accepts.
pub const BINPACK_ORACLE_CAP: usize = 10;

/// Items with positive integer sizes, `bins` bins of equal `capacity`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BinPackingFile", into = "BinPackingFile")]
pub struct BinPackingInstance {
    sizes: Vec<usize>,
    capacity: usize,
    bins: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BinPackingFile {
    sizes: Vec<usize>,
    capacity: usize,
    bins: usize,
}

impl TryFrom<BinPackingFile> for BinPackingInstance {
    type Error = Error;

    fn try_from(f: BinPackingFile) -> Result<Self> {
        BinPackingInstance::new(f.sizes, f.capacity, f.bins)
    }
}

impl From<BinPackingInstance> for BinPackingFile {
    fn from(b: BinPackingInstance) -> Self {
        BinPackingFile {
            sizes: b.sizes,
            capacity: b.capacity,
            bins: b.bins,
        }
    }
}

/// Bin index (0-based) of every item.
pub type Packing = Vec<usize>;

impl BinPackingInstance {
    pub fn new(sizes: Vec<usize>, capacity: usize, bins: usize) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::Precondition("item sizes must be positive and non-empty".into()));
        }
        if capacity == 0 || bins == 0 {
            return Err(Error::Precondition("capacity and bin count must be positive".into()));
        }
        Ok(BinPackingInstance { sizes, capacity, bins })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Total size equals total capacity and every item has size at least 2.
    pub fn is_normalized(&self) -> bool {
        self.total_size() == self.capacity * self.bins && self.sizes.iter().all(|&s| s >= 2)
    }

    /// Pads with unit items up to `capacity * bins`, then doubles every size
    /// and the capacity. Padding items follow the original items. Fails when
    /// the items exceed the total capacity.
    pub fn preprocess(&self) -> Result<BinPackingInstance> {
        let total = self.capacity * self.bins;
        if self.total_size() > total {
            return Err(Error::Precondition(format!(
                "items of total size {} exceed total capacity {total}",
                self.total_size()
            )));
        }
        let sizes = self
            .sizes
            .iter()
            .copied()
            .chain(std::iter::repeat_n(1, total - self.total_size()))
            .map(|s| 2 * s)
            .collect();
        BinPackingInstance::new(sizes, 2 * self.capacity, self.bins)
    }

    /// Checks bin indices and loads.
    pub fn check_packing(&self, pack: &Packing) -> Result<()> {
        if pack.len() != self.sizes.len() {
            return Err(Error::InvalidWitness(format!(
                "packing has {} entries for {} items",
                pack.len(),
                self.sizes.len()
            )));
        }
        let mut load = vec![0; self.bins];
        for (&b, &s) in pack.iter().zip(&self.sizes) {
            if b >= self.bins {
                return Err(Error::InvalidWitness(format!("bin {b} out of range")));
            }
            load[b] += s;
        }
        if let Some(b) = load.iter().position(|&l| l > self.capacity) {
            return Err(Error::InvalidWitness(format!("bin {b} overfull")));
        }
        Ok(())
    }
}

/// Exhaustive search for a packing. Up to [`BINPACK_ORACLE_CAP`] items.
pub fn solve_binpacking_bruteforce(bp: &BinPackingInstance) -> Result<Option<Packing>> {
    let m = bp.sizes.len();
    if m > BINPACK_ORACLE_CAP {
        return Err(Error::CapExceeded {
            what: "bin packing items",
            value: m,
            cap: BINPACK_ORACLE_CAP,
        });
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| bp.sizes[b].cmp(&bp.sizes[a]));

    fn go(bp: &BinPackingInstance, order: &[usize], at: usize, load: &mut [usize], pack: &mut [usize]) -> bool {
        let Some(&item) = order.get(at) else {
            return true;
        };
        let s = bp.sizes[item];
        for b in 0..load.len() {
            // bins with an equal load are interchangeable
            if load[b] + s > bp.capacity || load[..b].contains(&load[b]) {
                continue;
            }
            load[b] += s;
            pack[item] = b;
            if go(bp, order, at + 1, load, pack) {
                return true;
            }
            load[b] -= s;
        }
        false
    }
    let mut load = vec![0; bp.bins];
    let mut pack = vec![0; m];
    Ok(go(bp, &order, 0, &mut load, &mut pack).then_some(pack))
}

fn check_epsilon<T: Scalar>(eps: &T, max_size: usize) -> Result<()> {
    if *eps <= T::zero() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    if eps.clone() * T::from_int(max_size.saturating_sub(2) as i64) >= T::one() {
        return Err(Error::Precondition(
            "epsilon too large: the widest intra-item gap must stay below 2".into(),
        ));
    }
    Ok(())
}

/// Preprocesses `bp` (see [`BinPackingInstance::preprocess`]) and lays out the
/// result with [`layout_binpacking_1d_b`]. `eps` defaults to `1 / (4 n^2)`
/// for `n` agents.
pub fn gen_binpacking_to_1d_b<T: Scalar>(bp: &BinPackingInstance, eps: Option<T>) -> Result<GeneratedInstance<T>> {
    let normalized = bp.preprocess()?;
    let mut gi = layout_binpacking_1d_b(&normalized, eps)?;
    gi.source = ReductionSource::BinPacking {
        original: bp.clone(),
        normalized,
    };
    Ok(gi)
}

/// 1-D B-utility instance for an already normalized packing instance. Item
/// `i` gets `s_i` agents spaced `1, 1 + eps, 1 + 2 eps, ...` apart; consecutive
/// items are 2 apart. Seats are `bins` paths of `capacity` vertices.
pub fn layout_binpacking_1d_b<T: Scalar>(bp: &BinPackingInstance, eps: Option<T>) -> Result<GeneratedInstance<T>> {
    if !bp.is_normalized() {
        return Err(Error::Precondition(
            "layout needs total size equal to total capacity and sizes of at least 2".into(),
        ));
    }
    let n = bp.total_size();
    let eps = eps.unwrap_or_else(|| T::one() / T::from_int(4 * (n * n) as i64));
    check_epsilon(&eps, bp.sizes.iter().copied().max().unwrap_or(0))?;

    let mut coords = Vec::with_capacity(n);
    let mut roles = Vec::with_capacity(n);
    let mut x = T::zero();
    for (item, &s) in bp.sizes.iter().enumerate() {
        if item > 0 {
            x = x + T::from_int(2);
        }
        for index in 1..=s {
            if index > 1 {
                x = x + T::one() + eps.clone() * T::from_int(index as i64 - 2);
            }
            coords.push(x.clone());
            roles.push(AgentRole::Item { item, index });
        }
    }
    let seats = SeatGraph::disjoint_union(&copies(&SeatGraph::path(bp.capacity), bp.bins));
    let instance = Instance::from_positions(default_names(n), Positions::new(coords), seats, UtilityType::B)?;
    Ok(GeneratedInstance {
        family: Family::BinPacking1d,
        instance,
        source: ReductionSource::BinPacking {
            original: bp.clone(),
            normalized: bp.clone(),
        },
        roles,
    })
}

fn binpack_source<T>(gi: &GeneratedInstance<T>) -> Result<(&BinPackingInstance, &BinPackingInstance)> {
    gi.expect_family(Family::BinPacking1d)?;
    match &gi.source {
        ReductionSource::BinPacking { original, normalized } => Ok((original, normalized)),
        _ => Err(Error::Precondition("instance was not generated from bin packing".into())),
    }
}

/// Items of each bin placed left to right on that bin's path. `pack` covers
/// either the normalized items or only the original ones; in the latter case
/// padding items go first-fit into the remaining space.
pub fn arrangement_from_packing<T: Scalar>(gi: &GeneratedInstance<T>, pack: &Packing) -> Result<Arrangement> {
    let (original, normalized) = binpack_source(gi)?;
    let full: Packing = if pack.len() == normalized.sizes.len() {
        pack.clone()
    } else if pack.len() == original.sizes.len() {
        original.check_packing(pack)?;
        let mut load = vec![0; original.bins];
        for (&b, &s) in pack.iter().zip(&original.sizes) {
            load[b] += s;
        }
        let mut full = pack.clone();
        for _ in pack.len()..normalized.sizes.len() {
            let b = load
                .iter()
                .position(|&l| l < original.capacity)
                .ok_or_else(|| Error::InvalidWitness("no room left for padding".into()))?;
            load[b] += 1;
            full.push(b);
        }
        full
    } else {
        return Err(Error::InvalidWitness(format!(
            "packing has {} entries; expected {} or {}",
            pack.len(),
            original.sizes.len(),
            normalized.sizes.len()
        )));
    };
    normalized.check_packing(&full)?;
    let mut agent_at = Vec::with_capacity(gi.roles.len());
    for b in 0..normalized.bins {
        for (agent, role) in gi.roles.iter().enumerate() {
            if let AgentRole::Item { item, .. } = role {
                if full[*item] == b {
                    agent_at.push(agent);
                }
            }
        }
    }
    Arrangement::from_agent_at(agent_at)
}

/// Reads the normalized packing off an arrangement: each item goes to the
/// path holding its agents. Fails when an item's agents are split. The
/// prefix covering the original items is a packing of the original instance.
pub fn packing_from_arrangement<T: Scalar>(gi: &GeneratedInstance<T>, arr: &Arrangement) -> Result<Packing> {
    let (_, normalized) = binpack_source(gi)?;
    let mut pack: Vec<Option<usize>> = vec![None; normalized.sizes.len()];
    for (agent, role) in gi.roles.iter().enumerate() {
        let AgentRole::Item { item, .. } = *role else {
            return Err(Error::InvalidWitness(format!("unexpected role {role:?}")));
        };
        let bin = arr.seats()[agent] / normalized.capacity;
        match pack[item] {
            None => pack[item] = Some(bin),
            Some(b) if b != bin => {
                return Err(Error::InvalidWitness(format!("item {item} is split across paths")));
            }
            _ => {}
        }
    }
    let pack: Packing = pack.into_iter().map(|b| b.expect("every item has agents")).collect();
    normalized.check_packing(&pack)?;
    Ok(pack)
}
