//! Hardness-reduction instance generators, brute-force oracles for the source
//! problems, forward-direction arrangement builders and seeded random instances.

mod binpack;
mod perturb;
mod pit;
mod random;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, SeatGraph};

pub use binpack::{
    arrangement_from_packing, gen_binpacking_to_1d_b, layout_binpacking_1d_b, packing_from_arrangement,
    solve_binpacking_bruteforce, BinPackingInstance, Packing,
};
pub use perturb::{perturb_strict, PerturbationSpec};
pub use pit::{
    arrangement_from_triangle_partition, gen_pit_to_efa_b, gen_pit_to_efa_w_binary, gen_pit_to_efa_w_strict,
    solve_pit_bruteforce, triangle_partition_from_arrangement, PitInstance, TrianglePartition,
};
pub use random::{gen_random, GraphFamily, RandomParams};

/// Which construction produced an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Triangles on 3-cycles, vertex agents at star centres; binary, B-utility.
    #[serde(rename = "pit-b")]
    PitB,
    /// Triangles on 3-cycles, chained helper pairs on 2-cycles; binary, W-utility.
    #[serde(rename = "pit-w-binary")]
    PitWBinary,
    /// Triangles on 3-cycles, vertex families on 17-cycles; strict, W-utility.
    #[serde(rename = "pit-w-strict")]
    PitWStrict,
    /// Items laid out on a line, bins as equal paths; 1-D, B-utility.
    #[serde(rename = "binpack-1d")]
    BinPacking1d,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PitB => "pit-b",
            Family::PitWBinary => "pit-w-binary",
            Family::PitWStrict => "pit-w-strict",
            Family::BinPacking1d => "binpack-1d",
        }
    }
}

/// The source-problem instance a generated instance was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum ReductionSource {
    Pit(PitInstance),
    BinPacking {
        original: BinPackingInstance,
        /// After padding with unit items and doubling.
        normalized: BinPackingInstance,
    },
}

/// What an agent stands for in its construction. Vertex and item indices are
/// zero-based; `j < k` always.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum AgentRole {
    /// The agent of a source vertex.
    Vertex { vertex: usize },
    /// Vertex `vertex` sharing a triangle with `j` and `k` (B family).
    Pair { vertex: usize, j: usize, k: usize },
    /// Filler valuing only its vertex agent (B family), 1-based index.
    Anchor { vertex: usize, index: usize },
    /// First or second helper of a vertex (W binary family).
    Link { vertex: usize, index: usize },
    /// Copy `copy` in 1..=3 of the triangle option `(j, k)` at `vertex` (W strict family).
    Triple { vertex: usize, copy: usize, j: usize, k: usize },
    /// Padding agent of a vertex family (W strict family), 1-based index.
    Pad { vertex: usize, index: usize },
    /// Enforcer valued 1 by outsiders, 1-based index.
    SAgent { index: usize },
    /// Enforcer valued -1 by outsiders, 1-based index.
    TAgent { index: usize },
    /// Agent `index` (1-based, left to right) of normalized item `item`.
    Item { item: usize, index: usize },
}

/// A reduction output together with its source and agent roles.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedInstance<T> {
    pub family: Family,
    pub instance: Instance<T>,
    pub source: ReductionSource,
    /// One role per agent.
    pub roles: Vec<AgentRole>,
}

impl<T> GeneratedInstance<T> {
    /// Agent index of every role.
    pub fn role_index(&self) -> HashMap<AgentRole, usize> {
        self.roles.iter().enumerate().map(|(i, r)| (*r, i)).collect()
    }

    pub fn agent_with_role(&self, role: &AgentRole) -> Option<usize> {
        self.roles.iter().position(|r| r == role)
    }

    pub(crate) fn expect_family(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(Error::Precondition(format!(
                "expected a {} instance, got {}",
                family.name(),
                self.family.name()
            )));
        }
        Ok(())
    }
}

/// Graph of `count` copies of `part`.
pub(crate) fn copies(part: &SeatGraph, count: usize) -> Vec<SeatGraph> {
    vec![part.clone(); count]
}
