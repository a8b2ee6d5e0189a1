//! Core data model: agents, valuations, seat graphs and arrangements.

mod arrangement;
mod graph;
mod instance;
mod valuation;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use arrangement::Arrangement;
pub use graph::{classify_seat_graph, ComponentKind, ComponentSummary, GraphClass, SeatGraph};
pub use instance::{
    classify_preferences, default_names, validate_instance, Instance, PreferenceClass,
    ValidationReport, Violation,
};
pub use valuation::{valuations_from_positions, Positions, ValuationMatrix};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl AgentId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How an agent's utility is derived from its neighbours' valuations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UtilityType {
    /// Best neighbour only.
    B,
    /// Sum over neighbours.
    S,
    /// Worst neighbour only.
    W,
}

impl UtilityType {
    pub fn letter(self) -> char {
        match self {
            UtilityType::B => 'B',
            UtilityType::S => 'S',
            UtilityType::W => 'W',
        }
    }
}

impl fmt::Display for UtilityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for UtilityType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" | "b" => Ok(UtilityType::B),
            "S" | "s" => Ok(UtilityType::S),
            "W" | "w" => Ok(UtilityType::W),
            other => Err(Error::Format(format!("unknown utility type {other:?}"))),
        }
    }
}
