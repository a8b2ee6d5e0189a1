use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Positions, SeatGraph, UtilityType, ValuationMatrix};
use crate::scalar::Scalar;

/// A seat-arrangement instance: agents, valuations, seat graph, utility rule
/// and optional 1-D positions.
///
/// Construction does not validate; call [`Instance::validated`] or
/// [`validate_instance`] before solving. Every solver entry point re-checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance<T> {
    names: Vec<String>,
    valuations: ValuationMatrix<T>,
    seats: SeatGraph,
    utility: UtilityType,
    positions: Option<Positions<T>>,
}

impl<T: Scalar> Instance<T> {
    pub fn new(
        names: Vec<String>,
        valuations: ValuationMatrix<T>,
        seats: SeatGraph,
        utility: UtilityType,
        positions: Option<Positions<T>>,
    ) -> Self {
        Instance {
            names,
            valuations,
            seats,
            utility,
            positions,
        }
    }

    /// Like [`Instance::new`] but fails with the full violation report.
    pub fn validated(
        names: Vec<String>,
        valuations: ValuationMatrix<T>,
        seats: SeatGraph,
        utility: UtilityType,
        positions: Option<Positions<T>>,
    ) -> Result<Self> {
        let inst = Self::new(names, valuations, seats, utility, positions);
        inst.ensure_valid()?;
        Ok(inst)
    }

    /// Instance with valuations derived from positions.
    pub fn from_positions(
        names: Vec<String>,
        positions: Positions<T>,
        seats: SeatGraph,
        utility: UtilityType,
    ) -> Result<Self> {
        let valuations = super::valuations_from_positions(&positions)?;
        Self::validated(names, valuations, seats, utility, Some(positions))
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = validate_instance(self);
        if report.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(report))
        }
    }

    pub fn agent_count(&self) -> usize {
        self.valuations.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn valuations(&self) -> &ValuationMatrix<T> {
        &self.valuations
    }

    pub fn seats(&self) -> &SeatGraph {
        &self.seats
    }

    pub fn utility(&self) -> UtilityType {
        self.utility
    }

    pub fn positions(&self) -> Option<&Positions<T>> {
        self.positions.as_ref()
    }

    /// Same agents and seats under a different utility rule.
    pub fn with_utility(mut self, utility: UtilityType) -> Self {
        self.utility = utility;
        self
    }

    /// Replaces the valuations and drops positions, which would no longer match.
    pub fn with_valuations(mut self, valuations: ValuationMatrix<T>) -> Self {
        self.valuations = valuations;
        self.positions = None;
        self
    }

    #[inline]
    pub(crate) fn value(&self, p: usize, q: usize) -> &T {
        self.valuations.get(p, q)
    }
}

/// `a0, a1, ...`
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    CountMismatch { agents: usize, vertices: usize },
    NameCountMismatch { names: usize, agents: usize },
    MissingValuation { p: usize, q: usize },
    PositionsLength { positions: usize, agents: usize },
    TooFewPositions { positions: usize },
    PositionMismatch {
        p: usize,
        q: usize,
        expected: String,
        found: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CountMismatch { agents, vertices } => write!(
                f,
                "agent/vertex count mismatch: {agents} agents, {vertices} vertices"
            ),
            Violation::NameCountMismatch { names, agents } => {
                write!(f, "{names} agent names for {agents} agents")
            }
            Violation::MissingValuation { p, q } => {
                write!(f, "missing valuation of agent {p} for agent {q}")
            }
            Violation::PositionsLength { positions, agents } => {
                write!(f, "{positions} positions for {agents} agents")
            }
            Violation::TooFewPositions { positions } => {
                write!(f, "1-D positions need at least two agents, got {positions}")
            }
            Violation::PositionMismatch {
                p,
                q,
                expected,
                found,
            } => write!(
                f,
                "valuation of agent {p} for agent {q} is {found}, positions imply {expected}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Lists every structural problem with an instance. An empty report means the
/// instance is well-formed.
pub fn validate_instance<T: Scalar>(inst: &Instance<T>) -> ValidationReport {
    let n = inst.agent_count();
    let mut violations = Vec::new();
    if inst.seats.vertex_count() != n {
        violations.push(Violation::CountMismatch {
            agents: n,
            vertices: inst.seats.vertex_count(),
        });
    }
    if inst.names.len() != n {
        violations.push(Violation::NameCountMismatch {
            names: inst.names.len(),
            agents: n,
        });
    }
    violations.extend(
        inst.valuations
            .missing_pairs()
            .map(|(p, q)| Violation::MissingValuation { p, q }),
    );
    if let Some(pos) = &inst.positions {
        if pos.len() != n {
            violations.push(Violation::PositionsLength {
                positions: pos.len(),
                agents: n,
            });
        } else if n < 2 {
            violations.push(Violation::TooFewPositions { positions: n });
        } else {
            let span = pos.span();
            for p in 0..n {
                for q in (0..n).filter(|&q| q != p) {
                    let Some(found) = inst.valuations.raw(p, q) else {
                        continue;
                    };
                    let expected = span.clone() - pos.distance(p, q) + T::one();
                    if *found != expected {
                        violations.push(Violation::PositionMismatch {
                            p,
                            q,
                            expected: expected.to_string(),
                            found: found.to_string(),
                        });
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}

/// Which preference restrictions an instance satisfies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferenceClass {
    pub nonnegative: bool,
    pub positive: bool,
    pub binary: bool,
    pub symmetric: bool,
    pub strict: bool,
    /// Positions are present and the valuations agree with them.
    pub one_dimensional: bool,
    /// Positions are present and pairwise distinct.
    pub unique_positions: bool,
}

/// Scans the matrix (and positions, if any) for every preference class.
/// Expects a valid instance.
pub fn classify_preferences<T: Scalar>(inst: &Instance<T>) -> PreferenceClass {
    let n = inst.agent_count();
    let zero = T::zero();
    let one = T::one();
    let mut class = PreferenceClass {
        nonnegative: true,
        positive: true,
        binary: true,
        symmetric: true,
        strict: true,
        ..Default::default()
    };
    for p in 0..n {
        let mut row: Vec<&T> = Vec::with_capacity(n.saturating_sub(1));
        for q in (0..n).filter(|&q| q != p) {
            let v = inst.value(p, q);
            class.nonnegative &= *v >= zero;
            class.positive &= *v > zero;
            class.binary &= *v == zero || *v == one;
            class.symmetric &= v == inst.value(q, p);
            row.push(v);
        }
        row.sort_by(|a, b| a.cmp_total(b));
        class.strict &= row.windows(2).all(|w| w[0] != w[1]);
    }
    if let Some(pos) = &inst.positions {
        let consistent = validate_instance(inst)
            .violations
            .iter()
            .all(|v| !matches!(v, Violation::PositionMismatch { .. } | Violation::PositionsLength { .. } | Violation::TooFewPositions { .. }));
        class.one_dimensional = consistent;
        class.unique_positions = consistent && pos.is_unique();
    }
    class
}
