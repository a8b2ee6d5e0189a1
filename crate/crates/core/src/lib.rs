//! Solvers, verifiers and instance generators for the seat-arrangement problem.
//!
//! Agents with pairwise valuations are placed on the vertices of a seat graph.
//! An agent's utility is derived from its neighbours under one of three rules:
//! the sum of valuations (S), the best neighbour (B) or the worst neighbour (W).
//!
//! The crate is organised around the problem's moving parts:
//!
//! - [`model`]: agents, valuation matrices, seat graphs, arrangements and
//!   preference/graph class detection.
//! - [`eval`]: utilities, envy, exchange-blocking pairs, welfare and the
//!   score-vector order used by the W-utility potential.
//! - [`dynamics`]: better-response swap dynamics with potential tracking.
//! - [`construct`]: the polynomial constructions (greedy pair seating for
//!   symmetric B-utility, consecutive placement for 1-D preferences).
//! - [`exact`]: exhaustive and pruned backtracking searches for optimal,
//!   envy-free, exchange-stable and threshold arrangements at small sizes.
//! - [`gen`]: hardness-reduction instance generators with brute-force oracles
//!   for the source problems, plus seeded random instances.
//! - [`io`]: the canonical JSON file formats.
//!
//! All core algorithms are generic over a [`Scalar`]. The aliases at the crate
//! root fix the scalar to exact arbitrary-precision rationals, which is what
//! the file formats, the CLI and the test-suite use.

pub mod construct;
pub mod dynamics;
pub mod error;
pub mod eval;
pub mod exact;
pub mod gen;
pub mod io;
pub mod model;
mod scalar;

pub use error::{Error, Result};
pub use model::{AgentId, UtilityType, VertexId};
pub use scalar::{rational, Scalar};

/// Exact rational scalar used throughout the toolkit.
pub type Rational = num_rational::BigRational;

pub type Instance = model::Instance<Rational>;
pub type ValuationMatrix = model::ValuationMatrix<Rational>;
pub type Positions = model::Positions<Rational>;
pub type ScoreVector = eval::ScoreVector<Rational>;
pub type Trace = dynamics::Trace<Rational>;
pub type Potential = dynamics::Potential<Rational>;
pub type ExactResult = exact::ExactResult<Rational>;
pub type GeneratedInstance = gen::GeneratedInstance<Rational>;
pub type PerturbationSpec = gen::PerturbationSpec<Rational>;

/// Floating-point instantiation, handy for quick experiments where exact
/// comparisons are not required.
pub type InstanceF64 = model::Instance<f64>;
