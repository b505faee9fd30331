//! Exact tools for the correspondence between cardinality inequalities of
//! finite sets and entropy inequalities of discrete random variables.
//!
//! The building blocks are:
//!
//! - [`dist`]: finite distributions with exact rational probabilities,
//!   entropy, pushforwards along maps, and suitable lengths `k`;
//! - [`ruzsa`]: k-Ruzsa sets (all length-k vectors whose empirical type is the
//!   distribution), their sizes, enumeration, the identity
//!   `f^k(R_k(X)) = R_k(f(X))`, and method-of-types bounds;
//! - [`projections`]: point sets in product spaces, projections, conditioned
//!   slices, and conditional entropies;
//! - [`covers`]: fractional and uniform covers and an exact LP for the
//!   minimum fractional cover;
//! - [`checkers`]: evaluation of both sides of set and entropy inequalities
//!   (Han, Loomis-Whitney, Shearer, uniform cover, conditional projections).
//!
//! Everything that decides a verdict exactly is computed with big integers and
//! big rationals; logarithms are only used for reporting and for comparisons
//! that are far from tight.

pub mod checkers;
pub mod covers;
pub mod dist;
pub mod element;
pub mod error;
pub mod projections;
pub mod random;
pub mod rational;
pub mod report;
pub mod ruzsa;

pub use checkers::{EvalConfig, InequalitySource, InequalitySpec, MapSource, Side, Subject};
pub use covers::{CoverSpec, LpSolution};
pub use dist::{FiniteMap, LogBase, RationalDist};
pub use element::GroundElement;
pub use error::{Error, Result};
pub use projections::{IndexSet, PointSet};
pub use report::{CheckReport, Quantity, Verdict};
pub use ruzsa::{RuzsaSpec, RuzsaVector};

pub use num_bigint::BigUint;
pub use num_rational::BigRational;
