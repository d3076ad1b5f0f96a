//! Exact-arithmetic analysis of recursive Kummer towers over finite
//! fields: one-step ramification, the Abhyankar pyramid, different
//! degrees and genera, stratified rational-place censuses, and the
//! brute-force oracles that keep the closed forms honest.
//!
//! The tower of interest is `x_{i+1}^(q-1) + (x_i + 1)^(q-1) = 1` read
//! over `F_{q^2}`, whose limit `N(F_n)/g(F_n)` is `2/(q-2)`; the sibling
//! recursion with exponent `(q-1)/(p-1)` over `F_q` and the shifted
//! variant `y^(q-1) = 1 - (x + s)^(q-1)` share the engine.
//!
//! Everything is exact: finite-field elements are coefficient vectors,
//! counts are big integers, rates are big rationals, and square-root
//! bounds are compared in squared form. Formula layers are generic over
//! the [`Scalar`] integer type; the aliases below pick the defaults.

pub mod census;
pub mod genus;
pub mod gf;
pub mod oracle;
pub mod pyramid;
pub mod scalar;
pub mod tower;

pub use gf::{Fe, FieldCtx, GfError};
pub use pyramid::{PlaceChain, PyramidError, PyramidMatrix, RamificationVerdict, RamifiedStratum};
pub use scalar::Scalar;
pub use tower::{BasicRamTable, ProjValue, Tower, TowerError, TowerKind};

/// Default exact integer for reports and the CLI.
pub type Int = num_bigint::BigInt;
/// Default exact rational.
pub type Rat = num_rational::Ratio<Int>;
