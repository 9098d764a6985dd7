//! Exact criteria for the vanishing of central values `L(E_D, 1)` of
//! quadratic twists of the elliptic curves at the dimension-one levels
//! `N ∈ {11, 14, 15, 17, 19, 20, 21, 24, 27, 32, 36, 49}`.
//!
//! The criterion compares two finite sums of genus characters over binary
//! quadratic forms ([`criterion::f_sum`]); an independent numerical estimate
//! of the L-value ([`oracle`]) cross-checks the verdicts.

pub mod arith;
pub mod cli;
pub mod criterion;
mod error;
pub mod genus;
pub mod oracle;
pub mod quadforms;
pub mod tables;

pub use error::{Error, Result};
pub use quadforms::{BinaryQuadraticForm, FormSet, RationalPoint};
