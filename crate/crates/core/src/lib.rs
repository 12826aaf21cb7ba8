//! Exact-arithmetic engine for Zariskian localizations of f-adic rings.
//!
//! Everything here is exact: rationals and polynomials over `BigRational`,
//! localizations represented by fractions with explicit `1 + h` denominator
//! certificates, and Čech data whose equalities are normal-form equalities
//! in the fraction field. No floats, no tolerances.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON and the CLI live in the
//! companion `zadic-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod cex;
pub mod error;
pub mod fadic;
pub mod presheaf;
pub mod rng;
pub mod spa;
pub mod zariski;

pub use error::Error;

/// Re-export for downstream crates that test exact values.
pub mod num_zero {
    pub use num_traits::Zero;
}
