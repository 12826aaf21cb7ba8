//! Exact arbitrary-precision arithmetic: rationals, p-adic and Gauss
//! valuations, dense univariate and sparse multivariate polynomials over ℚ,
//! residue polynomials over 𝔽_p, and canonical fraction-field elements.

mod fp;
mod mpoly;
mod parse;
mod poly;
mod ratfunc;
mod val;

pub use fp::FpPoly;
pub use mpoly::MPoly;
pub use parse::{parse_mpoly, parse_poly, parse_rat};
pub use poly::{bezout, irreducible_quadratic_over_q, poly_ext_gcd, poly_gcd, Poly};
pub use ratfunc::RatFunc;
pub use val::{content_val, is_prime, padic_val, padic_val_int, rat_is_square, PValuationValue};

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Shorthand for a rational built from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(Int::from(num))
}
