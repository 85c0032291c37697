//! Exact arithmetic in Q(q), q-combinatorics and p-adic valuation estimates.

mod padic;
mod poly;
mod qnum;
mod ratfunc;
mod text;

pub use padic::{
    rational_string,
    digit_sum, gauss_valuation, vp_factorial, vp_int, vp_rational, ExtRational, PadicError,
    PadicParams, ValuationBound,
};
pub use poly::Poly;
pub use qnum::{q_binomial, q_binomial_at, q_factorial, q_factorial_ratio, q_int, q_int_at, QNumError};
pub use ratfunc::ScalarQ;
pub use text::{parse_scalar, ParseScalarError, MAX_PARSE_EXPONENT};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for an integer as a rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `q^k - q^{-k}`.
pub fn q_diff(k: i64) -> ScalarQ {
    &ScalarQ::q_pow(k) - &ScalarQ::q_pow(-k)
}
