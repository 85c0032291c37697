//! p-adic valuations of rational numbers and Gauss-norm estimates for
//! elements of Q(q) at `q = exp(h)`.

use super::ratfunc::ScalarQ;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Rational number or `+inf`, ordered with infinity on top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(BigRational),
    Infinity,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinity => None,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
            (ExtRational::Infinity, _) => Ordering::Greater,
            (_, ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

/// Errors from valuation routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("p = {0} is not a prime")]
    NotPrime(i64),
    #[error("v(h) must be positive, got {0}")]
    NonPositiveVh(BigRational),
    #[error("v(h) = {vh} is not above 1/(p-1) = {bound}; exp(h) does not converge")]
    OutsideConvergence { vh: BigRational, bound: BigRational },
    #[error("valuation of a quotient is undetermined: the denominator bound {0} is not exact")]
    Indeterminate(BigRational),
}

/// The prime `p` and the valuation `v(h)` of the deformation parameter, with `v(p) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicParams {
    p: i64,
    #[serde(with = "rational_string")]
    vh: BigRational,
}

fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PadicParams {
    /// Accepts any prime and any positive `v(h)`; use
    /// [`PadicParams::in_convergence_region`] or [`PadicParams::require_convergence`]
    /// where `exp(h)` must converge.
    pub fn new(p: i64, vh: BigRational) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if !vh.is_positive() {
            return Err(PadicError::NonPositiveVh(vh));
        }
        Ok(PadicParams { p, vh })
    }

    pub fn from_ints(p: i64, vh_num: i64, vh_den: i64) -> Result<Self, PadicError> {
        PadicParams::new(p, BigRational::new(vh_num.into(), vh_den.into()))
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn vh(&self) -> &BigRational {
        &self.vh
    }

    /// `1/(p-1)`.
    pub fn critical(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.p - 1))
    }

    pub fn in_convergence_region(&self) -> bool {
        self.vh > self.critical()
    }

    pub fn require_convergence(&self) -> Result<(), PadicError> {
        if self.in_convergence_region() {
            Ok(())
        } else {
            Err(PadicError::OutsideConvergence { vh: self.vh.clone(), bound: self.critical() })
        }
    }
}

/// Lower bound on a valuation; `exact` marks it as the true value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationBound {
    pub lower: ExtRational,
    pub exact: bool,
}

impl ValuationBound {
    pub fn exact(v: BigRational) -> Self {
        ValuationBound { lower: ExtRational::Finite(v), exact: true }
    }

    pub fn infinite() -> Self {
        ValuationBound { lower: ExtRational::Infinity, exact: true }
    }

    pub fn is_infinite(&self) -> bool {
        self.lower == ExtRational::Infinity
    }

    /// Finite value when exact.
    pub fn value(&self) -> Option<&BigRational> {
        if self.exact {
            self.lower.finite()
        } else {
            None
        }
    }
}

/// `v_p(n)` for a nonzero integer.
pub fn vp_int(n: &BigInt, p: i64) -> i64 {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(x)` for a rational; `None` for zero.
pub fn vp_rational(x: &BigRational, p: i64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(vp_int(x.numer(), p) - vp_int(x.denom(), p))
}

/// Sum of base-`p` digits of `n >= 0`.
pub fn digit_sum(mut n: u64, p: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// `v_p(n!) = (n - s_p(n)) / (p - 1)`.
pub fn vp_factorial(n: u64, p: u64) -> u64 {
    (n - digit_sum(n, p)) / (p - 1)
}

/// Gauss bound for a polynomial numerator: expand at `q = 1 + u`.
fn poly_valuation(poly: &super::poly::Poly, params: &PadicParams) -> (BigRational, bool) {
    let (den, coeffs) = poly.taylor_at_one();
    let base = -BigRational::from_integer(BigInt::from(vp_int(&den, params.p)));
    let mut best: Option<BigRational> = None;
    let mut ties = 0usize;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = BigRational::from_integer(BigInt::from(vp_int(c, params.p)))
            + &params.vh * BigRational::from_integer(BigInt::from(k as i64));
        match &best {
            Some(b) if v > *b => {}
            Some(b) if v == *b => ties += 1,
            _ => {
                best = Some(v);
                ties = 1;
            }
        }
    }
    (best.expect("nonzero polynomial") + base, ties == 1)
}

/// Valuation of `f` at `q = exp(h)`: `q` is a unit, so only the polynomial
/// numerator and denominator matter. The result is exact when both Gauss
/// minima are attained once; a non-exact numerator yields a lower bound, a
/// non-exact denominator yields [`PadicError::Indeterminate`].
pub fn gauss_valuation(f: &ScalarQ, params: &PadicParams) -> Result<ValuationBound, PadicError> {
    params.require_convergence()?;
    if f.is_zero() {
        return Ok(ValuationBound::infinite());
    }
    let (_, num, den) = f.parts();
    let (vn, en) = poly_valuation(num, params);
    if den.is_one() {
        return Ok(ValuationBound { lower: ExtRational::Finite(vn), exact: en });
    }
    let (vd, ed) = poly_valuation(den, params);
    if !ed {
        return Err(PadicError::Indeterminate(vd));
    }
    Ok(ValuationBound { lower: ExtRational::Finite(vn - vd), exact: en })
}

pub mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q_factorial, q_int};

    fn p51() -> PadicParams {
        PadicParams::from_ints(5, 1, 1).unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn q_minus_inverse() {
        let x = &ScalarQ::q_pow(1) - &ScalarQ::q_pow(-1);
        assert_eq!(gauss_valuation(&x, &p51()).unwrap(), ValuationBound::exact(r(1)));
    }

    #[test]
    fn units_and_zero() {
        assert_eq!(gauss_valuation(&ScalarQ::q_pow(7), &p51()).unwrap(), ValuationBound::exact(r(0)));
        assert!(gauss_valuation(&ScalarQ::zero(), &p51()).unwrap().is_infinite());
    }

    #[test]
    fn q_five() {
        assert_eq!(gauss_valuation(&q_int(5), &p51()).unwrap(), ValuationBound::exact(r(1)));
        let f = q_factorial(10).unwrap();
        assert_eq!(gauss_valuation(&f, &p51()).unwrap(), ValuationBound::exact(r(2)));
    }

    #[test]
    fn legendre() {
        assert_eq!(vp_factorial(25, 5), 6);
        assert_eq!(vp_factorial(10, 2), 8);
        assert_eq!(digit_sum(30, 5), 2);
    }

    #[test]
    fn params_validation() {
        assert!(PadicParams::from_ints(4, 1, 1).is_err());
        assert!(PadicParams::from_ints(5, 0, 1).is_err());
        let edge = PadicParams::from_ints(5, 1, 4).unwrap();
        assert!(!edge.in_convergence_region());
        assert!(gauss_valuation(&ScalarQ::one(), &edge).is_err());
    }

    #[test]
    fn tie_gives_bound() {
        // 4 + q = 5 + u: both terms have valuation 1
        let f = ScalarQ::from_terms([(0, r(4)), (1, r(1))]);
        let v = gauss_valuation(&f, &p51()).unwrap();
        assert_eq!(v.lower, ExtRational::Finite(r(1)));
        assert!(!v.exact);
        let g = &ScalarQ::one() / &f;
        assert!(matches!(gauss_valuation(&g, &p51()), Err(PadicError::Indeterminate(_))));
    }
}
