//! Elements of the rational function field Q(q) in a canonical form.

use super::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An exact element of Q(q).
///
/// Stored as `q^shift * num / den` where `den` is monic with nonzero constant
/// term, `num` has nonzero constant term and `gcd(num, den) = 1`. Zero is
/// `shift = 0, num = 0, den = 1`. Two equal field elements therefore have
/// identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl ScalarQ {
    pub fn zero() -> Self {
        ScalarQ { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        ScalarQ { shift: 0, num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        ScalarQ::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        ScalarQ { shift: 0, num: Poly::constant(c), den: Poly::one() }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        ScalarQ { shift: k, num: Poly::one(), den: Poly::one() }
    }

    /// `c * q^k`.
    pub fn monomial(c: BigRational, k: i64) -> Self {
        if c.is_zero() {
            return ScalarQ::zero();
        }
        ScalarQ { shift: k, num: Poly::constant(c), den: Poly::one() }
    }

    /// Laurent polynomial `q^shift * p`.
    pub fn laurent(shift: i64, p: Poly) -> Self {
        ScalarQ::from_parts(shift, p, Poly::one())
    }

    /// Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return ScalarQ::zero();
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut v = vec![BigRational::zero(); (hi - lo) as usize + 1];
        for (e, c) in terms {
            v[(e - lo) as usize] += c;
        }
        ScalarQ::laurent(lo, Poly::from_coeffs(v))
    }

    /// Canonicalize `q^shift * num / den`.
    pub fn from_parts(shift: i64, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ScalarQ::zero();
        }
        let nl = num.low_order();
        let dl = den.low_order();
        let mut num = num.shift_down(nl);
        let mut den = den.shift_down(dl);
        let shift = shift + nl as i64 - dl as i64;
        if !den.is_constant() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.exact_div(&g);
                den = den.exact_div(&g);
            }
        }
        let l = den.lead().unwrap().recip();
        if !l.is_one() {
            num = num.scale(&l);
            den = den.scale(&l);
        }
        ScalarQ { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the element is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Exponent of the `q` power pulled out of the numerator.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// `Some(c)` when the element is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        (self.shift == 0 && self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    /// `Some((c, k))` when the element is a single monomial `c q^k`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        (!self.is_zero() && self.num.is_constant() && self.den.is_one())
            .then(|| (self.num.coeff(0), self.shift))
    }

    /// Laurent terms `(exponent, coefficient)` in ascending order; `None` for
    /// proper rational functions.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, BigRational)>> {
        if !self.den.is_one() {
            return None;
        }
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (self.shift + k as i64, c.clone()))
                .collect(),
        )
    }

    pub fn inv(&self) -> ScalarQ {
        assert!(!self.is_zero(), "inverse of zero");
        // num and den are already coprime, so only the leading normalization changes
        let l = self.num.lead().unwrap().recip();
        ScalarQ { shift: -self.shift, num: self.den.scale(&l), den: self.num.scale(&l) }
    }

    pub fn checked_inv(&self) -> Option<ScalarQ> {
        (!self.is_zero()).then(|| self.inv())
    }

    pub fn pow(&self, e: i64) -> ScalarQ {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = ScalarQ::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Value at `q = 1`; `None` when the denominator vanishes there.
    pub fn eval_at_one(&self) -> Option<BigRational> {
        let one = BigRational::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(&one) / d)
    }

    /// Multiply by `q^k` without renormalizing.
    pub fn mul_q_pow(&self, k: i64) -> ScalarQ {
        if self.is_zero() {
            return ScalarQ::zero();
        }
        ScalarQ { shift: self.shift + k, num: self.num.clone(), den: self.den.clone() }
    }

    pub fn scale_rational(&self, c: &BigRational) -> ScalarQ {
        if c.is_zero() || self.is_zero() {
            return ScalarQ::zero();
        }
        ScalarQ { shift: self.shift, num: self.num.scale(c), den: self.den.clone() }
    }

    /// Write `self` as `q^shift * P(q) / D(q)` with polynomial numerator: returns
    /// `(shift, P, D)` with `P` having nonzero constant term.
    pub fn parts(&self) -> (i64, &Poly, &Poly) {
        (self.shift, &self.num, &self.den)
    }

    /// Substitute `q -> q^{-1}`.
    pub fn bar(&self) -> ScalarQ {
        if self.is_zero() {
            return ScalarQ::zero();
        }
        let rev = |p: &Poly| {
            let mut c = p.coeffs().to_vec();
            c.reverse();
            Poly::from_coeffs(c)
        };
        let nd = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        ScalarQ::from_parts(-self.shift - nd + dd, rev(&self.num), rev(&self.den))
    }
}

fn add_laurent(a: &ScalarQ, b: &ScalarQ) -> ScalarQ {
    let lo = a.shift.min(b.shift);
    let pa = a.num.shift_up((a.shift - lo) as usize);
    let pb = b.num.shift_up((b.shift - lo) as usize);
    let sum = &pa + &pb;
    if sum.is_zero() {
        return ScalarQ::zero();
    }
    let l = sum.low_order();
    ScalarQ { shift: lo + l as i64, num: sum.shift_down(l), den: Poly::one() }
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, o: &ScalarQ) -> ScalarQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return add_laurent(self, o);
        }
        let lo = self.shift.min(o.shift);
        let pa = self.num.shift_up((self.shift - lo) as usize);
        let pb = o.num.shift_up((o.shift - lo) as usize);
        if self.den == o.den {
            return ScalarQ::from_parts(lo, &pa + &pb, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let da = self.den.exact_div(&g);
        let db = o.den.exact_div(&g);
        let num = &(&pa * &db) + &(&pb * &da);
        ScalarQ::from_parts(lo, num, &(&da * &db) * &g)
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, o: &ScalarQ) -> ScalarQ {
        self + &(-o)
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ { shift: self.shift, num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, o: &ScalarQ) -> ScalarQ {
        if self.is_zero() || o.is_zero() {
            return ScalarQ::zero();
        }
        let shift = self.shift + o.shift;
        if self.den.is_one() && o.den.is_one() {
            return ScalarQ { shift, num: &self.num * &o.num, den: Poly::one() };
        }
        if let Some((c, k)) = self.as_monomial() {
            return ScalarQ { shift: o.shift + k, num: o.num.scale(&c), den: o.den.clone() };
        }
        if let Some((c, k)) = o.as_monomial() {
            return ScalarQ { shift: self.shift + k, num: self.num.scale(&c), den: self.den.clone() };
        }
        // cross-cancel so the product is already reduced up to normalization
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = o.den.exact_div(&g1);
        let n2 = o.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let l = den.lead().unwrap().recip();
        ScalarQ { shift, num: num.scale(&l), den: den.scale(&l) }
    }
}

impl Div for &ScalarQ {
    type Output = ScalarQ;
    fn div(self, o: &ScalarQ) -> ScalarQ {
        self * &o.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, o: ScalarQ) -> ScalarQ {
                (&self).$m(&o)
            }
        }
        impl $tr<&ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, o: &ScalarQ) -> ScalarQ {
                (&self).$m(o)
            }
        }
        impl $tr<ScalarQ> for &ScalarQ {
            type Output = ScalarQ;
            fn $m(self, o: ScalarQ) -> ScalarQ {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ScalarQ> for ScalarQ {
    fn add_assign(&mut self, o: &ScalarQ) {
        *self = &*self + o;
    }
}

impl SubAssign<&ScalarQ> for ScalarQ {
    fn sub_assign(&mut self, o: &ScalarQ) {
        *self = &*self - o;
    }
}

impl MulAssign<&ScalarQ> for ScalarQ {
    fn mul_assign(&mut self, o: &ScalarQ) {
        *self = &*self * o;
    }
}

impl Default for ScalarQ {
    fn default() -> Self {
        ScalarQ::zero()
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for ScalarQ {
    fn from(n: i64) -> Self {
        ScalarQ::from_int(n)
    }
}

impl Zero for ScalarQ {
    fn zero() -> Self {
        ScalarQ::zero()
    }
    fn is_zero(&self) -> bool {
        ScalarQ::is_zero(self)
    }
}

impl One for ScalarQ {
    fn one() -> Self {
        ScalarQ::one()
    }
}
