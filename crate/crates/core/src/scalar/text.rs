//! Canonical string form of [`ScalarQ`] and its parser.
//!
//! Laurent polynomials print in descending exponent order, e.g.
//! `q^2 - 3/2*q + 1 - q^-1`. Proper fractions print as `(num)/(den)`.

use super::poly::Poly;
use super::ratfunc::ScalarQ;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Exponents outside this range are rejected by the parser.
pub const MAX_PARSE_EXPONENT: i64 = 4096;

fn write_laurent(f: &mut fmt::Formatter<'_>, shift: i64, p: &Poly) -> fmt::Result {
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = shift + k as i64;
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        if e == 0 {
            write!(f, "{a}")?;
            continue;
        }
        if !a.is_one() {
            write!(f, "{a}*")?;
        }
        if e == 1 {
            write!(f, "q")?;
        } else {
            write!(f, "q^{e}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (shift, num, den) = self.parts();
        if den.is_one() {
            return write_laurent(f, shift, num);
        }
        write!(f, "(")?;
        write_laurent(f, shift, num)?;
        write!(f, ")/(")?;
        write_laurent(f, 0, den)?;
        write!(f, ")")
    }
}

/// Failure to parse a scalar.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse scalar at byte {pos}: {msg}")]
pub struct ParseScalarError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ParseScalarError> {
        Err(ParseScalarError { pos: self.pos, msg: msg.to_string() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseScalarError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<i64, ParseScalarError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let n = self.uint()?;
        let v: i64 = match i64::try_from(&n) {
            Ok(v) if v <= MAX_PARSE_EXPONENT => v,
            _ => return self.err("exponent out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn next_is_digit(&self) -> bool {
        let mut p = self.pos;
        while p < self.s.len() && self.s[p].is_ascii_whitespace() {
            p += 1;
        }
        p < self.s.len() && self.s[p].is_ascii_digit()
    }

    fn term(&mut self) -> Result<ScalarQ, ParseScalarError> {
        let mut coeff: Option<BigRational> = None;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let n = self.uint()?;
            let mut c = BigRational::from_integer(n);
            if self.peek() == Some(b'/') {
                let save = self.pos;
                self.pos += 1;
                if self.next_is_digit() {
                    let d = self.uint()?;
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    c = c / BigRational::from_integer(d);
                } else {
                    self.pos = save;
                }
            }
            coeff = Some(c);
        }
        let star = coeff.is_some() && self.eat(b'*');
        let has_q = self.eat(b'q');
        let mut e = i64::from(has_q);
        if has_q && self.eat(b'^') {
            e = self.exponent()?;
        }
        if star && !has_q {
            return self.err("expected q after *");
        }
        if coeff.is_none() && !has_q {
            return self.err("expected a term");
        }
        Ok(ScalarQ::monomial(coeff.unwrap_or_else(BigRational::one), e))
    }

    fn laurent(&mut self) -> Result<ScalarQ, ParseScalarError> {
        let mut acc = ScalarQ::zero();
        let mut neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ScalarQ, ParseScalarError> {
        if self.eat(b'(') {
            let v = self.laurent()?;
            if !self.eat(b')') {
                return self.err("expected )");
            }
            Ok(v)
        } else {
            self.laurent()
        }
    }

    fn expr(&mut self) -> Result<ScalarQ, ParseScalarError> {
        let num = self.factor()?;
        if self.eat(b'/') {
            let den = self.factor()?;
            if den.is_zero() {
                return self.err("division by zero");
            }
            return Ok(&num / &den);
        }
        Ok(num)
    }
}

/// Parse a scalar written in the canonical grammar (whitespace-insensitive).
pub fn parse_scalar(s: &str) -> Result<ScalarQ, ParseScalarError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

impl FromStr for ScalarQ {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl Serialize for ScalarQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ScalarQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ScalarQ {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn prints_descending() {
        let x = &(&ScalarQ::q_pow(2) - &ScalarQ::q_pow(-1)) + &ScalarQ::from_int(1);
        assert_eq!(x.to_string(), "q^2 + 1 - q^-1");
    }

    #[test]
    fn fraction_form() {
        let x = ScalarQ::from_int(1) / (ScalarQ::q_pow(1) - ScalarQ::q_pow(-1));
        assert_eq!(x.to_string(), "(q)/(q^2 - 1)");
        assert_eq!(q("(q)/(q^2 - 1)"), x);
    }

    #[test]
    fn rational_coefficients() {
        assert_eq!(q("3/2*q - 1/3").to_string(), "3/2*q - 1/3");
        assert_eq!(q("-q^-2"), -ScalarQ::q_pow(-2));
        assert_eq!(q("q/2").to_string(), "1/2*q");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "q^", "(q", "1/0", "q/(q-q)", "2*", "q q", "q^99999999"] {
            assert!(parse_scalar(s).is_err(), "{s}");
        }
    }
}
