//! Balanced q-integers, q-factorials and q-binomials.

use super::poly::Poly;
use super::ratfunc::ScalarQ;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Domain violation in a q-combinatorial function.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QNumError {
    #[error("q_factorial needs n >= 0, got {0}")]
    NegativeFactorial(i64),
    #[error("q_binomial needs 0 <= k <= n, got n={n}, k={k}")]
    BinomialRange { n: i64, k: i64 },
}

/// `[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}`, with `[-n] = -[n]`.
pub fn q_int(n: i64) -> ScalarQ {
    if n == 0 {
        return ScalarQ::zero();
    }
    let m = n.unsigned_abs() as usize;
    // q^{1-m} * (1 + q^2 + ... + q^{2(m-1)})
    let mut c = vec![BigRational::from_integer(BigInt::from(0)); 2 * m - 1];
    for j in 0..m {
        c[2 * j] = BigRational::one();
    }
    let v = ScalarQ::laurent(1 - m as i64, Poly::from_coeffs(c));
    if n < 0 {
        -v
    } else {
        v
    }
}

/// `[n]_{q^d}`: the balanced integer in the variable `q^d`.
pub fn q_int_at(n: i64, d: i64) -> ScalarQ {
    if d == 1 {
        return q_int(n);
    }
    let terms = q_int(n).laurent_terms().unwrap();
    ScalarQ::from_terms(terms.into_iter().map(|(e, c)| (e * d, c)))
}

/// `[n]! = [1][2]...[n]`.
pub fn q_factorial(n: i64) -> Result<ScalarQ, QNumError> {
    if n < 0 {
        return Err(QNumError::NegativeFactorial(n));
    }
    Ok(q_factorial_ratio(0, n as usize))
}

/// `[a+1][a+2]...[a+k]`, the value of `[a+k]!/[a]!` for every integer `a`.
pub fn q_factorial_ratio(a: i64, k: usize) -> ScalarQ {
    let mut acc = ScalarQ::one();
    for j in 1..=k as i64 {
        acc = &acc * &q_int(a + j);
    }
    acc
}

/// Gaussian binomial `[n choose k]` in the variable `q^d`.
pub fn q_binomial_at(n: i64, k: i64, d: i64) -> Result<ScalarQ, QNumError> {
    if n < 0 || k < 0 || k > n {
        return Err(QNumError::BinomialRange { n, k });
    }
    // Pascal rule [n,k] = q^k [n-1,k] + q^{k-n} [n-1,k-1], in q^d
    let n = n as usize;
    let k = k as usize;
    let mut row = vec![ScalarQ::one()];
    for m in 1..=n {
        let mut next = vec![ScalarQ::zero(); m + 1];
        for j in 0..=m {
            let mut v = ScalarQ::zero();
            if j < m {
                v = &v + &row[j].mul_q_pow(j as i64 * d);
            }
            if j >= 1 {
                v = &v + &row[j - 1].mul_q_pow(-((m - j) as i64) * d);
            }
            next[j] = v;
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

/// Gaussian binomial `[n choose k] = [n]!/([k]![n-k]!)`.
pub fn q_binomial(n: i64, k: i64) -> Result<ScalarQ, QNumError> {
    q_binomial_at(n, k, 1)
}
