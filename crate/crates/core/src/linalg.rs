//! Exact linear algebra over Q[q], Q(q) and Q.

use crate::scalar::{Poly, ScalarQ};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Fraction-free (Bareiss) elimination on a polynomial matrix.
///
/// Rows are visited in order; a row becomes a pivot when it is independent of
/// the pivots chosen before it. Returns `(row, column)` pivots in selection order.
pub fn bareiss_pivots(mut m: Vec<Vec<Poly>>) -> Vec<(usize, usize)> {
    let nrows = m.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = m[0].len();
    let mut used_row = vec![false; nrows];
    let mut pivots = Vec::new();
    let mut prev = Poly::one();
    loop {
        let mut found = None;
        for (r, row) in m.iter().enumerate() {
            if used_row[r] {
                continue;
            }
            if let Some(c) = row.iter().position(|x| !x.is_zero()) {
                found = Some((r, c));
                break;
            }
        }
        let Some((pr, pc)) = found else { break };
        used_row[pr] = true;
        pivots.push((pr, pc));
        let prow = m[pr].clone();
        let p = prow[pc].clone();
        for r in 0..nrows {
            if used_row[r] {
                continue;
            }
            let f = m[r][pc].clone();
            let row = &mut m[r];
            for c in 0..ncols {
                let t = &(&p * &row[c]) - &(&f * &prow[c]);
                row[c] = if prev.is_one() { t } else { t.exact_div(&prev) };
            }
        }
        prev = p;
        if pivots.len() == ncols {
            break;
        }
    }
    pivots
}

/// Scale each row of a Q(q) matrix to polynomial entries (row scaling keeps
/// the row dependencies).
pub fn clear_denominators(m: &[Vec<ScalarQ>]) -> Vec<Vec<Poly>> {
    m.iter()
        .map(|row| {
            let nz: Vec<&ScalarQ> = row.iter().filter(|x| !x.is_zero()).collect();
            if nz.is_empty() {
                return vec![Poly::zero(); row.len()];
            }
            let lo = nz.iter().map(|x| x.shift()).min().unwrap();
            let mut den = Poly::one();
            for x in &nz {
                let d = x.denominator();
                if !d.is_one() {
                    let g = den.gcd(d);
                    den = &den * &d.exact_div(&g);
                }
            }
            row.iter()
                .map(|x| {
                    if x.is_zero() {
                        return Poly::zero();
                    }
                    let (s, n, d) = x.parts();
                    &n.shift_up((s - lo) as usize) * &den.exact_div(d)
                })
                .collect()
        })
        .collect()
}

/// Rank over Q(q).
pub fn rank_q(m: &[Vec<ScalarQ>]) -> usize {
    bareiss_pivots(clear_denominators(m)).len()
}

/// Inverse over Q(q) by Gauss-Jordan; `None` when singular.
pub fn inverse_q(m: &[Vec<ScalarQ>]) -> Option<Vec<Vec<ScalarQ>>> {
    let n = m.len();
    let mut a: Vec<Vec<ScalarQ>> = m.to_vec();
    let mut inv: Vec<Vec<ScalarQ>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ScalarQ::one() } else { ScalarQ::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let pinv = a[col][col].inv();
        for j in 0..n {
            a[col][j] = &a[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] = &a[r][j] - &t;
                let t = &f * &inv[col][j];
                inv[r][j] = &inv[r][j] - &t;
            }
        }
    }
    Some(inv)
}

/// Matrix product over Q(q).
pub fn matmul_q(a: &[Vec<ScalarQ>], b: &[Vec<ScalarQ>]) -> Vec<Vec<ScalarQ>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    let mut acc = ScalarQ::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(x * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Sparse rational vector keyed by column index.
pub type SparseVec = BTreeMap<usize, BigRational>;

/// Outcome of [`solve_rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalSolve {
    /// Basic solution: free variables set to zero, pivots chosen leftmost.
    Solved(Vec<BigRational>),
    Inconsistent,
}

/// Solve `A x = b` over Q with sparse rows. Columns are eliminated left to
/// right, so the solution is supported on the earliest independent columns.
pub fn solve_rational(rows: &[SparseVec], rhs: &[BigRational], ncols: usize) -> RationalSolve {
    // echelon rows keyed by pivot column: (row, rhs)
    let mut echelon: BTreeMap<usize, (SparseVec, BigRational)> = BTreeMap::new();
    for (row, b) in rows.iter().zip(rhs) {
        let mut r = row.clone();
        let mut b = b.clone();
        loop {
            let Some((&c, v)) = r.iter().next() else { break };
            let v = v.clone();
            match echelon.get(&c) {
                Some((er, eb)) => {
                    // er is normalized with er[c] = 1
                    for (k, x) in er {
                        let e = r.entry(*k).or_insert_with(BigRational::zero);
                        *e -= &v * x;
                        if e.is_zero() {
                            r.remove(k);
                        }
                    }
                    b -= &v * eb;
                }
                None => {
                    let inv = v.recip();
                    let nr: SparseVec = r.iter().map(|(k, x)| (*k, x * &inv)).collect();
                    echelon.insert(c, (nr, &b * &inv));
                    break;
                }
            }
        }
        if r.is_empty() && !b.is_zero() {
            return RationalSolve::Inconsistent;
        }
    }
    // back substitution from the rightmost pivot
    let mut x = vec![BigRational::zero(); ncols];
    for (&c, (r, b)) in echelon.iter().rev() {
        let mut v = b.clone();
        for (k, a) in r.range(c + 1..) {
            v -= a * &x[*k];
        }
        x[c] = v;
    }
    RationalSolve::Solved(x)
}

/// Rank of a sparse rational matrix.
pub fn rank_rational(rows: &[SparseVec]) -> usize {
    let mut echelon: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for row in rows {
        let mut r = row.clone();
        while let Some((&c, v)) = r.iter().next() {
            let v = v.clone();
            match echelon.get(&c) {
                Some(er) => {
                    for (k, x) in er {
                        let e = r.entry(*k).or_insert_with(BigRational::zero);
                        *e -= &v * x;
                        if e.is_zero() {
                            r.remove(k);
                        }
                    }
                }
                None => {
                    let inv = v.recip();
                    echelon.insert(c, r.iter().map(|(k, x)| (*k, x * &inv)).collect());
                    break;
                }
            }
        }
    }
    echelon.len()
}
