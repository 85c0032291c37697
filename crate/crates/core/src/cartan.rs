//! Root data, the Cartan Hopf algebras H ⊇ H′ and their duality pairing.

use crate::braided::{add_into, BraidedSpace};
use crate::scalar::{rat, ScalarQ};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Environment variable with extra preset directories (separated like `PATH`).
pub const PRESET_PATH_ENV: &str = "ANQG_PRESET_PATH";

/// Names of the shipped presets.
pub const PRESET_NAMES: [&str; 5] = ["A1", "A2", "B2", "G2", "A1xA1"];

fn builtin_preset(name: &str) -> Option<&'static str> {
    Some(match name {
        "A1" => include_str!("../presets/A1.json"),
        "A2" => include_str!("../presets/A2.json"),
        "B2" => include_str!("../presets/B2.json"),
        "G2" => include_str!("../presets/G2.json"),
        "A1xA1" => include_str!("../presets/A1xA1.json"),
        _ => return None,
    })
}

/// Violations found while validating a root datum.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatumError {
    #[error("rank must be at least 1")]
    EmptyRank,
    #[error("{field} has {got} rows, expected rank {rank}")]
    RowCount { field: &'static str, got: usize, rank: usize },
    #[error("{field} row {row} has length {got}, expected {expected}")]
    RowLength { field: &'static str, row: usize, got: usize, expected: usize },
    #[error("diagonal not even: (alpha_{i}, alpha_{i}) = {value}", i = .0 + 1, value = .1)]
    DiagonalNotEven(usize, i64),
    #[error("diagonal not positive: (alpha_{i}, alpha_{i}) = {value}", i = .0 + 1, value = .1)]
    DiagonalNotPositive(usize, i64),
    #[error("pairing not symmetric at ({i}, {j})", i = .0 + 1, j = .1 + 1)]
    NotSymmetric(usize, usize),
    #[error("off-diagonal pairing positive at ({i}, {j})", i = .0 + 1, j = .1 + 1)]
    OffDiagonalPositive(usize, usize),
    #[error("coroot {i} evaluates to {got} on simple root {j}, expected 2(a_i,a_j)/(a_i,a_i) = {expected}", i = .0 + 1, j = .1 + 1, got = .2, expected = .3)]
    CorootMismatch(usize, usize, i64, String),
    #[error("simple roots are linearly dependent")]
    DependentRoots,
    #[error("entries must stay below 2^31 in absolute value")]
    EntryTooLarge,
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("cannot read preset: {0}")]
    Io(String),
    #[error("malformed preset: {0}")]
    Json(String),
}

/// Preset file contents before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDatum {
    #[serde(default)]
    pub name: String,
    pub rank: usize,
    pub pairing: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    #[serde(default)]
    pub comments: Vec<String>,
}

/// Validated root datum with derived Cartan matrix, `A^{-1}` and the `t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    raw: RawDatum,
    lattice_rank: usize,
    cartan: Vec<Vec<i64>>,
    a_inv: Option<Vec<Vec<BigRational>>>,
    t_vectors: Vec<Vec<i64>>,
}

fn rank_of_int_rows(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in 0..ncols {
                    let t = &f * &m[rank][k];
                    m[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of a rational matrix, `None` when singular.
pub fn invert_rational(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let pv = a[c][c].recip();
        for k in 0..n {
            a[c][k] = &a[c][k] * &pv;
            inv[c][k] = &inv[c][k] * &pv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                    let t = &f * &inv[c][k];
                    inv[r][k] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Unique integer `b` with `Σ b_i v_i = target`; `None` if no such vector exists
/// or the `v_i` are dependent.
fn integer_coordinates(vectors: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let n = vectors.len();
    let nrow = target.len();
    let mut m: Vec<Vec<BigRational>> = (0..nrow)
        .map(|r| {
            let mut row: Vec<BigRational> = vectors.iter().map(|v| rat(v[r])).collect();
            row.push(rat(target[r]));
            row
        })
        .collect();
    let mut piv_cols = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..nrow).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pv = m[rank][c].recip();
        for k in 0..=n {
            m[rank][k] = &m[rank][k] * &pv;
        }
        for r in 0..nrow {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..=n {
                    let t = &f * &m[rank][k];
                    m[r][k] -= t;
                }
            }
        }
        piv_cols.push(c);
        rank += 1;
    }
    if rank < n || (rank..nrow).any(|r| !m[r][n].is_zero()) {
        return None;
    }
    let mut b = vec![0i64; n];
    for (r, &c) in piv_cols.iter().enumerate() {
        let v = &m[r][n];
        if !v.is_integer() {
            return None;
        }
        b[c] = i64::try_from(v.to_integer()).ok()?;
    }
    Some(b)
}

/// Validate a raw datum: shapes, even positive diagonal, nonpositive symmetric
/// off-diagonal pairing, coroot/root compatibility and independence of the roots.
pub fn validate_datum(raw: RawDatum) -> Result<RootDatum, DatumError> {
    let n = raw.rank;
    if n == 0 {
        return Err(DatumError::EmptyRank);
    }
    let bound = 1i64 << 31;
    for rows in [&raw.pairing, &raw.coroots, &raw.simple_roots] {
        if rows.iter().flatten().any(|x| x.abs() >= bound) {
            return Err(DatumError::EntryTooLarge);
        }
    }
    for (field, rows) in [("pairing", &raw.pairing), ("coroots", &raw.coroots), ("simple_roots", &raw.simple_roots)] {
        if rows.len() != n {
            return Err(DatumError::RowCount { field, got: rows.len(), rank: n });
        }
    }
    for (r, row) in raw.pairing.iter().enumerate() {
        if row.len() != n {
            return Err(DatumError::RowLength { field: "pairing", row: r, got: row.len(), expected: n });
        }
    }
    let lattice_rank = raw.simple_roots[0].len();
    for (field, rows) in [("coroots", &raw.coroots), ("simple_roots", &raw.simple_roots)] {
        for (r, row) in rows.iter().enumerate() {
            if row.len() != lattice_rank {
                return Err(DatumError::RowLength { field, row: r, got: row.len(), expected: lattice_rank });
            }
        }
    }
    let p = &raw.pairing;
    for i in 0..n {
        if p[i][i] <= 0 {
            return Err(DatumError::DiagonalNotPositive(i, p[i][i]));
        }
        if p[i][i] % 2 != 0 {
            return Err(DatumError::DiagonalNotEven(i, p[i][i]));
        }
        for j in 0..n {
            if p[i][j] != p[j][i] {
                return Err(DatumError::NotSymmetric(i, j));
            }
            if i != j && p[i][j] > 0 {
                return Err(DatumError::OffDiagonalPositive(i, j));
            }
        }
    }
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let got: i64 = raw.coroots[i].iter().zip(&raw.simple_roots[j]).map(|(a, b)| a * b).sum();
            let expected = BigRational::new(BigInt::from(2 * p[i][j]), BigInt::from(p[i][i]));
            if rat(got) != expected {
                return Err(DatumError::CorootMismatch(i, j, got, expected.to_string()));
            }
            cartan[i][j] = got;
        }
    }
    if rank_of_int_rows(&raw.simple_roots) != n {
        return Err(DatumError::DependentRoots);
    }
    let a: Vec<Vec<BigRational>> = p.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let a_inv = invert_rational(&a);
    let t_vectors = (0..n).map(|i| raw.coroots[i].iter().map(|&x| x * p[i][i] / 2).collect()).collect();
    Ok(RootDatum { raw, lattice_rank, cartan, a_inv, t_vectors })
}

/// Parse and validate a preset in JSON form.
pub fn parse_datum_json(text: &str) -> Result<RootDatum, DatumError> {
    let raw: RawDatum = serde_json::from_str(text).map_err(|e| DatumError::Json(e.to_string()))?;
    validate_datum(raw)
}

/// Directories named by the preset-path environment variable.
pub fn preset_search_path() -> Vec<PathBuf> {
    std::env::var_os(PRESET_PATH_ENV).map(|v| std::env::split_paths(&v).collect()).unwrap_or_default()
}

/// Load a preset by name: `<dir>/<name>.json` from the search path first, then the shipped presets.
pub fn load_preset(name: &str) -> Result<RootDatum, DatumError> {
    for dir in preset_search_path() {
        let path = dir.join(format!("{name}.json"));
        if path.is_file() {
            let text = std::fs::read_to_string(&path).map_err(|e| DatumError::Io(format!("{}: {e}", path.display())))?;
            return parse_datum_json(&text);
        }
    }
    let text = builtin_preset(name).ok_or_else(|| DatumError::UnknownPreset(name.to_string()))?;
    parse_datum_json(text)
}

impl RootDatum {
    pub fn name(&self) -> &str {
        &self.raw.name
    }

    pub fn raw(&self) -> &RawDatum {
        &self.raw
    }

    pub fn rank(&self) -> usize {
        self.raw.rank
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    /// `(α_i, α_j)`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.raw.pairing[i][j]
    }

    /// `d_i = (α_i, α_i)/2`, so `q_i = q^{d_i}`.
    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.raw.pairing[i][i] / 2
    }

    /// `a_ij = λ_i(α_j)`.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Inverse of the symmetrized matrix `((α_i, α_j))`, when it exists.
    pub fn a_inverse(&self) -> Option<&[Vec<BigRational>]> {
        self.a_inv.as_deref()
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.raw.simple_roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.raw.coroots[i]
    }

    /// Coordinates of `t_i = K_{d_i λ_i}` in Φ*.
    pub fn t_vector(&self, i: usize) -> &[i64] {
        &self.t_vectors[i]
    }

    /// `Σ n_i t_i` in Φ*.
    pub fn t_monomial(&self, n: &[i64]) -> Vec<i64> {
        let mut v = vec![0; self.lattice_rank];
        for (i, &k) in n.iter().enumerate() {
            for (a, b) in v.iter_mut().zip(&self.t_vectors[i]) {
                *a += k * b;
            }
        }
        v
    }

    /// `λ(μ)` for `λ ∈ Φ*`, `μ ∈ Φ`.
    pub fn eval(&self, lambda: &[i64], mu: &[i64]) -> i64 {
        lambda.iter().zip(mu).map(|(a, b)| a * b).sum()
    }

    /// `Σ b_i α_i` in Φ coordinates.
    pub fn root_combination(&self, b: &[i64]) -> Vec<i64> {
        let mut v = vec![0; self.lattice_rank];
        for (i, &k) in b.iter().enumerate() {
            for (a, x) in v.iter_mut().zip(&self.raw.simple_roots[i]) {
                *a += k * x;
            }
        }
        v
    }

    /// `(α_i, μ) = d_i λ_i(μ)` for a weight `μ ∈ Φ`.
    pub fn root_weight_pairing(&self, i: usize, mu: &[i64]) -> i64 {
        self.eval(&self.t_vectors[i], mu)
    }

    /// The bilinear form on weights, `(μ, ν) = Σ A^{-1}_{ij} (α_i, μ)(α_j, ν)`.
    /// `None` when `A` is singular.
    pub fn weight_form(&self, mu: &[i64], nu: &[i64]) -> Option<BigRational> {
        let a_inv = self.a_inv.as_ref()?;
        let n = self.rank();
        let x: Vec<i64> = (0..n).map(|i| self.root_weight_pairing(i, mu)).collect();
        let y: Vec<i64> = (0..n).map(|j| self.root_weight_pairing(j, nu)).collect();
        let mut acc = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                acc += &a_inv[i][j] * rat(x[i] * y[j]);
            }
        }
        Some(acc)
    }

    /// `(β, β')` for root-lattice vectors given in simple-root coordinates.
    pub fn root_form(&self, b: &[i64], c: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            for j in 0..n {
                acc += b[i] * c[j] * self.raw.pairing[i][j];
            }
        }
        acc
    }

    /// Coordinates of `μ` in the simple roots when `μ` lies in the root lattice.
    pub fn root_coordinates(&self, mu: &[i64]) -> Option<Vec<i64>> {
        integer_coordinates(&self.raw.simple_roots, mu)
    }

    /// `n` with `Σ n_i t_i = μ`, when `μ` lies in the lattice spanned by the `t_i`
    /// and the `t_i` are independent.
    pub fn t_coordinates(&self, mu: &[i64]) -> Option<Vec<i64>> {
        integer_coordinates(&self.t_vectors, mu)
    }

    /// Braided space with `c(v_i ⊗ v_j) = q^{(α_i, α_j)} v_j ⊗ v_i`.
    pub fn braided_space(&self) -> BraidedSpace {
        BraidedSpace::from_exponents(&self.raw.pairing).expect("nonzero monomial coefficients")
    }
}

/// Element of the group algebra of Φ*, `Σ c_λ K_λ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CartanElement {
    terms: BTreeMap<Vec<i64>, ScalarQ>,
}

impl CartanElement {
    pub fn k(lambda: Vec<i64>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(lambda, ScalarQ::one());
        CartanElement { terms }
    }

    pub fn one(lattice_rank: usize) -> Self {
        CartanElement::k(vec![0; lattice_rank])
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, ScalarQ> {
        &self.terms
    }

    pub fn add_term(&mut self, lambda: Vec<i64>, c: &ScalarQ) {
        add_into(&mut self.terms, lambda, c);
    }

    /// `K_λ K_μ = K_{λ+μ}`.
    pub fn mul(&self, o: &CartanElement) -> CartanElement {
        let mut out = CartanElement::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let s: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add_term(s, &(x * y));
            }
        }
        out
    }

    /// Coproduct: every `K_λ` is grouplike.
    pub fn coproduct(&self) -> Vec<((Vec<i64>, Vec<i64>), ScalarQ)> {
        self.terms.iter().map(|(l, c)| ((l.clone(), l.clone()), c.clone())).collect()
    }

    pub fn antipode(&self) -> CartanElement {
        let mut out = CartanElement::default();
        for (l, c) in &self.terms {
            out.add_term(l.iter().map(|x| -x).collect(), c);
        }
        out
    }

    pub fn counit(&self) -> ScalarQ {
        let mut acc = ScalarQ::zero();
        for c in self.terms.values() {
            acc = &acc + c;
        }
        acc
    }
}

/// `<K_λ, t^n> = q^{λ(Σ n_i α_i)}`.
pub fn cartan_pairing(datum: &RootDatum, lambda: &[i64], n: &[i64]) -> ScalarQ {
    ScalarQ::q_pow(datum.eval(lambda, &datum.root_combination(n)))
}

/// Bilinear extension of [`cartan_pairing`] in the first slot.
pub fn cartan_pairing_element(datum: &RootDatum, x: &CartanElement, n: &[i64]) -> ScalarQ {
    let mut acc = ScalarQ::zero();
    for (l, c) in x.terms() {
        acc = &acc + &(c * &cartan_pairing(datum, l, n));
    }
    acc
}

/// The two maps `H′ → H` of the weak quasi-triangular structure:
/// `t^n ↦ t^n` and `t^n ↦ t^{-n}`.
pub fn weakqt_maps(datum: &RootDatum, n: &[i64]) -> (CartanElement, CartanElement) {
    let v = datum.t_monomial(n);
    let neg = v.iter().map(|x| -x).collect();
    (CartanElement::k(v), CartanElement::k(neg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for name in PRESET_NAMES {
            let d = load_preset(name).unwrap();
            assert_eq!(d.name(), name);
        }
        let a1 = load_preset("A1").unwrap();
        assert_eq!(a1.a_inverse().unwrap()[0][0], BigRational::new(1.into(), 2.into()));
        let a2 = load_preset("A2").unwrap();
        assert_eq!(a2.cartan_entry(0, 1), -1);
        let g2 = load_preset("G2").unwrap();
        assert_eq!(g2.cartan_entry(1, 0), -3);
    }

    #[test]
    fn odd_diagonal_rejected() {
        let mut raw = load_preset("A1").unwrap().raw().clone();
        raw.pairing = vec![vec![3]];
        assert!(matches!(validate_datum(raw), Err(DatumError::DiagonalNotEven(0, 3))));
    }

    #[test]
    fn coroot_mismatch_reported() {
        let mut raw = load_preset("A2").unwrap().raw().clone();
        raw.coroots[0] = vec![1, 1];
        assert!(matches!(validate_datum(raw), Err(DatumError::CorootMismatch(0, _, _, _))));
    }

    #[test]
    fn pairing_examples() {
        let a1 = load_preset("A1").unwrap();
        assert_eq!(cartan_pairing(&a1, &[1], &[1]), ScalarQ::q_pow(2));
        assert_eq!(cartan_pairing(&a1, &[0], &[5]), ScalarQ::one());
        assert_eq!(cartan_pairing(&a1, &[3], &[0]), ScalarQ::one());
    }

    #[test]
    fn weakqt_examples() {
        let a2 = load_preset("A2").unwrap();
        let (r, rb) = weakqt_maps(&a2, &[1, 1]);
        assert_eq!(r, CartanElement::k(vec![1, 1]));
        assert_eq!(rb, CartanElement::k(vec![-1, -1]));
        let (r, rb) = weakqt_maps(&a2, &[0, 0]);
        assert_eq!(r, CartanElement::one(2));
        assert_eq!(rb, CartanElement::one(2));
    }

    #[test]
    fn weight_form_on_roots() {
        let b2 = load_preset("B2").unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let v = b2.weight_form(b2.simple_root(i), b2.simple_root(j)).unwrap();
                assert_eq!(v, rat(b2.pairing(i, j)));
            }
        }
        assert_eq!(b2.root_coordinates(&b2.root_combination(&[2, -1])), Some(vec![2, -1]));
        assert_eq!(b2.root_coordinates(&[1, 0]), Some(vec![1, 1]));
        assert_eq!(b2.root_coordinates(&[0, 1]), None);
    }
}
