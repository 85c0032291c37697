//! Braided vector spaces of diagonal type and braid-group actions on tensor powers.

use crate::scalar::ScalarQ;
use std::collections::BTreeMap;
use std::fmt;

/// A word in the basis letters `0..rank`, read left to right as a tensor of basis vectors.
pub type Word = Vec<usize>;

/// Add `c` to the entry at `k`, dropping it when it cancels.
pub fn add_into<K: Ord>(map: &mut BTreeMap<K, ScalarQ>, k: K, c: &ScalarQ) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Occupied(mut o) => {
            let v = o.get() + c;
            if v.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = v;
            }
        }
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
    }
}

/// Multidegree of a word: letter counts.
pub fn multidegree(word: &[usize], rank: usize) -> Vec<usize> {
    let mut d = vec![0; rank];
    for &l in word {
        d[l] += 1;
    }
    d
}

/// All words with the given multidegree, in lexicographic order.
pub fn words_of_multidegree(d: &[usize]) -> Vec<Word> {
    let total: usize = d.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(total);
    let mut left = d.to_vec();
    fn rec(left: &mut [usize], cur: &mut Word, total: usize, out: &mut Vec<Word>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for l in 0..left.len() {
            if left[l] > 0 {
                left[l] -= 1;
                cur.push(l);
                rec(left, cur, total, out);
                cur.pop();
                left[l] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, total, &mut out);
    out
}

/// Render a word with 1-based letters, e.g. `v1v2v1`; the empty word is `1`.
pub fn word_label(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter().map(|l| format!("v{}", l + 1)).collect()
}

/// Errors raised by braid actions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("generator index {index} is not in 1..{n} for {n} strands")]
    GeneratorOutOfRange { index: i64, n: usize },
    #[error("tensor word of length {len} does not match {n} strands")]
    WrongLength { len: usize, n: usize },
    #[error("braiding coefficient c({0},{1}) is zero")]
    ZeroCoefficient(usize, usize),
    #[error("coefficient table must be square of size {0}")]
    BadShape(usize),
    #[error("cannot parse braid word: {0}")]
    Parse(String),
}

/// Diagonal braiding `c(v_i ⊗ v_j) = coeff(i,j) v_j ⊗ v_i`; the degree of `v_i`
/// is the `i`-th standard basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedSpace {
    labels: Vec<String>,
    coeff: Vec<Vec<ScalarQ>>,
}

impl BraidedSpace {
    pub fn new(labels: Vec<String>, coeff: Vec<Vec<ScalarQ>>) -> Result<Self, BraidError> {
        let n = labels.len();
        if coeff.len() != n || coeff.iter().any(|r| r.len() != n) {
            return Err(BraidError::BadShape(n));
        }
        for (i, row) in coeff.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    return Err(BraidError::ZeroCoefficient(i, j));
                }
            }
        }
        Ok(BraidedSpace { labels, coeff })
    }

    /// Braiding `c(v_i ⊗ v_j) = q^{m_ij} v_j ⊗ v_i` from an integer exponent matrix.
    pub fn from_exponents(exponents: &[Vec<i64>]) -> Result<Self, BraidError> {
        let labels = (1..=exponents.len()).map(|i| format!("v{i}")).collect();
        let coeff = exponents.iter().map(|r| r.iter().map(|&e| ScalarQ::q_pow(e)).collect()).collect();
        BraidedSpace::new(labels, coeff)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coeff(&self, i: usize, j: usize) -> &ScalarQ {
        &self.coeff[i][j]
    }

    /// The same space with the inverse braiding `c^{-1}` composed with the flip.
    pub fn inverse(&self) -> BraidedSpace {
        let n = self.rank();
        let coeff = (0..n).map(|i| (0..n).map(|j| self.coeff[j][i].inv()).collect()).collect();
        BraidedSpace { labels: self.labels.clone(), coeff }
    }

    /// The braiding as a general matrix on V⊗V.
    pub fn to_matrix(&self) -> MatrixBraiding {
        let n = self.rank();
        let mut m = vec![vec![ScalarQ::zero(); n * n]; n * n];
        for i in 0..n {
            for j in 0..n {
                // column i⊗j maps to row j⊗i
                m[j * n + i][i * n + j] = self.coeff[i][j].clone();
            }
        }
        MatrixBraiding { dim: n, matrix: m }
    }
}

/// Sparse element of the tensor algebra T(V).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<Word, ScalarQ>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn one() -> Self {
        TensorElement::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        TensorElement::monomial(w, ScalarQ::one())
    }

    pub fn monomial(w: Word, c: ScalarQ) -> Self {
        let mut t = TensorElement::zero();
        t.add_term(w, &c);
        t
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, ScalarQ)>>(terms: I) -> Self {
        let mut t = TensorElement::zero();
        for (w, c) in terms {
            t.add_term(w, &c);
        }
        t
    }

    pub fn add_term(&mut self, w: Word, c: &ScalarQ) {
        if c.is_zero() {
            return;
        }
        add_into(&mut self.terms, w, c);
    }

    pub fn terms(&self) -> &BTreeMap<Word, ScalarQ> {
        &self.terms
    }

    pub fn coeff(&self, w: &[usize]) -> ScalarQ {
        self.terms.get(w).cloned().unwrap_or_else(ScalarQ::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &ScalarQ) -> TensorElement {
        TensorElement::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        self.add(&o.scale(&ScalarQ::from_int(-1)))
    }

    /// Concatenation product in T(V).
    pub fn concat(&self, o: &TensorElement) -> TensorElement {
        let mut r = TensorElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                r.add_term(w, &(x * y));
            }
        }
        r
    }

    /// Multidegree when homogeneous.
    pub fn homogeneous_degree(&self, rank: usize) -> Option<Vec<usize>> {
        let mut it = self.terms.keys().map(|w| multidegree(w, rank));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*{}", word_label(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Diagonal type spaces are always braided, but the relation is checked
/// explicitly on every triple `v_i ⊗ v_j ⊗ v_k`: the Yang-Baxter identity
/// for `c` and for `c^{-1}`.
pub fn check_hexagon(space: &BraidedSpace) -> bool {
    let n = space.rank();
    for inv in [false, true] {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = TensorElement::word(vec![i, j, k]);
                    let s = if inv { -1 } else { 1 };
                    let lhs = braid_word_action(space, 3, &[s, 2 * s, s], &x);
                    let rhs = braid_word_action(space, 3, &[2 * s, s, 2 * s], &x);
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) if a == b => {}
                        _ => return false,
                    }
                }
            }
        }
    }
    true
}

/// Apply `σ_i^{±1}` (1-based `i`, acting on factors `i, i+1`) to an element of `V^{⊗n}`.
pub fn apply_generator(space: &BraidedSpace, n: usize, gen: i64, x: &TensorElement) -> Result<TensorElement, BraidError> {
    let i = gen.unsigned_abs() as usize;
    if gen == 0 || i >= n {
        return Err(BraidError::GeneratorOutOfRange { index: gen, n });
    }
    let mut out = TensorElement::zero();
    for (w, c) in x.terms() {
        if w.len() != n {
            return Err(BraidError::WrongLength { len: w.len(), n });
        }
        let (a, b) = (w[i - 1], w[i]);
        let factor = if gen > 0 { space.coeff(a, b).clone() } else { space.coeff(b, a).inv() };
        let mut nw = w.clone();
        nw.swap(i - 1, i);
        out.add_term(nw, &(c * &factor));
    }
    Ok(out)
}

/// The matrix of `σ_i` on `V^{⊗n}` as images of all basis words.
pub fn braid_generator(space: &BraidedSpace, n: usize, i: i64) -> Result<BTreeMap<Word, TensorElement>, BraidError> {
    if i == 0 || i.unsigned_abs() as usize >= n {
        return Err(BraidError::GeneratorOutOfRange { index: i, n });
    }
    let mut out = BTreeMap::new();
    for d in crate::nichols::multidegrees_of_total(space.rank(), n) {
        for w in words_of_multidegree(&d) {
            let img = apply_generator(space, n, i, &TensorElement::word(w.clone()))?;
            out.insert(w, img);
        }
    }
    Ok(out)
}

/// Apply a braid word left to right: the first letter acts first.
pub fn braid_word_action(space: &BraidedSpace, n: usize, word: &[i64], x: &TensorElement) -> Result<TensorElement, BraidError> {
    let mut cur = x.clone();
    for &g in word {
        cur = apply_generator(space, n, g, &cur)?;
    }
    Ok(cur)
}

/// Largest number of letters accepted by [`parse_braid_word`].
pub const MAX_BRAID_WORD_LEN: usize = 1024;

/// Parse a braid word such as `1,-2,1` or `[1, -2, 1]`; the empty string and
/// `[]` give the empty word.
pub fn parse_braid_word(s: &str) -> Result<Vec<i64>, BraidError> {
    let t = s.trim();
    let t = t.strip_prefix('[').map(|r| r.strip_suffix(']').ok_or_else(|| BraidError::Parse("unclosed [".into()))).transpose()?.unwrap_or(t);
    let t = t.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in t.split(',') {
        let p = part.trim();
        let v: i64 = p.parse().map_err(|_| BraidError::Parse(format!("bad generator {p:?}")))?;
        if v == 0 {
            return Err(BraidError::Parse("generator 0 is not allowed".into()));
        }
        if v.unsigned_abs() > 1 << 20 {
            return Err(BraidError::Parse(format!("generator {v} too large")));
        }
        out.push(v);
        if out.len() > MAX_BRAID_WORD_LEN {
            return Err(BraidError::Parse("braid word too long".into()));
        }
    }
    Ok(out)
}

/// General braiding on `V⊗V` given as a `dim^2 × dim^2` matrix in the basis
/// `v_i ⊗ v_j ↦ index i*dim + j` (columns are inputs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixBraiding {
    pub dim: usize,
    pub matrix: Vec<Vec<ScalarQ>>,
}

impl MatrixBraiding {
    fn apply_pair(&self, v: &[ScalarQ], pos: usize) -> Vec<ScalarQ> {
        // acts on tensor factors (pos, pos+1) of V^{⊗3}
        let d = self.dim;
        let mut out = vec![ScalarQ::zero(); d * d * d];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let digits = [idx / (d * d), (idx / d) % d, idx % d];
            let col = digits[pos] * d + digits[pos + 1];
            for row in 0..d * d {
                let m = &self.matrix[row][col];
                if m.is_zero() {
                    continue;
                }
                let mut nd = digits;
                nd[pos] = row / d;
                nd[pos + 1] = row % d;
                let j = nd[0] * d * d + nd[1] * d + nd[2];
                out[j] = &out[j] + &(c * m);
            }
        }
        out
    }

    /// `(c⊗1)(1⊗c)(c⊗1) = (1⊗c)(c⊗1)(1⊗c)` on every basis vector of `V^{⊗3}`.
    pub fn satisfies_braid_relation(&self) -> bool {
        let d = self.dim;
        (0..d * d * d).all(|k| {
            let mut e = vec![ScalarQ::zero(); d * d * d];
            e[k] = ScalarQ::one();
            let lhs = self.apply_pair(&self.apply_pair(&self.apply_pair(&e, 0), 1), 0);
            let rhs = self.apply_pair(&self.apply_pair(&self.apply_pair(&e, 1), 0), 1);
            lhs == rhs
        })
    }
}

/// Hexagon check for a general matrix braiding on a `dim`-dimensional space.
pub fn check_hexagon_matrix(c: &MatrixBraiding) -> bool {
    c.satisfies_braid_relation()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> BraidedSpace {
        BraidedSpace::from_exponents(&[vec![2]]).unwrap()
    }

    fn a2() -> BraidedSpace {
        BraidedSpace::from_exponents(&[vec![2, -1], vec![-1, 2]]).unwrap()
    }

    #[test]
    fn generator_values() {
        let x = TensorElement::word(vec![0, 0]);
        assert_eq!(apply_generator(&a1(), 2, 1, &x).unwrap(), x.scale(&ScalarQ::q_pow(2)));
        let y = TensorElement::word(vec![0, 1]);
        assert_eq!(
            apply_generator(&a2(), 2, 1, &y).unwrap(),
            TensorElement::monomial(vec![1, 0], ScalarQ::q_pow(-1))
        );
    }

    #[test]
    fn inverse_pair_is_identity() {
        let x = TensorElement::from_terms([(vec![0, 1, 1], ScalarQ::from_int(3)), (vec![1, 0, 1], ScalarQ::q_pow(5))]);
        assert_eq!(braid_word_action(&a2(), 3, &[1, -1, 2, -2], &x).unwrap(), x);
        assert_eq!(braid_word_action(&a2(), 3, &[], &x).unwrap(), x);
    }

    #[test]
    fn a1_braid_relation_value() {
        let x = TensorElement::word(vec![0, 0, 0]);
        let l = braid_word_action(&a1(), 3, &[1, 2, 1], &x).unwrap();
        let r = braid_word_action(&a1(), 3, &[2, 1, 2], &x).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, x.scale(&ScalarQ::q_pow(6)));
    }

    #[test]
    fn hexagon_diagonal() {
        assert!(check_hexagon(&a1()));
        assert!(check_hexagon(&a2()));
        assert!(check_hexagon_matrix(&a2().to_matrix()));
    }

    #[test]
    fn index_errors() {
        let x = TensorElement::word(vec![0, 0]);
        assert!(apply_generator(&a1(), 2, 2, &x).is_err());
        assert!(apply_generator(&a1(), 2, 0, &x).is_err());
        assert!(braid_generator(&a1(), 2, 3).is_err());
    }

    #[test]
    fn braid_word_parsing() {
        assert_eq!(parse_braid_word("[1,-2, 3]").unwrap(), vec![1, -2, 3]);
        assert_eq!(parse_braid_word("").unwrap(), Vec::<i64>::new());
        assert_eq!(parse_braid_word("[]").unwrap(), Vec::<i64>::new());
        assert!(parse_braid_word("1,0").is_err());
        assert!(parse_braid_word("[1,2").is_err());
        assert!(parse_braid_word("a").is_err());
    }
}
