//! The braided tensor bialgebra T(V) and its Nichols quotient, computed per
//! multidegree as the quotient by the radical of the extended pairing.

use crate::braided::{add_into, multidegree, words_of_multidegree, BraidedSpace, TensorElement, Word};
use crate::cartan::RootDatum;
use crate::linalg::{bareiss_pivots, clear_denominators, inverse_q};
use crate::scalar::{q_binomial_at, q_diff, ScalarQ};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// Default bound on the total degree of Gram computations.
pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Element of T(V)⊗T(V).
pub type TensorPair = BTreeMap<(Word, Word), ScalarQ>;

/// Errors from the Nichols layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NicholsError {
    #[error("total degree {degree} exceeds the configured limit {limit}")]
    DegreeLimit { degree: usize, limit: usize },
    #[error("pairing matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("pairing matrix is singular")]
    Degenerate,
    #[error("pairing matrix has size {got}, expected {expected}")]
    Shape { got: usize, expected: usize },
    #[error("Gram matrices by multidegree need a diagonal pairing")]
    NonDiagonal,
    #[error("multidegree {0:?} has the wrong number of entries")]
    BadMultidegree(Vec<usize>),
    #[error("Serre element needs distinct indices, got ({0},{0})")]
    SameIndex(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
}

/// All multidegrees in `N^rank` with the given total.
pub fn multidegrees_of_total(rank: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; rank];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
    }
    if rank == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// Symmetric, nondegenerate bilinear form on V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingSpec {
    values: Vec<Vec<ScalarQ>>,
}

impl PairingSpec {
    pub fn new(values: Vec<Vec<ScalarQ>>) -> Result<Self, NicholsError> {
        let n = values.len();
        for (i, row) in values.iter().enumerate() {
            if row.len() != n {
                return Err(NicholsError::Shape { got: row.len(), expected: n });
            }
            for j in 0..i {
                if values[i][j] != values[j][i] {
                    return Err(NicholsError::NotSymmetric(i, j));
                }
            }
        }
        if inverse_q(&values).is_none() {
            return Err(NicholsError::Degenerate);
        }
        Ok(PairingSpec { values })
    }

    /// `<v_i, v_j> = δ_ij / (q_i - q_i^{-1})` with `q_i = q^{(α_i,α_i)/2}`.
    pub fn standard(datum: &RootDatum) -> Self {
        let n = datum.rank();
        let values = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { q_diff(datum.symmetrizer(i)).inv() } else { ScalarQ::zero() })
                    .collect()
            })
            .collect();
        PairingSpec { values }
    }

    pub fn value(&self, i: usize, j: usize) -> &ScalarQ {
        &self.values[i][j]
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn diagonal(&self) -> Option<Vec<ScalarQ>> {
        let n = self.values.len();
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.values[i][j].is_zero() {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self.values[i][i].clone()).collect())
    }
}

/// Braided coproduct of a word: the letters at positions in a subset go to the
/// left factor, and every letter crossing to the left past an earlier letter of
/// the right factor picks up the braiding coefficient.
fn coproduct_word(space: &BraidedSpace, w: &[usize], out: &mut TensorPair, scale: &ScalarQ) {
    let n = w.len();
    assert!(n < 64, "word too long for subset enumeration");
    for mask in 0u64..(1u64 << n) {
        let mut c = scale.clone();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (b, &letter) in w.iter().enumerate() {
            if mask >> b & 1 == 1 {
                for &r in &right {
                    c = &c * space.coeff(r, letter);
                }
                left.push(letter);
            } else {
                right.push(letter);
            }
        }
        add_into(out, (left, right), &c);
    }
}

/// `Δ` on T(V), the algebra map for the braided product with `Δ(v) = v⊗1 + 1⊗v`.
pub fn braided_coproduct(space: &BraidedSpace, x: &TensorElement) -> TensorPair {
    let mut out = TensorPair::new();
    for (w, c) in x.terms() {
        coproduct_word(space, w, &mut out, c);
    }
    out
}

/// Counit: the coefficient of the empty word.
pub fn counit(x: &TensorElement) -> ScalarQ {
    x.coeff(&[])
}

/// Braided product on T(V)⊗T(V): `(a⊗b)(c⊗d) = a·c(b⊗c)·d`.
pub fn braided_tensor_product(space: &BraidedSpace, x: &TensorPair, y: &TensorPair) -> TensorPair {
    let mut out = TensorPair::new();
    for ((a, b), s) in x {
        for ((c, d), t) in y {
            let mut k = s * t;
            for &bl in b {
                for &cl in c {
                    k = &k * space.coeff(bl, cl);
                }
            }
            let mut l = a.clone();
            l.extend_from_slice(c);
            let mut r = b.clone();
            r.extend_from_slice(d);
            add_into(&mut out, (l, r), &k);
        }
    }
    out
}

/// Antipode of T(V) as the convolution inverse of the identity, computed from
/// `S = ηε + γ*S` with `γ = ηε - Id`, i.e. `S(w) = -Σ w' S(w'')` over the
/// coproduct terms whose left factor is nonempty.
pub fn tensor_antipode(space: &BraidedSpace, x: &TensorElement) -> TensorElement {
    let mut memo: HashMap<Word, TensorElement> = HashMap::new();
    let mut out = TensorElement::zero();
    for (w, c) in x.terms() {
        out = out.add(&antipode_word(space, w, &mut memo).scale(c));
    }
    out
}

fn antipode_word(space: &BraidedSpace, w: &[usize], memo: &mut HashMap<Word, TensorElement>) -> TensorElement {
    if w.is_empty() {
        return TensorElement::one();
    }
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let mut terms = TensorPair::new();
    coproduct_word(space, w, &mut terms, &ScalarQ::one());
    let mut acc = TensorElement::zero();
    for ((l, r), c) in &terms {
        if l.is_empty() {
            continue;
        }
        let s = antipode_word(space, r, memo);
        acc = acc.sub(&TensorElement::word(l.clone()).concat(&s).scale(c));
    }
    memo.insert(w.to_vec(), acc.clone());
    acc
}

/// Apply `μ∘(f⊗g)` to an element of T(V)⊗T(V).
pub fn multiply_pair<F, G>(x: &TensorPair, f: F, g: G) -> TensorElement
where
    F: Fn(&Word) -> TensorElement,
    G: Fn(&Word) -> TensorElement,
{
    let mut out = TensorElement::zero();
    for ((a, b), c) in x {
        out = out.add(&f(a).concat(&g(b)).scale(c));
    }
    out
}

/// Coefficients `k` with `Δ(z) = Σ_p k_p v_{z_p} ⊗ (z without p) + ...` in
/// `V ⊗ T(V)`: moving letter `p` to the front crosses all earlier letters.
fn skew_derivations(space: &BraidedSpace, z: &[usize]) -> Vec<(usize, ScalarQ, Word)> {
    let mut out = Vec::new();
    for p in 0..z.len() {
        let mut c = ScalarQ::one();
        for &zk in &z[..p] {
            c = &c * space.coeff(zk, z[p]);
        }
        let mut rest = z.to_vec();
        rest.remove(p);
        out.push((z[p], c, rest));
    }
    out
}

/// `<x, y>` extended by `<xy, z> = <x⊗y, Δz>` and `<x⊗y, a⊗b> = <x,a><y,b>`.
pub fn pairing_eval(space: &BraidedSpace, spec: &PairingSpec, x: &[usize], y: &[usize]) -> ScalarQ {
    let mut memo = HashMap::new();
    pairing_rec(space, spec, x, y, &mut memo)
}

fn pairing_rec(
    space: &BraidedSpace,
    spec: &PairingSpec,
    x: &[usize],
    y: &[usize],
    memo: &mut HashMap<(Word, Word), ScalarQ>,
) -> ScalarQ {
    if x.len() != y.len() {
        return ScalarQ::zero();
    }
    if x.is_empty() {
        return ScalarQ::one();
    }
    let key = (x.to_vec(), y.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut acc = ScalarQ::zero();
    for (letter, c, rest) in skew_derivations(space, y) {
        let p = spec.value(x[0], letter);
        if p.is_zero() {
            continue;
        }
        let sub = pairing_rec(space, spec, &x[1..], &rest, memo);
        if !sub.is_zero() {
            acc = &acc + &(&(p * &c) * &sub);
        }
    }
    memo.insert(key, acc.clone());
    acc
}

/// The pairing restricted to one multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGram {
    pub multidegree: Vec<usize>,
    /// Row and column words, in lexicographic order.
    pub words: Vec<Word>,
    pub matrix: Vec<Vec<ScalarQ>>,
}

/// Basis of the Nichols quotient in one multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NicholsBasis {
    pub multidegree: Vec<usize>,
    pub words: Vec<Word>,
    /// Indices into `words` of the selected basis words.
    pub basis: Vec<usize>,
    /// `reduction[w][b]`: coefficient of basis word `b` in the class of word `w`.
    pub reduction: Vec<Vec<ScalarQ>>,
}

struct DegreeData {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    // Gram matrix divided by Π <v_i,v_i>^{d_i}: Laurent polynomial entries
    reduced: Vec<Vec<ScalarQ>>,
    factor: ScalarQ,
    basis: Vec<usize>,
    basis_inv: Vec<Vec<ScalarQ>>,
    reductions: RwLock<HashMap<usize, Arc<Vec<(usize, ScalarQ)>>>>,
}

impl DegreeData {
    fn reduction(&self, w: usize) -> Arc<Vec<(usize, ScalarQ)>> {
        if let Some(r) = self.reductions.read().unwrap().get(&w) {
            return r.clone();
        }
        let r = if let Some(pos) = self.basis.iter().position(|&b| b == w) {
            vec![(pos, ScalarQ::one())]
        } else {
            // c = G[w,B] G[B,B]^{-1}
            let row: Vec<&ScalarQ> = self.basis.iter().map(|&b| &self.reduced[w][b]).collect();
            let mut out = Vec::new();
            for j in 0..self.basis.len() {
                let mut acc = ScalarQ::zero();
                for (k, x) in row.iter().enumerate() {
                    if !x.is_zero() && !self.basis_inv[k][j].is_zero() {
                        acc = &acc + &(*x * &self.basis_inv[k][j]);
                    }
                }
                if !acc.is_zero() {
                    out.push((j, acc));
                }
            }
            out
        };
        let r = Arc::new(r);
        self.reductions.write().unwrap().insert(w, r.clone());
        r
    }
}

/// Nichols algebra of a diagonal braided space, built lazily per multidegree.
/// Shared caches are internally synchronized; results do not depend on the
/// order in which multidegrees are requested.
pub struct NicholsAlgebra {
    space: BraidedSpace,
    spec: PairingSpec,
    diag: Vec<ScalarQ>,
    max_degree: usize,
    cache: RwLock<HashMap<Vec<usize>, Arc<DegreeData>>>,
}

impl NicholsAlgebra {
    pub fn new(space: BraidedSpace, spec: PairingSpec, max_degree: usize) -> Result<Self, NicholsError> {
        if spec.rank() != space.rank() {
            return Err(NicholsError::Shape { got: spec.rank(), expected: space.rank() });
        }
        let diag = spec.diagonal().ok_or(NicholsError::NonDiagonal)?;
        Ok(NicholsAlgebra { space, spec, diag, max_degree, cache: RwLock::new(HashMap::new()) })
    }

    /// The quantum datum's algebra: braiding `q^{(α_i,α_j)}` and the standard pairing.
    pub fn for_datum(datum: &RootDatum, max_degree: usize) -> Self {
        NicholsAlgebra::new(datum.braided_space(), PairingSpec::standard(datum), max_degree)
            .expect("standard pairing is diagonal and nondegenerate")
    }

    pub fn space(&self) -> &BraidedSpace {
        &self.space
    }

    pub fn spec(&self) -> &PairingSpec {
        &self.spec
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    fn check_degree(&self, d: &[usize]) -> Result<(), NicholsError> {
        if d.len() != self.rank() {
            return Err(NicholsError::BadMultidegree(d.to_vec()));
        }
        let total: usize = d.iter().sum();
        if total > self.max_degree {
            return Err(NicholsError::DegreeLimit { degree: total, limit: self.max_degree });
        }
        Ok(())
    }

    fn data(&self, d: &[usize]) -> Result<Arc<DegreeData>, NicholsError> {
        self.check_degree(d)?;
        if let Some(x) = self.cache.read().unwrap().get(d) {
            return Ok(x.clone());
        }
        let built = Arc::new(self.build(d)?);
        let mut w = self.cache.write().unwrap();
        Ok(w.entry(d.to_vec()).or_insert(built).clone())
    }

    fn build(&self, d: &[usize]) -> Result<DegreeData, NicholsError> {
        let words = words_of_multidegree(d);
        let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let n = words.len();
        let mut reduced = vec![vec![ScalarQ::zero(); n]; n];
        let mut factor = ScalarQ::one();
        for (i, &k) in d.iter().enumerate() {
            factor = &factor * &self.diag[i].pow(k as i64);
        }
        if words[0].is_empty() {
            reduced[0][0] = ScalarQ::one();
        } else {
            // L_d[x][z] = Σ_{p: z_p = x_0} (braiding of z_p to the front) L_{d - e}[x'][z \ p]
            let mut subs: HashMap<usize, Arc<DegreeData>> = HashMap::new();
            for l in 0..d.len() {
                if d[l] > 0 {
                    let mut e = d.to_vec();
                    e[l] -= 1;
                    subs.insert(l, self.data(&e)?);
                }
            }
            for (zi, z) in words.iter().enumerate() {
                let ders = skew_derivations(&self.space, z);
                for (xi, x) in words.iter().enumerate() {
                    let sub = &subs[&x[0]];
                    let xr = sub.index[&x[1..]];
                    let mut acc = ScalarQ::zero();
                    for (letter, c, rest) in &ders {
                        if *letter != x[0] {
                            continue;
                        }
                        let v = &sub.reduced[xr][sub.index[rest]];
                        if !v.is_zero() {
                            acc = &acc + &(c * v);
                        }
                    }
                    reduced[xi][zi] = acc;
                }
            }
        }
        let pivots = bareiss_pivots(clear_denominators(&reduced));
        let mut basis: Vec<usize> = pivots.iter().map(|p| p.0).collect();
        basis.sort_unstable();
        let sub: Vec<Vec<ScalarQ>> =
            basis.iter().map(|&i| basis.iter().map(|&j| reduced[i][j].clone()).collect()).collect();
        let basis_inv = inverse_q(&sub).expect("principal block on independent rows of a symmetric matrix");
        Ok(DegreeData { words, index, reduced, factor, basis, basis_inv, reductions: RwLock::new(HashMap::new()) })
    }

    pub fn gram_matrix(&self, d: &[usize]) -> Result<GradedGram, NicholsError> {
        let data = self.data(d)?;
        let matrix = data.reduced.iter().map(|r| r.iter().map(|x| x * &data.factor).collect()).collect();
        Ok(GradedGram { multidegree: d.to_vec(), words: data.words.clone(), matrix })
    }

    pub fn nichols_dim(&self, d: &[usize]) -> Result<usize, NicholsError> {
        Ok(self.data(d)?.basis.len())
    }

    pub fn basis_words(&self, d: &[usize]) -> Result<Vec<Word>, NicholsError> {
        let data = self.data(d)?;
        Ok(data.basis.iter().map(|&i| data.words[i].clone()).collect())
    }

    pub fn nichols_basis(&self, d: &[usize]) -> Result<NicholsBasis, NicholsError> {
        let data = self.data(d)?;
        let r = data.basis.len();
        let reduction = (0..data.words.len())
            .map(|w| {
                let mut row = vec![ScalarQ::zero(); r];
                for (j, c) in data.reduction(w).iter() {
                    row[*j] = c.clone();
                }
                row
            })
            .collect();
        Ok(NicholsBasis { multidegree: d.to_vec(), words: data.words.clone(), basis: data.basis.clone(), reduction })
    }

    /// Class of a single word as a combination of basis words.
    pub fn reduce_word(&self, w: &[usize]) -> Result<Vec<(Word, ScalarQ)>, NicholsError> {
        if w.iter().any(|&l| l >= self.rank()) {
            return Err(NicholsError::IndexOutOfRange(*w.iter().max().unwrap()));
        }
        let d = multidegree(w, self.rank());
        let data = self.data(&d)?;
        let wi = data.index[w];
        Ok(data.reduction(wi).iter().map(|(j, c)| (data.words[data.basis[*j]].clone(), c.clone())).collect())
    }

    /// Canonical representative in the span of basis words; zero exactly on the radical.
    pub fn reduce_mod_radical(&self, x: &TensorElement) -> Result<TensorElement, NicholsError> {
        let mut out = BTreeMap::new();
        for (w, c) in x.terms() {
            for (b, k) in self.reduce_word(w)? {
                add_into(&mut out, b, &(c * &k));
            }
        }
        Ok(TensorElement::from_terms(out))
    }

    pub fn pairing(&self, x: &[usize], y: &[usize]) -> ScalarQ {
        pairing_eval(&self.space, &self.spec, x, y)
    }

    /// Dimensions of all multidegrees up to the given total degree, computed in parallel.
    pub fn dims_up_to(&self, total: usize) -> Result<BTreeMap<Vec<usize>, usize>, NicholsError> {
        if total > self.max_degree {
            return Err(NicholsError::DegreeLimit { degree: total, limit: self.max_degree });
        }
        let all: Vec<Vec<usize>> = (0..=total).flat_map(|t| multidegrees_of_total(self.rank(), t)).collect();
        // lower degrees first so the parallel pass mostly hits the cache
        for t in 0..=total {
            multidegrees_of_total(self.rank(), t)
                .par_iter()
                .map(|d| self.data(d).map(|_| ()))
                .collect::<Result<Vec<()>, _>>()?;
        }
        all.into_iter().map(|d| self.nichols_dim(&d).map(|n| (d, n))).collect()
    }
}

/// Quantum Serre element `Σ_k (-1)^k [1-a_ij choose k]_{q_i} v_i^{1-a_ij-k} v_j v_i^k`.
pub fn serre_element(datum: &RootDatum, i: usize, j: usize) -> Result<TensorElement, NicholsError> {
    if i == j {
        return Err(NicholsError::SameIndex(i));
    }
    if i >= datum.rank() || j >= datum.rank() {
        return Err(NicholsError::IndexOutOfRange(i.max(j)));
    }
    let m = 1 - datum.cartan_entry(i, j);
    let di = datum.symmetrizer(i);
    let mut out = TensorElement::zero();
    for k in 0..=m {
        let mut c = q_binomial_at(m, k, di).expect("0 <= k <= m");
        if k % 2 == 1 {
            c = -c;
        }
        let mut w = vec![i; (m - k) as usize];
        w.push(j);
        w.extend(std::iter::repeat(i).take(k as usize));
        out.add_term(w, &c);
    }
    Ok(out)
}
