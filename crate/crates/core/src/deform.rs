//! Truncated ℏ-adic deformation theory of U(g): PBW windows, Chevalley-Eilenberg
//! differentials in low degree, the coboundary solver, the order-by-order
//! conjugator of the rigidity statements and trivialization of deformed
//! multiplications.
//!
//! Deformation maps are called `d_i` (on generators) and `β_n` (gauge
//! corrections) to keep them apart from roots.

use crate::cartan::RootDatum;
use crate::linalg::{solve_rational, RationalSolve, SparseVec};
use crate::scalar::{rat, vp_rational};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

/// PBW exponent vector over the ordered Lie basis.
pub type Mono = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformError {
    #[error("PBW degree {degree} exceeds the window {limit}")]
    Window { degree: usize, limit: usize },
    #[error("no classical Lie algebra available for this datum (supported: A1, A1xA1, A2)")]
    UnsupportedDatum,
    #[error("cochain degree {0} not supported (0, 1 or 2)")]
    CochainDegree(usize),
    #[error("cochain is not antisymmetric at {0:?}")]
    NotAntisymmetric(Vec<usize>),
    #[error("cochain is missing the value at {0:?}")]
    MissingValue(Vec<usize>),
    #[error("not a cocycle")]
    NotCocycle,
    #[error("no solution within the search window")]
    NoSolution,
    #[error("maps differ modulo h")]
    NotEqualModH,
    #[error("obstructed at order {order}: {reason}")]
    ObstructedAtOrder { order: usize, reason: Obstruction },
    #[error("input has {got} coefficients, expected {expected}")]
    Shape { got: usize, expected: usize },
    #[error("order-zero multiplication is not the PBW product at {0}")]
    NotStandard(String),
    #[error("independent verification failed at order {0}")]
    VerificationFailed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    NotCocycle,
    NoSolution,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obstruction::NotCocycle => "not a cocycle",
            Obstruction::NoSolution => "no solution within the search window",
        })
    }
}

/// Element of U(g) in the PBW basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UgElement {
    terms: BTreeMap<Mono, BigRational>,
}

fn add_rat(map: &mut BTreeMap<Mono, BigRational>, k: Mono, c: &BigRational) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(k).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        // re-borrow to remove
        let key: Vec<Mono> = map.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
        for k in key {
            map.remove(&k);
        }
    }
}

pub fn mono_degree(m: &[u32]) -> usize {
    m.iter().map(|&x| x as usize).sum()
}

impl UgElement {
    pub fn zero() -> Self {
        UgElement::default()
    }

    pub fn monomial(m: Mono, c: BigRational) -> Self {
        let mut x = UgElement::zero();
        x.add_term(m, &c);
        x
    }

    pub fn add_term(&mut self, m: Mono, c: &BigRational) {
        add_rat(&mut self.terms, m, c);
    }

    pub fn terms(&self) -> &BTreeMap<Mono, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u32]) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| mono_degree(m)).max().unwrap_or(0)
    }

    pub fn add(&self, o: &UgElement) -> UgElement {
        let mut x = self.clone();
        for (m, c) in &o.terms {
            x.add_term(m.clone(), c);
        }
        x
    }

    pub fn sub(&self, o: &UgElement) -> UgElement {
        let mut x = self.clone();
        for (m, c) in &o.terms {
            x.add_term(m.clone(), &-c);
        }
        x
    }

    pub fn scale(&self, c: &BigRational) -> UgElement {
        if c.is_zero() {
            return UgElement::zero();
        }
        UgElement { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Smallest `v_p` among the coefficients; `None` for zero.
    pub fn min_valuation(&self, p: i64) -> Option<i64> {
        self.terms.values().filter_map(|c| vp_rational(c, p)).min()
    }

    /// Render with the given basis names, e.g. `2*F*E^2 - 1/2*H`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut word: Vec<String> = Vec::new();
            for (k, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => word.push(names[k].clone()),
                    _ => word.push(format!("{}^{e}", names[k])),
                }
            }
            let neg = c < &BigRational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if word.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&word.join("*"));
            } else {
                out.push_str(&format!("{a}*{}", word.join("*")));
            }
        }
        out
    }
}

/// Finite-dimensional Lie algebra given by structure constants on an ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    // bracket[i][j] = [x_i, x_j] as (k, c) pairs
    bracket: Vec<Vec<Vec<(usize, BigRational)>>>,
}

type Matrix = Vec<Vec<i64>>;

fn mat_unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = vec![vec![0; n]; n];
    m[i][j] = 1;
    m
}

fn mat_comm(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
        }
    }
    c
}

fn mat_block(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut m = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    m
}

impl LieAlgebra {
    /// Linear span of the given matrices, closed under commutators.
    pub fn from_matrices(names: Vec<String>, mats: Vec<Matrix>) -> Self {
        let dim = mats.len();
        let n = mats[0].len();
        // equations: entries of Σ c_k M_k = target
        let rows: Vec<SparseVec> = (0..n * n)
            .map(|e| {
                let (i, j) = (e / n, e % n);
                mats.iter().enumerate().filter(|(_, m)| m[i][j] != 0).map(|(k, m)| (k, rat(m[i][j]))).collect()
            })
            .collect();
        let mut bracket = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let c = mat_comm(&mats[a], &mats[b]);
                let rhs: Vec<BigRational> = (0..n * n).map(|e| rat(c[e / n][e % n])).collect();
                match solve_rational(&rows, &rhs, dim) {
                    RationalSolve::Solved(x) => {
                        bracket[a][b] = x.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                    }
                    RationalSolve::Inconsistent => panic!("matrices do not span a Lie algebra"),
                }
            }
        }
        LieAlgebra { names, bracket }
    }

    /// sl2 with ordered basis `F, H, E`.
    pub fn sl2() -> Self {
        let h = vec![vec![1, 0], vec![0, -1]];
        LieAlgebra::from_matrices(
            vec!["F".into(), "H".into(), "E".into()],
            vec![mat_unit(2, 1, 0), h, mat_unit(2, 0, 1)],
        )
    }

    /// Chevalley basis of the split Lie algebra of a supported datum, ordered
    /// negative root vectors, Cartan, positive root vectors.
    pub fn from_datum(datum: &RootDatum) -> Result<Self, DeformError> {
        let c = datum.cartan_matrix();
        if c == [vec![2]] {
            return Ok(LieAlgebra::sl2());
        }
        if c == [vec![2, 0], vec![0, 2]] {
            let z = vec![vec![0; 2]; 2];
            let h = vec![vec![1, 0], vec![0, -1]];
            let e = mat_unit(2, 0, 1);
            let f = mat_unit(2, 1, 0);
            let names = ["F1", "F2", "H1", "H2", "E1", "E2"].map(String::from).to_vec();
            let mats = vec![
                mat_block(&[f.clone(), z.clone()]),
                mat_block(&[z.clone(), f]),
                mat_block(&[h.clone(), z.clone()]),
                mat_block(&[z.clone(), h]),
                mat_block(&[e.clone(), z.clone()]),
                mat_block(&[z, e]),
            ];
            return Ok(LieAlgebra::from_matrices(names, mats));
        }
        if c == [vec![2, -1], vec![-1, 2]] {
            let d = |a: i64, b: i64, c: i64| vec![vec![a, 0, 0], vec![0, b, 0], vec![0, 0, c]];
            let names = ["F1", "F2", "F12", "H1", "H2", "E1", "E2", "E12"].map(String::from).to_vec();
            let mats = vec![
                mat_unit(3, 1, 0),
                mat_unit(3, 2, 1),
                mat_unit(3, 2, 0),
                d(1, -1, 0),
                d(0, 1, -1),
                mat_unit(3, 0, 1),
                mat_unit(3, 1, 2),
                mat_unit(3, 0, 2),
            ];
            return Ok(LieAlgebra::from_matrices(names, mats));
        }
        Err(DeformError::UnsupportedDatum)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, BigRational)] {
        &self.bracket[i][j]
    }

    /// Index of a basis element by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// U(g) restricted to PBW degree at most `max_degree`; products leaving the
/// window are errors.
pub struct TruncatedUg {
    lie: LieAlgebra,
    max_degree: usize,
    memo: RwLock<HashMap<(usize, Mono), Arc<UgElement>>>,
}

impl TruncatedUg {
    pub fn new(lie: LieAlgebra, max_degree: usize) -> Self {
        TruncatedUg { lie, max_degree, memo: RwLock::new(HashMap::new()) }
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn unit_mono(&self) -> Mono {
        vec![0; self.dim()]
    }

    pub fn gen_mono(&self, i: usize) -> Mono {
        let mut m = self.unit_mono();
        m[i] = 1;
        m
    }

    pub fn one(&self) -> UgElement {
        UgElement::monomial(self.unit_mono(), BigRational::one())
    }

    pub fn generator(&self, i: usize) -> UgElement {
        UgElement::monomial(self.gen_mono(i), BigRational::one())
    }

    /// Element of g from basis coefficients.
    pub fn lie_element(&self, coeffs: &[(usize, BigRational)]) -> UgElement {
        let mut x = UgElement::zero();
        for (i, c) in coeffs {
            x.add_term(self.gen_mono(*i), c);
        }
        x
    }

    /// All PBW monomials of degree at most `d`, by degree then exponent vector.
    pub fn monomials_up_to(&self, d: usize) -> Vec<Mono> {
        let n = self.dim();
        let mut out = Vec::new();
        for t in 0..=d {
            let mut level = Vec::new();
            fn rec(i: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
                if i + 1 == cur.len() {
                    cur[i] = left;
                    out.push(cur.clone());
                    return;
                }
                for k in 0..=left {
                    cur[i] = k;
                    rec(i + 1, left - k, cur, out);
                }
            }
            rec(0, t as u32, &mut vec![0; n], &mut level);
            level.sort();
            out.extend(level);
        }
        out
    }

    fn check(&self, degree: usize) -> Result<(), DeformError> {
        if degree > self.max_degree {
            return Err(DeformError::Window { degree, limit: self.max_degree });
        }
        Ok(())
    }

    /// `x_i · x^m` straightened into PBW order.
    fn gen_times_mono(&self, i: usize, m: &[u32]) -> Result<Arc<UgElement>, DeformError> {
        self.check(mono_degree(m) + 1)?;
        let key = (i, m.to_vec());
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let first = m.iter().position(|&e| e > 0);
        let out = match first {
            Some(j) if j < i => {
                // x_i x_j^{m_j} R = x_j (x_i x_j^{m_j-1} R) + [x_i, x_j] x_j^{m_j-1} R
                let mut rest = m.to_vec();
                rest[j] -= 1;
                let inner = self.gen_times_mono(i, &rest)?;
                let mut acc = UgElement::zero();
                for (mm, c) in inner.terms() {
                    let t = self.gen_times_mono(j, mm)?;
                    acc = acc.add(&t.scale(c));
                }
                for (k, c) in self.lie.bracket(i, j) {
                    let t = self.gen_times_mono(*k, &rest)?;
                    acc = acc.add(&t.scale(c));
                }
                acc
            }
            _ => {
                let mut mm = m.to_vec();
                mm[i] += 1;
                UgElement::monomial(mm, BigRational::one())
            }
        };
        let out = Arc::new(out);
        self.memo.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Product in PBW normal form; errors if a pair of terms exceeds the window.
    pub fn mul(&self, a: &UgElement, b: &UgElement) -> Result<UgElement, DeformError> {
        let mut out = UgElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.check(mono_degree(ma) + mono_degree(mb))?;
                let mut cur = UgElement::monomial(mb.clone(), ca * cb);
                for k in (0..ma.len()).rev() {
                    for _ in 0..ma[k] {
                        let mut next = UgElement::zero();
                        for (m, c) in cur.terms() {
                            next = next.add(&self.gen_times_mono(k, m)?.scale(c));
                        }
                        cur = next;
                    }
                }
                out = out.add(&cur);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, a: &UgElement, b: &UgElement) -> Result<UgElement, DeformError> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }

    /// Product of monomials.
    pub fn mono_mul(&self, a: &[u32], b: &[u32]) -> Result<UgElement, DeformError> {
        self.mul(&UgElement::monomial(a.to_vec(), BigRational::one()), &UgElement::monomial(b.to_vec(), BigRational::one()))
    }

    /// `[x_i, x_j]` as an element of U(g).
    pub fn bracket_element(&self, i: usize, j: usize) -> UgElement {
        self.lie_element(self.lie.bracket(i, j))
    }
}

/// Antisymmetric n-cochain `g^n → U(g)`, stored on strictly increasing index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: BTreeMap<Vec<usize>, UgElement>,
}

fn increasing_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            let start = t.last().map_or(0, |&x| x + 1);
            for v in start..dim {
                let mut s = t.clone();
                s.push(v);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain { degree, values: BTreeMap::new() }
    }

    /// From values on all ordered tuples; checks antisymmetry.
    pub fn from_ordered(degree: usize, dim: usize, values: &BTreeMap<Vec<usize>, UgElement>) -> Result<Self, DeformError> {
        if degree > 2 {
            return Err(DeformError::CochainDegree(degree));
        }
        let mut out = BTreeMap::new();
        let mut all = vec![Vec::new()];
        for _ in 0..degree {
            all = all.iter().flat_map(|t| (0..dim).map(move |v| [t.clone(), vec![v]].concat())).collect();
        }
        for t in &all {
            let v = values.get(t).cloned().unwrap_or_default();
            let mut s = t.clone();
            let sign = sort_sign(&mut s);
            let repeated = s.windows(2).any(|w| w[0] == w[1]);
            if repeated {
                if !v.is_zero() {
                    return Err(DeformError::NotAntisymmetric(t.clone()));
                }
                continue;
            }
            let canon = values.get(&s).cloned().unwrap_or_default();
            if v != canon.scale(&rat(sign)) {
                return Err(DeformError::NotAntisymmetric(t.clone()));
            }
            if !canon.is_zero() {
                out.insert(s, canon);
            }
        }
        Ok(Cochain { degree, values: out })
    }

    /// Value on any tuple through antisymmetry.
    pub fn value(&self, t: &[usize]) -> UgElement {
        let mut s = t.to_vec();
        let sign = sort_sign(&mut s);
        if s.windows(2).any(|w| w[0] == w[1]) {
            return UgElement::zero();
        }
        self.values.get(&s).map(|v| v.scale(&rat(sign))).unwrap_or_default()
    }

    /// Value with the first argument a Lie element given by coefficients.
    fn value_lin(&self, first: &[(usize, BigRational)], rest: &[usize]) -> UgElement {
        let mut acc = UgElement::zero();
        for (k, c) in first {
            let mut t = vec![*k];
            t.extend_from_slice(rest);
            acc = acc.add(&self.value(&t).scale(c));
        }
        acc
    }
}

fn sort_sign(s: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 0..s.len() {
        for j in 0..s.len() - 1 - i {
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// `x·m = [d0(x), m]`.
fn act(ug: &TruncatedUg, action: &[UgElement], i: usize, m: &UgElement) -> Result<UgElement, DeformError> {
    ug.commutator(&action[i], m)
}

/// Chevalley-Eilenberg differential
/// `δf(x_1..x_{n+1}) = Σ_i (-1)^{i+1} x_i·f(..x̂_i..) + Σ_{i<j} (-1)^{i+j} f([x_i,x_j], ..x̂_i..x̂_j..)`
/// with values in U(g) under `x·m = [d0(x), m]`; `action[i] = d0(x_i)`.
pub fn cochain_differential(ug: &TruncatedUg, action: &[UgElement], f: &Cochain) -> Result<Cochain, DeformError> {
    let n = f.degree;
    if n > 2 {
        return Err(DeformError::CochainDegree(n));
    }
    if action.len() != ug.dim() {
        return Err(DeformError::Shape { got: action.len(), expected: ug.dim() });
    }
    let mut out = BTreeMap::new();
    for t in increasing_tuples(ug.dim(), n + 1) {
        let mut acc = UgElement::zero();
        for i in 0..=n {
            let mut rest = t.clone();
            rest.remove(i);
            let term = act(ug, action, t[i], &f.value(&rest))?;
            acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let mut rest = t.clone();
                rest.remove(j);
                rest.remove(i);
                let term = f.value_lin(ug.lie().bracket(t[i], t[j]), &rest);
                acc = if (i + j) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
        }
        if !acc.is_zero() {
            out.insert(t, acc);
        }
    }
    Ok(Cochain { degree: n + 1, values: out })
}

/// Does `f([x,y]) = [d0 x, f y] - [d0 y, f x]` hold on all basis pairs?
pub fn is_one_cocycle(ug: &TruncatedUg, action: &[UgElement], f: &[UgElement]) -> Result<bool, DeformError> {
    let dim = ug.dim();
    for i in 0..dim {
        for j in i + 1..dim {
            let mut lhs = UgElement::zero();
            for (k, c) in ug.lie().bracket(i, j) {
                lhs = lhs.add(&f[*k].scale(c));
            }
            let rhs = act(ug, action, i, &f[j])?.sub(&act(ug, action, j, &f[i])?);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Solve `[d0(x_i), u] = f(x_i)` for `u` among PBW monomials of degree at most
/// `search_degree`. The basic solution with leftmost pivots is returned, so
/// low-degree monomials are preferred.
pub fn coboundary_solve(ug: &TruncatedUg, action: &[UgElement], f: &[UgElement], search_degree: usize) -> Result<UgElement, DeformError> {
    if f.len() != ug.dim() || action.len() != ug.dim() {
        return Err(DeformError::Shape { got: f.len(), expected: ug.dim() });
    }
    if !is_one_cocycle(ug, action, f)? {
        return Err(DeformError::NotCocycle);
    }
    let cols = ug.monomials_up_to(search_degree);
    let mut rows: BTreeMap<(usize, Mono), SparseVec> = BTreeMap::new();
    for (ci, m) in cols.iter().enumerate() {
        let me = UgElement::monomial(m.clone(), BigRational::one());
        for i in 0..ug.dim() {
            for (rm, c) in act(ug, action, i, &me)?.terms() {
                rows.entry((i, rm.clone())).or_default().insert(ci, c.clone());
            }
        }
    }
    for (i, fi) in f.iter().enumerate() {
        for rm in fi.terms().keys() {
            rows.entry((i, rm.clone())).or_default();
        }
    }
    let keys: Vec<(usize, Mono)> = rows.keys().cloned().collect();
    let mat: Vec<SparseVec> = rows.into_values().collect();
    let rhs: Vec<BigRational> = keys.iter().map(|(i, m)| f[*i].coeff(m)).collect();
    match solve_rational(&mat, &rhs, cols.len()) {
        RationalSolve::Solved(x) => {
            let mut u = UgElement::zero();
            for (ci, v) in x.iter().enumerate() {
                u.add_term(cols[ci].clone(), v);
            }
            Ok(u)
        }
        RationalSolve::Inconsistent => Err(DeformError::NoSolution),
    }
}

/// `Σ u_i h^i` with `u_0 = 1` for gauge elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesElement {
    pub coeffs: Vec<UgElement>,
}

/// Linear map given on a set of basis monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearMap {
    pub cols: BTreeMap<Mono, UgElement>,
}

impl LinearMap {
    pub fn apply(&self, x: &UgElement) -> UgElement {
        let mut out = UgElement::zero();
        for (m, c) in x.terms() {
            if let Some(v) = self.cols.get(m) {
                out = out.add(&v.scale(c));
            }
        }
        out
    }

    pub fn identity(monos: &[Mono]) -> Self {
        LinearMap { cols: monos.iter().map(|m| (m.clone(), UgElement::monomial(m.clone(), BigRational::one()))).collect() }
    }

    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        LinearMap { cols: inner.cols.iter().map(|(m, v)| (m.clone(), self.apply(v))).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.values().all(UgElement::is_zero)
    }
}

/// `Σ d_i h^i` of linear maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMap {
    pub coeffs: Vec<LinearMap>,
}

impl SeriesMap {
    /// Map given by its values on the Lie generators: `values[i][j] = d_i(x_j)`.
    pub fn on_generators(ug: &TruncatedUg, values: Vec<Vec<UgElement>>) -> Self {
        SeriesMap {
            coeffs: values
                .into_iter()
                .map(|row| LinearMap { cols: row.into_iter().enumerate().map(|(j, v)| (ug.gen_mono(j), v)).collect() })
                .collect(),
        }
    }

    /// `d_0 = inclusion of g`, higher terms zero, up to order `n`.
    pub fn inclusion(ug: &TruncatedUg, n: usize) -> Self {
        let mut values = vec![(0..ug.dim()).map(|j| ug.generator(j)).collect::<Vec<_>>()];
        for _ in 0..n {
            values.push(vec![UgElement::zero(); ug.dim()]);
        }
        SeriesMap::on_generators(ug, values)
    }

    fn gen_series(&self, ug: &TruncatedUg, j: usize, n: usize) -> Vec<UgElement> {
        let key = ug.gen_mono(j);
        (0..=n).map(|i| self.coeffs.get(i).and_then(|m| m.cols.get(&key)).cloned().unwrap_or_default()).collect()
    }
}

fn series_mul(ug: &TruncatedUg, a: &[UgElement], b: &[UgElement], n: usize) -> Result<Vec<UgElement>, DeformError> {
    let mut out = vec![UgElement::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&ug.mul(x, y)?);
        }
    }
    Ok(out)
}

/// Inverse of a series with constant term 1.
fn series_inverse(ug: &TruncatedUg, a: &[UgElement], n: usize) -> Result<Vec<UgElement>, DeformError> {
    let mut g = vec![ug.one()];
    for k in 1..=n {
        let mut acc = UgElement::zero();
        for j in 1..=k {
            if let Some(aj) = a.get(j) {
                if !aj.is_zero() && !g[k - j].is_zero() {
                    acc = acc.sub(&ug.mul(aj, &g[k - j])?);
                }
            }
        }
        g.push(acc);
    }
    Ok(g)
}

/// `F x F^{-1}` for a series `F` with constant term 1 and series values on generators.
pub fn conjugate_series(ug: &TruncatedUg, f: &SeriesElement, d: &SeriesMap, n: usize) -> Result<SeriesMap, DeformError> {
    let finv = series_inverse(ug, &f.coeffs, n)?;
    let mut values = vec![Vec::new(); n + 1];
    for j in 0..ug.dim() {
        let s = d.gen_series(ug, j, n);
        let c = series_mul(ug, &series_mul(ug, &f.coeffs, &s, n)?, &finv, n)?;
        for (i, v) in c.into_iter().enumerate() {
            values[i].push(v);
        }
    }
    Ok(SeriesMap::on_generators(ug, values))
}

/// One gauge step of the iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeStep {
    pub order: usize,
    pub u: UgElement,
}

/// Result of [`rigidity_conjugator`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityResult {
    pub conjugator: SeriesElement,
    pub steps: Vec<GaugeStep>,
}

/// Conjugator `F` with `F d(x) F^{-1} ≡ d'(x)` modulo `h^{n+1}` on the
/// generators, built as `F_i = (1 + u_i h^i) F_{i-1}` where `[d_0(x), u_i]`
/// equals the order-i defect of `d'(x) - F_{i-1} d(x) F_{i-1}^{-1}`. Each `u_i`
/// is searched among PBW monomials of degree at most `search_degree`. The
/// result is checked by recomputing `F·d(x) - d'(x)·F`.
pub fn rigidity_conjugator(ug: &TruncatedUg, d: &SeriesMap, dp: &SeriesMap, n: usize, search_degree: usize) -> Result<RigidityResult, DeformError> {
    let dim = ug.dim();
    for j in 0..dim {
        if d.gen_series(ug, j, 0)[0] != dp.gen_series(ug, j, 0)[0] {
            return Err(DeformError::NotEqualModH);
        }
    }
    let d0: Vec<UgElement> = (0..dim).map(|j| d.gen_series(ug, j, 0)[0].clone()).collect();
    let mut f = vec![ug.one()];
    f.resize(n + 1, UgElement::zero());
    let mut cur = d.clone();
    let mut steps = Vec::new();
    for order in 1..=n {
        let a: Vec<UgElement> =
            (0..dim).map(|j| dp.gen_series(ug, j, n)[order].sub(&cur.gen_series(ug, j, n)[order])).collect();
        let u = match coboundary_solve(ug, &d0, &a, search_degree) {
            Ok(u) => u,
            Err(DeformError::NotCocycle) => return Err(DeformError::ObstructedAtOrder { order, reason: Obstruction::NotCocycle }),
            Err(DeformError::NoSolution) => return Err(DeformError::ObstructedAtOrder { order, reason: Obstruction::NoSolution }),
            Err(e) => return Err(e),
        };
        // [d0 x, u] = a means the step is conjugation by (1 - u h^order)
        let u = u.scale(&rat(-1));
        steps.push(GaugeStep { order, u: u.clone() });
        if u.is_zero() {
            continue;
        }
        let mut g = vec![ug.one()];
        g.resize(order + 1, UgElement::zero());
        g[order] = u;
        f = series_mul(ug, &g, &f, n)?;
        cur = conjugate_series(ug, &SeriesElement { coeffs: g }, &cur, n)?;
    }
    let conjugator = SeriesElement { coeffs: f };
    if let Some(order) = conjugation_residual_order(ug, &conjugator, d, dp, n)? {
        return Err(DeformError::VerificationFailed(order));
    }
    Ok(RigidityResult { conjugator, steps })
}

/// First order at which `F·d(x) - d'(x)·F` is nonzero modulo `h^{n+1}`, if any.
pub fn conjugation_residual_order(ug: &TruncatedUg, f: &SeriesElement, d: &SeriesMap, dp: &SeriesMap, n: usize) -> Result<Option<usize>, DeformError> {
    let mut first: Option<usize> = None;
    for j in 0..ug.dim() {
        let lhs = series_mul(ug, &f.coeffs, &d.gen_series(ug, j, n), n)?;
        let rhs = series_mul(ug, &dp.gen_series(ug, j, n), &f.coeffs, n)?;
        for k in 0..=n {
            if lhs[k] != rhs[k] {
                first = Some(first.map_or(k, |f| f.min(k)));
            }
        }
    }
    Ok(first)
}

/// Bilinear map on window monomial pairs.
pub type BilinearMap = BTreeMap<(Mono, Mono), UgElement>;

/// All monomial pairs with degree sum at most the window.
pub fn window_pairs(ug: &TruncatedUg) -> Vec<(Mono, Mono)> {
    let monos = ug.monomials_up_to(ug.max_degree());
    let mut out = Vec::new();
    for a in &monos {
        for b in &monos {
            if mono_degree(a) + mono_degree(b) <= ug.max_degree() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// The undeformed product on the window.
pub fn standard_multiplication(ug: &TruncatedUg) -> Result<BilinearMap, DeformError> {
    window_pairs(ug).into_iter().map(|(a, b)| ug.mono_mul(&a, &b).map(|v| ((a, b), v))).collect()
}

fn bilinear_apply(mu: &BilinearMap, x: &UgElement, y: &UgElement) -> Result<UgElement, DeformError> {
    let mut out = UgElement::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let v = mu
                .get(&(a.clone(), b.clone()))
                .ok_or(DeformError::Window { degree: mono_degree(a) + mono_degree(b), limit: 0 })?;
            out = out.add(&v.scale(&(ca * cb)));
        }
    }
    Ok(out)
}

/// Series of linear maps on all window monomials.
fn series_map_apply(v: &[LinearMap], x: &UgElement) -> Vec<UgElement> {
    v.iter().map(|m| m.apply(x)).collect()
}

fn series_map_inverse(v: &[LinearMap], monos: &[Mono]) -> Vec<LinearMap> {
    let mut w = vec![LinearMap::identity(monos)];
    for k in 1..v.len() {
        let mut cols = BTreeMap::new();
        for m in monos {
            let mut acc = UgElement::zero();
            for j in 1..=k {
                let inner = w[k - j].cols.get(m).cloned().unwrap_or_default();
                acc = acc.sub(&v[j].apply(&inner));
            }
            cols.insert(m.clone(), acc);
        }
        w.push(LinearMap { cols });
    }
    w
}

/// `V(μ(V^{-1}x, V^{-1}y))` modulo `h^{n+1}` on all window pairs.
fn transport(ug: &TruncatedUg, mu: &[BilinearMap], v: &[LinearMap], n: usize) -> Result<Vec<BilinearMap>, DeformError> {
    let monos = ug.monomials_up_to(ug.max_degree());
    let w = series_map_inverse(v, &monos);
    let mut out = vec![BilinearMap::new(); n + 1];
    for (a, b) in window_pairs(ug) {
        let xa = series_map_apply(&w, &UgElement::monomial(a.clone(), BigRational::one()));
        let yb = series_map_apply(&w, &UgElement::monomial(b.clone(), BigRational::one()));
        let mut prod = vec![UgElement::zero(); n + 1];
        for (bi, m) in mu.iter().enumerate().take(n + 1) {
            for (c, x) in xa.iter().enumerate() {
                for (e, y) in yb.iter().enumerate() {
                    if bi + c + e <= n && !x.is_zero() && !y.is_zero() {
                        prod[bi + c + e] = prod[bi + c + e].add(&bilinear_apply(m, x, y)?);
                    }
                }
            }
        }
        let mut res = vec![UgElement::zero(); n + 1];
        for (i, vi) in v.iter().enumerate() {
            for (k, p) in prod.iter().enumerate() {
                if i + k <= n {
                    res[i + k] = res[i + k].add(&vi.apply(p));
                }
            }
        }
        for (k, r) in res.into_iter().enumerate() {
            out[k].insert((a.clone(), b.clone()), r);
        }
    }
    Ok(out)
}

/// Hochschild 2-cocycle identity `x f(y,z) - f(xy,z) + f(x,yz) - f(x,y) z = 0`
/// on all monomial triples inside the window.
pub fn is_hochschild_cocycle(ug: &TruncatedUg, f: &BilinearMap) -> Result<bool, DeformError> {
    let monos = ug.monomials_up_to(ug.max_degree());
    let d = ug.max_degree();
    for x in &monos {
        for y in &monos {
            if mono_degree(x) + mono_degree(y) > d {
                continue;
            }
            for z in &monos {
                if mono_degree(x) + mono_degree(y) + mono_degree(z) > d {
                    continue;
                }
                let one = BigRational::one();
                let xe = UgElement::monomial(x.clone(), one.clone());
                let ye = UgElement::monomial(y.clone(), one.clone());
                let ze = UgElement::monomial(z.clone(), one);
                let t1 = ug.mul(&xe, &bilinear_apply(f, &ye, &ze)?)?;
                let t2 = bilinear_apply(f, &ug.mul(&xe, &ye)?, &ze)?;
                let t3 = bilinear_apply(f, &xe, &ug.mul(&ye, &ze)?)?;
                let t4 = ug.mul(&bilinear_apply(f, &xe, &ye)?, &ze)?;
                if !t1.sub(&t2).add(&t3).sub(&t4).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// One order of [`mult_trivialize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivializeStep {
    pub order: usize,
    /// Number of nonzero coefficients of `β_n`.
    pub support: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivializeResult {
    pub gauge: SeriesMap,
    pub steps: Vec<TrivializeStep>,
}

/// Unknown coordinates of a filtered `β`: `β(m)` in the span of monomials of
/// degree at most `deg m`, with `β(1) = 0`.
pub fn filtered_unknowns(ug: &TruncatedUg) -> Vec<(Mono, Mono)> {
    let monos = ug.monomials_up_to(ug.max_degree());
    let mut out = Vec::new();
    for m in &monos {
        let dm = mono_degree(m);
        if dm == 0 {
            continue;
        }
        for t in &monos {
            if mono_degree(t) <= dm {
                out.push((m.clone(), t.clone()));
            }
        }
    }
    out
}

/// Linear system for `x β(y) - β(xy) + β(x) y = f(x, y)` on window pairs.
pub fn coboundary_system(ug: &TruncatedUg, f: &BilinearMap) -> Result<(Vec<SparseVec>, Vec<BigRational>, usize), DeformError> {
    let unknowns = filtered_unknowns(ug);
    let by_source: BTreeMap<&Mono, Vec<(usize, &Mono)>> = unknowns.iter().enumerate().fold(BTreeMap::new(), |mut acc, (i, (m, t))| {
        acc.entry(m).or_insert_with(Vec::new).push((i, t));
        acc
    });
    let one = BigRational::one();
    let mut rows: BTreeMap<((Mono, Mono), Mono), SparseVec> = BTreeMap::new();
    let add = |rows: &mut BTreeMap<((Mono, Mono), Mono), SparseVec>, key: &(Mono, Mono), col: usize, e: &UgElement, sign: &BigRational| {
        for (m, c) in e.terms() {
            let r = rows.entry((key.clone(), m.clone())).or_default();
            let v = r.entry(col).or_insert_with(BigRational::zero);
            *v += c * sign;
            if v.is_zero() {
                r.remove(&col);
            }
        }
    };
    for (x, y) in window_pairs(ug) {
        let key = (x.clone(), y.clone());
        let xe = UgElement::monomial(x.clone(), one.clone());
        let ye = UgElement::monomial(y.clone(), one.clone());
        // x β(y)
        if let Some(list) = by_source.get(&y) {
            for (col, t) in list {
                let e = ug.mul(&xe, &UgElement::monomial((*t).clone(), one.clone()))?;
                add(&mut rows, &key, *col, &e, &one);
            }
        }
        // β(x) y
        if let Some(list) = by_source.get(&x) {
            for (col, t) in list {
                let e = ug.mul(&UgElement::monomial((*t).clone(), one.clone()), &ye)?;
                add(&mut rows, &key, *col, &e, &one);
            }
        }
        // -β(xy)
        for (m, c) in ug.mul(&xe, &ye)?.terms() {
            if let Some(list) = by_source.get(m) {
                for (col, t) in list {
                    add(&mut rows, &key, *col, &UgElement::monomial((*t).clone(), c.clone()), &-one.clone());
                }
            }
        }
        if let Some(v) = f.get(&key) {
            for m in v.terms().keys() {
                rows.entry((key.clone(), m.clone())).or_default();
            }
        }
    }
    let keys: Vec<((Mono, Mono), Mono)> = rows.keys().cloned().collect();
    let rhs = keys.iter().map(|(k, m)| f.get(k).map(|v| v.coeff(m)).unwrap_or_else(BigRational::zero)).collect();
    Ok((rows.into_values().collect(), rhs, unknowns.len()))
}

/// Gauge `V = Id + Σ β_n h^n` with `V(μ(V^{-1}x, V^{-1}y)) ≡ μ_0(x, y)` modulo
/// `h^{n+1}` on the window, solved order by order from the Hochschild
/// coboundary equation. Verified independently through `V(μ(x,y)) ≡ μ_0(Vx, Vy)`.
pub fn mult_trivialize(ug: &TruncatedUg, mu: &[BilinearMap], n: usize) -> Result<TrivializeResult, DeformError> {
    let std_mu = standard_multiplication(ug)?;
    let mu0 = mu.first().ok_or(DeformError::Shape { got: 0, expected: 1 })?;
    for (k, v) in &std_mu {
        if mu0.get(k) != Some(v) {
            return Err(DeformError::NotStandard(format!("{:?}", k)));
        }
    }
    let monos = ug.monomials_up_to(ug.max_degree());
    let mut gauge = vec![LinearMap::identity(&monos)];
    gauge.resize(n + 1, LinearMap { cols: monos.iter().map(|m| (m.clone(), UgElement::zero())).collect() });
    let unknowns = filtered_unknowns(ug);
    let mut steps = Vec::new();
    for order in 1..=n {
        let t = transport(ug, mu, &gauge, order)?;
        for (k, lower) in t.iter().enumerate().take(order).skip(1) {
            if lower.values().any(|v| !v.is_zero()) {
                return Err(DeformError::VerificationFailed(k));
            }
        }
        let f = &t[order];
        if !is_hochschild_cocycle(ug, f)? {
            return Err(DeformError::ObstructedAtOrder { order, reason: Obstruction::NotCocycle });
        }
        let (rows, rhs, ncols) = coboundary_system(ug, f)?;
        let x = match solve_rational(&rows, &rhs, ncols) {
            RationalSolve::Solved(x) => x,
            RationalSolve::Inconsistent => return Err(DeformError::ObstructedAtOrder { order, reason: Obstruction::NoSolution }),
        };
        let mut beta = LinearMap { cols: monos.iter().map(|m| (m.clone(), UgElement::zero())).collect() };
        let mut support = 0;
        for (i, v) in x.iter().enumerate() {
            if !v.is_zero() {
                support += 1;
                let (m, tm) = &unknowns[i];
                beta.cols.get_mut(m).unwrap().add_term(tm.clone(), v);
            }
        }
        steps.push(TrivializeStep { order, support });
        // V <- (Id + β h^order) V
        let mut next = gauge.clone();
        for k in order..=n {
            let extra = beta.compose(&gauge[k - order]);
            for (m, v) in extra.cols {
                let e = next[k].cols.entry(m).or_default();
                *e = e.add(&v);
            }
        }
        gauge = next;
    }
    if let Some(order) = trivialization_residual_order(ug, mu, &gauge, n)? {
        return Err(DeformError::VerificationFailed(order));
    }
    Ok(TrivializeResult { gauge: SeriesMap { coeffs: gauge }, steps })
}

/// First order at which `V(μ(x,y)) - μ_0(Vx, Vy)` is nonzero modulo `h^{n+1}`.
pub fn trivialization_residual_order(ug: &TruncatedUg, mu: &[BilinearMap], v: &[LinearMap], n: usize) -> Result<Option<usize>, DeformError> {
    let one = BigRational::one();
    let mut first: Option<usize> = None;
    for (a, b) in window_pairs(ug) {
        let mut lhs = vec![UgElement::zero(); n + 1];
        for (i, vi) in v.iter().enumerate().take(n + 1) {
            for (j, mj) in mu.iter().enumerate() {
                if i + j <= n {
                    if let Some(p) = mj.get(&(a.clone(), b.clone())) {
                        lhs[i + j] = lhs[i + j].add(&vi.apply(p));
                    }
                }
            }
        }
        let va: Vec<UgElement> = v.iter().map(|m| m.apply(&UgElement::monomial(a.clone(), one.clone()))).collect();
        let vb: Vec<UgElement> = v.iter().map(|m| m.apply(&UgElement::monomial(b.clone(), one.clone()))).collect();
        let rhs = series_mul(ug, &va, &vb, n)?;
        for k in 0..=n {
            if lhs[k] != rhs[k] {
                first = Some(first.map_or(k, |f| f.min(k)));
            }
        }
    }
    Ok(first)
}

/// Deformed product `V0^{-1}(μ_0(V0 x, V0 y))` modulo `h^{n+1}` for a gauge `V0`.
pub fn transported_multiplication(ug: &TruncatedUg, v0: &[LinearMap], n: usize) -> Result<Vec<BilinearMap>, DeformError> {
    let std_mu = standard_multiplication(ug)?;
    let monos = ug.monomials_up_to(ug.max_degree());
    let mut v0 = v0.to_vec();
    v0.resize(n + 1, LinearMap::default());
    let padded = series_map_inverse(&v0, &monos);
    // transport through W = V0^{-1}
    let mut mu = vec![std_mu];
    mu.resize(n + 1, BilinearMap::new());
    for m in mu.iter_mut().skip(1) {
        for k in window_pairs(ug) {
            m.insert(k, UgElement::zero());
        }
    }
    transport(ug, &mu, &padded, n)
}

/// Errors from [`parse_ug_element`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseUgError {
    #[error("empty expression")]
    Empty,
    #[error("unknown basis element {0:?}")]
    UnknownName(String),
    #[error("bad number {0:?}")]
    BadNumber(String),
    #[error("bad exponent {0:?}")]
    BadExponent(String),
    #[error("exponent {0} too large")]
    ExponentTooLarge(u32),
    #[error(transparent)]
    Deform(#[from] DeformError),
}

/// Largest exponent accepted by [`parse_ug_element`].
pub const MAX_UG_EXPONENT: u32 = 64;

/// Parse a sum of products such as `2*F*E^2 - 1/2*H + 3` over the basis names
/// of the Lie algebra. Factors may appear in any order; the result is
/// straightened inside the window.
pub fn parse_ug_element(text: &str, ug: &TruncatedUg) -> Result<UgElement, ParseUgError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ParseUgError::Empty);
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    let mut out = UgElement::zero();
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(ParseUgError::Empty);
        }
        let mut coeff = BigRational::one();
        let mut acc = ug.one();
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(ParseUgError::Empty);
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                let num = factor
                    .parse::<BigRational>()
                    .map_err(|_| ParseUgError::BadNumber(factor.to_string()))?;
                coeff *= num;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| ParseUgError::BadExponent(e.to_string()))?),
                None => (factor, 1),
            };
            if exp > MAX_UG_EXPONENT {
                return Err(ParseUgError::ExponentTooLarge(exp));
            }
            let idx = ug.lie().index_of(name).ok_or_else(|| ParseUgError::UnknownName(name.to_string()))?;
            for _ in 0..exp {
                acc = ug.mul(&acc, &ug.generator(idx))?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out = out.add(&acc.scale(&coeff));
    }
    Ok(out)
}

/// First single-entry order-one perturbation `f(x, y) = t` (monomials `x, y`,
/// `t` of degree at most one) for which the coboundary equation has no
/// solution on the window; found by comparing ranks.
pub fn find_obstructed_perturbation(ug: &TruncatedUg) -> Result<Option<BilinearMap>, DeformError> {
    let pairs = window_pairs(ug);
    for (x, y) in &pairs {
        for t in ug.monomials_up_to(1) {
            let mut f: BilinearMap = pairs.iter().map(|k| (k.clone(), UgElement::zero())).collect();
            f.insert((x.clone(), y.clone()), UgElement::monomial(t, BigRational::one()));
            let (rows, rhs, n) = coboundary_system(ug, &f)?;
            if solve_rational(&rows, &rhs, n) == RationalSolve::Inconsistent {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2(d: usize) -> TruncatedUg {
        TruncatedUg::new(LieAlgebra::sl2(), d)
    }

    #[test]
    fn sl2_relations() {
        let ug = sl2(4);
        let (f, h, e) = (ug.generator(0), ug.generator(1), ug.generator(2));
        assert_eq!(ug.commutator(&h, &e).unwrap(), e.scale(&rat(2)));
        assert_eq!(ug.commutator(&h, &f).unwrap(), f.scale(&rat(-2)));
        assert_eq!(ug.commutator(&e, &f).unwrap(), h);
        let ef = ug.mul(&e, &f).unwrap();
        assert_eq!(ef.render(ug.lie().names()), "H + F*E");
    }

    #[test]
    fn window_is_enforced() {
        let ug = sl2(2);
        let e = ug.generator(2);
        let e2 = ug.mul(&e, &e).unwrap();
        assert!(matches!(ug.mul(&e2, &e), Err(DeformError::Window { .. })));
    }

    #[test]
    fn sl3_serre() {
        let a2 = crate::cartan::load_preset("A2").unwrap();
        let ug = TruncatedUg::new(LieAlgebra::from_datum(&a2).unwrap(), 3);
        let lie = ug.lie();
        let e1 = ug.generator(lie.index_of("E1").unwrap());
        let e2 = ug.generator(lie.index_of("E2").unwrap());
        let a = ug.mul(&ug.mul(&e1, &e1).unwrap(), &e2).unwrap();
        let b = ug.mul(&ug.mul(&e1, &e2).unwrap(), &e1).unwrap();
        let c = ug.mul(&e2, &ug.mul(&e1, &e1).unwrap()).unwrap();
        assert!(a.sub(&b.scale(&rat(2))).add(&c).is_zero());
    }

    #[test]
    fn zero_cocycle_gives_zero() {
        let ug = sl2(4);
        let d0: Vec<UgElement> = (0..3).map(|i| ug.generator(i)).collect();
        let u = coboundary_solve(&ug, &d0, &vec![UgElement::zero(); 3], 2).unwrap();
        assert!(u.is_zero());
    }

    #[test]
    fn parses_elements() {
        let ug = sl2(4);
        let x = parse_ug_element("E*F - 1/2*H + 3", &ug).unwrap();
        assert_eq!(x.render(ug.lie().names()), "3 + 1/2*H + F*E");
        assert!(matches!(parse_ug_element("X", &ug), Err(ParseUgError::UnknownName(_))));
        assert!(matches!(parse_ug_element("E^5", &ug), Err(ParseUgError::Deform(DeformError::Window { .. }))));
        assert!(matches!(parse_ug_element("1 +", &ug), Err(ParseUgError::Empty)));
    }

    #[test]
    fn filtered_unknown_count() {
        assert_eq!(filtered_unknowns(&sl2(3)).len(), 272);
    }
}
