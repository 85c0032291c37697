//! Truncated weight modules with coactions, their braidings, Yang-Baxter
//! checks and braid group representation matrices.
//!
//! Contraction convention: the coaction `m ↦ Σ_u F_u ⊗ m_u` is dual to the
//! E-action through `C(E_w, F_u) = q^{-Σ_i d_i ν_i(ν_i - 1)/2} <E_w, F_u>`, where
//! `<,>` is the double pairing and `ν` the multidegree. In rank 1 this is
//! `(-1)^k [k]! / (q - q^{-1})^k`, which gives the coaction
//! `x^n ↦ Σ_k (-1)^k (q - q^{-1})^k / [k]! F^k ⊗ E^k x^n`.
//!
//! The braiding is `τ ∘ q^{(wt, wt)} ∘ Θ` with `Θ = Σ_b E_b ⊗ F^b`, the dual
//! bases taken for `P(E_w, F_u) = <S(E_w), F_u>`. It is evaluated from the
//! coaction through the kernel `P^{-1} C` in each multidegree.

use crate::braided::{add_into, multidegree, Word};
use crate::cartan::RootDatum;
use crate::linalg::{inverse_q, matmul_q};
use crate::nichols::multidegrees_of_total;
use crate::scalar::{q_factorial, q_factorial_ratio, q_diff, q_int, rat, ScalarQ};
use crate::uq::{Uq, UqError};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// Sparse vector over a module basis.
pub type SparseCol = BTreeMap<usize, ScalarQ>;

/// Errors from module computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("truncation window exceeded: {0}")]
    Window(String),
    #[error(transparent)]
    Uq(#[from] UqError),
    #[error("weight form needs an invertible pairing matrix for weights outside the root lattice")]
    SingularForm,
    #[error("weight pairing {0} is not an integer shift of the reference pairing")]
    NonIntegralTwist(String),
    #[error("this construction needs the rank-one datum with K acting by q^(weight)")]
    NotRankOne,
    #[error("weight has length {got}, expected {expected}")]
    BadWeight { got: usize, expected: usize },
    #[error("generator {gen} invalid for {strands} strands")]
    BadGenerator { gen: i64, strands: usize },
    #[error("braiding is singular on the window")]
    Singular,
    #[error("quantum group cap {have} too small, need {need}")]
    CapTooSmall { have: usize, need: usize },
}

/// Weight module on a finite window: E/F actions as sparse columns, `None`
/// where the image leaves the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightModule {
    pub name: String,
    pub labels: Vec<String>,
    pub weights: Vec<Vec<i64>>,
    /// Grading lowered by every E_i and raised by every F_i.
    pub depth: Vec<i64>,
    /// `‖v‖ = r^{norm_exponent}`.
    pub norm_exponents: Vec<BigRational>,
    /// Weight whose differences with all basis weights lie in the root lattice.
    pub reference_weight: Vec<i64>,
    pub e_action: Vec<Vec<Option<SparseCol>>>,
    pub f_action: Vec<Vec<Option<SparseCol>>>,
}

impl WeightModule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.e_action.len()
    }

    fn apply(&self, table: &[Vec<Option<SparseCol>>], kind: &str, i: usize, x: &SparseCol) -> Result<SparseCol, RepError> {
        let mut out = SparseCol::new();
        for (&v, c) in x {
            let col = table[i][v]
                .as_ref()
                .ok_or_else(|| RepError::Window(format!("{kind}{} on {}", i + 1, self.labels[v])))?;
            for (&w, d) in col {
                add_into(&mut out, w, &(c * d));
            }
        }
        Ok(out)
    }

    pub fn apply_e(&self, i: usize, x: &SparseCol) -> Result<SparseCol, RepError> {
        self.apply(&self.e_action, "E", i, x)
    }

    pub fn apply_f(&self, i: usize, x: &SparseCol) -> Result<SparseCol, RepError> {
        self.apply(&self.f_action, "F", i, x)
    }

    /// `E_w x = E_{w_1}(E_{w_2}(... x))`.
    pub fn apply_e_word(&self, w: &[usize], x: &SparseCol) -> Result<SparseCol, RepError> {
        let mut y = x.clone();
        for &i in w.iter().rev() {
            if y.is_empty() {
                break;
            }
            y = self.apply_e(i, &y)?;
        }
        Ok(y)
    }

    pub fn apply_f_word(&self, w: &[usize], x: &SparseCol) -> Result<SparseCol, RepError> {
        let mut y = x.clone();
        for &i in w.iter().rev() {
            if y.is_empty() {
                break;
            }
            y = self.apply_f(i, &y)?;
        }
        Ok(y)
    }

    /// `K_λ` on basis vector `v`: `q^{λ(wt v)}`.
    pub fn k_scalar(&self, lambda: &[i64], v: usize) -> ScalarQ {
        ScalarQ::q_pow(lambda.iter().zip(&self.weights[v]).map(|(a, b)| a * b).sum())
    }

    pub fn basis_vector(v: usize) -> SparseCol {
        [(v, ScalarQ::one())].into()
    }
}

fn rank_one_check(datum: &RootDatum) -> Result<(), RepError> {
    if datum.rank() != 1 || datum.lattice_rank() != 1 || datum.coroot(0) != [1] || datum.simple_root(0) != [2] {
        return Err(RepError::NotRankOne);
    }
    Ok(())
}

/// The module `M_λ` on the window `0 ≤ i ≤ i_max`, `0 ≤ j ≤ j_max`:
/// `E x_{i,j} = x_{i+1,j}`, `F x_{i,j} = x_{i,j+1} - [i][λ+i-1-2j] x_{i-1,j}`,
/// `K x_{i,j} = q^{λ+2i-2j} x_{i,j}`, `‖x_{i,j}‖ = r^{j-i}`.
pub fn build_mlambda(datum: &RootDatum, lambda: i64, i_max: usize, j_max: usize) -> Result<WeightModule, RepError> {
    rank_one_check(datum)?;
    let idx = |i: usize, j: usize| i * (j_max + 1) + j;
    let n = (i_max + 1) * (j_max + 1);
    let mut labels = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut depth = Vec::with_capacity(n);
    let mut e_col = Vec::with_capacity(n);
    let mut f_col = Vec::with_capacity(n);
    for i in 0..=i_max {
        for j in 0..=j_max {
            let (ii, jj) = (i as i64, j as i64);
            labels.push(format!("x_{i},{j}"));
            weights.push(vec![lambda + 2 * ii - 2 * jj]);
            depth.push(jj - ii);
            e_col.push((i < i_max).then(|| SparseCol::from([(idx(i + 1, j), ScalarQ::one())])));
            f_col.push((j < j_max).then(|| {
                let mut c = SparseCol::from([(idx(i, j + 1), ScalarQ::one())]);
                if i > 0 {
                    add_into(&mut c, idx(i - 1, j), &-(&q_int(ii) * &q_int(lambda + ii - 1 - 2 * jj)));
                }
                c
            }));
        }
    }
    let norm_exponents = depth.iter().map(|&d| rat(d)).collect();
    Ok(WeightModule {
        name: format!("M({lambda})"),
        labels,
        weights,
        depth,
        norm_exponents,
        reference_weight: vec![lambda],
        e_action: vec![e_col],
        f_action: vec![f_col],
    })
}

/// Closed-form rank-one braiding of Verma vectors `x^n ⊗ x^m`:
/// `Σ_k (-1)^k (q - q^{-1})^k [n]![λ-n+k]!/([k]![n-k]![λ-n]!) q^{2(m+k)(n-k)} x^{m+k} ⊗ x^{n-k}`.
/// Keys are `(m+k, n-k)`. The second highest weight does not enter the formula.
pub fn closed_form_braiding_rank1(lambda: i64, _lambda_prime: i64, n: usize, m: usize) -> BTreeMap<(usize, usize), ScalarQ> {
    let mut out = BTreeMap::new();
    let ni = n as i64;
    for k in 0..=n {
        let ki = k as i64;
        let num = &q_factorial_ratio(ni - ki, k) * &q_factorial_ratio(lambda - ni, k);
        let mut c = &(&num * &q_diff(1).pow(ki)) / &q_factorial(ki).expect("k >= 0");
        if k % 2 == 1 {
            c = -c;
        }
        c = c.mul_q_pow(2 * (m as i64 + ki) * (ni - ki));
        add_into(&mut out, (m + k, n - k), &c);
    }
    out
}

struct Kernel {
    words: Vec<Word>,
    c_inv: Vec<Vec<ScalarQ>>,
    // P^{-1} C
    theta: Vec<Vec<ScalarQ>>,
}

/// Linear maps in a braiding or braid representation, with an overall factor
/// `q^{shift}` kept apart because it may be fractional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedMap<K: Ord> {
    pub shift: BigRational,
    pub columns: BTreeMap<K, BTreeMap<K, ScalarQ>>,
}

/// Braiding `M⊗N → N⊗M`: source `(m, n)`, target `(n', m')`.
pub type BraidingMatrix = ShiftedMap<(usize, usize)>;

/// Braid group representation on `M^{⊗n}`.
pub type BraidRep = ShiftedMap<Vec<usize>>;

/// Quantum group plus cached contraction kernels per multidegree.
pub struct RepContext {
    uq: Uq,
    kernels: RwLock<HashMap<Vec<usize>, Arc<Kernel>>>,
}

impl RepContext {
    pub fn new(datum: RootDatum, cap: usize) -> Self {
        RepContext { uq: Uq::new(datum, cap), kernels: RwLock::new(HashMap::new()) }
    }

    pub fn uq(&self) -> &Uq {
        &self.uq
    }

    pub fn datum(&self) -> &RootDatum {
        self.uq.datum()
    }

    fn kernel(&self, nu: &[usize]) -> Result<Arc<Kernel>, RepError> {
        if let Some(k) = self.kernels.read().unwrap().get(nu) {
            return Ok(k.clone());
        }
        let uq = &self.uq;
        let words = uq.nichols().basis_words(nu).map_err(UqError::from)?;
        let datum = uq.datum();
        let mut corr = 0;
        for (i, &v) in nu.iter().enumerate() {
            let v = v as i64;
            corr -= datum.symmetrizer(i) * v * (v - 1) / 2;
        }
        let mut c = Vec::with_capacity(words.len());
        let mut p = Vec::with_capacity(words.len());
        for w in &words {
            let ew = uq.e_word(w)?;
            let sw = uq.antipode(&ew)?;
            let mut crow = Vec::with_capacity(words.len());
            let mut prow = Vec::with_capacity(words.len());
            for u in &words {
                let fu = uq.f_word(u)?;
                crow.push(uq.double_pairing(&ew, &fu)?.mul_q_pow(corr));
                prow.push(uq.double_pairing(&sw, &fu)?);
            }
            c.push(crow);
            p.push(prow);
        }
        let c_inv = inverse_q(&c).ok_or(RepError::Singular)?;
        let p_inv = inverse_q(&p).ok_or(RepError::Singular)?;
        let theta = matmul_q(&p_inv, &c);
        let k = Arc::new(Kernel { words, c_inv, theta });
        self.kernels.write().unwrap().insert(nu.to_vec(), k.clone());
        Ok(k)
    }

    /// Verma module of highest weight `λ` on F-words of total degree at most `cap`.
    pub fn build_verma(&self, lambda: &[i64], cap: usize) -> Result<WeightModule, RepError> {
        let uq = &self.uq;
        let datum = uq.datum();
        if lambda.len() != datum.lattice_rank() {
            return Err(RepError::BadWeight { got: lambda.len(), expected: datum.lattice_rank() });
        }
        if uq.cap() < cap + 1 {
            return Err(RepError::CapTooSmall { have: uq.cap(), need: cap + 1 });
        }
        let rank = datum.rank();
        let mut words: Vec<Word> = Vec::new();
        for t in 0..=cap {
            for d in multidegrees_of_total(rank, t) {
                words.extend(uq.nichols().basis_words(&d).map_err(UqError::from)?);
            }
        }
        let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let rank_one = rank_one_check(datum).is_ok();
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        let mut depth = Vec::new();
        for w in &words {
            labels.push(if rank_one {
                format!("x^{}", w.len())
            } else if w.is_empty() {
                "v".to_string()
            } else {
                format!("F{}v", crate::braided::word_label(w))
            });
            let d: Vec<i64> = multidegree(w, rank).iter().map(|&x| x as i64).collect();
            let beta = datum.root_combination(&d);
            weights.push(lambda.iter().zip(&beta).map(|(a, b)| a - b).collect());
            depth.push(w.len() as i64);
        }
        let mut e_action = vec![Vec::with_capacity(words.len()); rank];
        let mut f_action = vec![Vec::with_capacity(words.len()); rank];
        for i in 0..rank {
            for w in &words {
                // F_i F_w v
                if w.len() == cap {
                    f_action[i].push(None);
                } else {
                    let mut iw = vec![i];
                    iw.extend_from_slice(w);
                    let mut col = SparseCol::new();
                    for (k, c) in uq.f_word(&iw)?.terms() {
                        add_into(&mut col, index[&k.f], c);
                    }
                    f_action[i].push(Some(col));
                }
                // E_i F_w v: only terms without E survive, K acts by q^{K(λ)}
                let prod = uq.multiply(&uq.e(i), &uq.f_word(w)?)?;
                let mut col = SparseCol::new();
                for (k, c) in prod.terms() {
                    if k.e.is_empty() {
                        let s = ScalarQ::q_pow(datum.eval(&k.k, lambda));
                        add_into(&mut col, index[&k.f], &(c * &s));
                    }
                }
                e_action[i].push(Some(col));
            }
        }
        let norm_exponents = depth.iter().map(|&d| rat(d)).collect();
        let lam: Vec<String> = lambda.iter().map(|x| x.to_string()).collect();
        Ok(WeightModule {
            name: format!("Verma({})", lam.join(",")),
            labels,
            weights,
            depth,
            norm_exponents,
            reference_weight: lambda.to_vec(),
            e_action,
            f_action,
        })
    }

    /// Coaction `v ↦ Σ_u F_u ⊗ v_u` over Nichols basis words `u` with `|u| ≤ cap`.
    /// Keys are `(u, basis index)`.
    pub fn coaction(&self, m: &WeightModule, v: usize, cap: usize) -> Result<BTreeMap<(Word, usize), ScalarQ>, RepError> {
        let rank = self.datum().rank();
        let x = WeightModule::basis_vector(v);
        let mut out = BTreeMap::new();
        for t in 0..=cap {
            for nu in multidegrees_of_total(rank, t) {
                let ker = self.kernel(&nu)?;
                let images: Vec<SparseCol> =
                    ker.words.iter().map(|w| m.apply_e_word(w, &x)).collect::<Result<_, _>>()?;
                for (ui, u) in ker.words.iter().enumerate() {
                    for (wi, img) in images.iter().enumerate() {
                        let c = &ker.c_inv[ui][wi];
                        if c.is_zero() {
                            continue;
                        }
                        for (&b, d) in img {
                            add_into(&mut out, (u.clone(), b), &(c * d));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `<E_w, F_u>` contracted with the coaction: `Σ_u C(E_w, F_u) v_u`.
    pub fn contract_coaction(&self, coaction: &BTreeMap<(Word, usize), ScalarQ>, w: &[usize]) -> Result<SparseCol, RepError> {
        let rank = self.datum().rank();
        let nu = multidegree(w, rank);
        let ker = self.kernel(&nu)?;
        let uq = &self.uq;
        let mut corr = 0;
        for (i, &v) in nu.iter().enumerate() {
            let v = v as i64;
            corr -= self.datum().symmetrizer(i) * v * (v - 1) / 2;
        }
        let ew = uq.e_word(w)?;
        let mut out = SparseCol::new();
        for u in &ker.words {
            let c = uq.double_pairing(&ew, &uq.f_word(u)?)?.mul_q_pow(corr);
            if c.is_zero() {
                continue;
            }
            for ((uu, b), d) in coaction.range((u.clone(), 0)..=(u.clone(), usize::MAX)) {
                debug_assert_eq!(uu, u);
                add_into(&mut out, *b, &(&c * d));
            }
        }
        Ok(out)
    }

    /// `(μ, ν) - shift` as an integer, or the overall shift `(ref_M, ref_N)` when `mu`/`nu` are `None`.
    fn form_shift(&self, m: &WeightModule, n: &WeightModule) -> Result<BigRational, RepError> {
        let d = self.datum();
        match d.weight_form(&m.reference_weight, &n.reference_weight) {
            Some(v) => Ok(v),
            None => {
                let all_psi = m.weights.iter().chain(&n.weights).all(|w| d.root_coordinates(w).is_some());
                if all_psi {
                    Ok(BigRational::zero())
                } else {
                    Err(RepError::SingularForm)
                }
            }
        }
    }

    fn twist_exponent(&self, mu: &[i64], nu: &[i64], shift: &BigRational) -> Result<i64, RepError> {
        let d = self.datum();
        let v = match d.weight_form(mu, nu) {
            Some(v) => v - shift,
            None => {
                let a = d.root_coordinates(mu).ok_or(RepError::SingularForm)?;
                let b = d.root_coordinates(nu).ok_or(RepError::SingularForm)?;
                rat(d.root_form(&a, &b)) - shift
            }
        };
        if !v.is_integer() {
            return Err(RepError::NonIntegralTwist(v.to_string()));
        }
        v.to_integer().to_i64().ok_or_else(|| RepError::NonIntegralTwist(v.to_string()))
    }

    /// Image of `m_a ⊗ n_b` under the braiding, up to the factor `q^{shift}`.
    fn braid_column(
        &self,
        m: &WeightModule,
        n: &WeightModule,
        a: usize,
        b: usize,
        cap: usize,
        shift: &BigRational,
    ) -> Result<BTreeMap<(usize, usize), ScalarQ>, RepError> {
        let rank = self.datum().rank();
        let co = self.coaction(m, a, cap)?;
        // group coaction by multidegree of u
        let mut out = BTreeMap::new();
        let y = WeightModule::basis_vector(b);
        for t in 0..=cap {
            for nu in multidegrees_of_total(rank, t) {
                let ker = self.kernel(&nu)?;
                // Θ-part: Σ_{u,v} θ[u][v] m_v ⊗ F_u n
                let mut f_images: Vec<Option<SparseCol>> = vec![None; ker.words.len()];
                for (vi, vw) in ker.words.iter().enumerate() {
                    let part: Vec<(usize, &ScalarQ)> = co
                        .range((vw.clone(), 0)..=(vw.clone(), usize::MAX))
                        .map(|((_, idx), c)| (*idx, c))
                        .collect();
                    if part.is_empty() {
                        continue;
                    }
                    for (ui, uw) in ker.words.iter().enumerate() {
                        let th = &ker.theta[ui][vi];
                        if th.is_zero() {
                            continue;
                        }
                        if f_images[ui].is_none() {
                            f_images[ui] = Some(n.apply_f_word(uw, &y)?);
                        }
                        let fimg = f_images[ui].as_ref().unwrap();
                        for &(mv, cm) in &part {
                            for (&nv, cn) in fimg {
                                let ex = self.twist_exponent(&n.weights[nv], &m.weights[mv], shift)?;
                                let coeff = (&(th * cm) * cn).mul_q_pow(ex);
                                add_into(&mut out, (nv, mv), &coeff);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Braiding `M⊗N → N⊗M` on basis pairs whose depths sum to at most `max_depth`,
    /// with coaction terms up to f-degree `cap`.
    pub fn braiding(&self, m: &WeightModule, n: &WeightModule, cap: usize, max_depth: i64) -> Result<BraidingMatrix, RepError> {
        let shift = self.form_shift(m, n)?;
        let mut columns = BTreeMap::new();
        for a in 0..m.dim() {
            for b in 0..n.dim() {
                if m.depth[a] + n.depth[b] > max_depth {
                    continue;
                }
                columns.insert((a, b), self.braid_column(m, n, a, b, cap, &shift)?);
            }
        }
        Ok(BraidingMatrix { shift, columns })
    }

    /// Tensor product module through `Δ(E_i) = E_i⊗t_i + 1⊗E_i`, `Δ(F_i) = F_i⊗1 + t_i^{-1}⊗F_i`.
    pub fn tensor_module(&self, m: &WeightModule, n: &WeightModule) -> WeightModule {
        let datum = self.datum();
        let rank = datum.rank();
        let nd = n.dim();
        let idx = |a: usize, b: usize| a * nd + b;
        let mut out = WeightModule {
            name: format!("{}(x){}", m.name, n.name),
            labels: Vec::new(),
            weights: Vec::new(),
            depth: Vec::new(),
            norm_exponents: Vec::new(),
            reference_weight: m.reference_weight.iter().zip(&n.reference_weight).map(|(a, b)| a + b).collect(),
            e_action: vec![Vec::new(); rank],
            f_action: vec![Vec::new(); rank],
        };
        for a in 0..m.dim() {
            for b in 0..nd {
                out.labels.push(format!("{}(x){}", m.labels[a], n.labels[b]));
                out.weights.push(m.weights[a].iter().zip(&n.weights[b]).map(|(x, y)| x + y).collect());
                out.depth.push(m.depth[a] + n.depth[b]);
                out.norm_exponents.push(&m.norm_exponents[a] + &n.norm_exponents[b]);
                for i in 0..rank {
                    let t = datum.t_vector(i);
                    let e = match (&m.e_action[i][a], &n.e_action[i][b]) {
                        (Some(ea), Some(eb)) => {
                            let mut col = SparseCol::new();
                            let tb = n.k_scalar(t, b);
                            for (&x, c) in ea {
                                add_into(&mut col, idx(x, b), &(c * &tb));
                            }
                            for (&y, c) in eb {
                                add_into(&mut col, idx(a, y), c);
                            }
                            Some(col)
                        }
                        _ => None,
                    };
                    out.e_action[i].push(e);
                    let f = match (&m.f_action[i][a], &n.f_action[i][b]) {
                        (Some(fa), Some(fb)) => {
                            let mut col = SparseCol::new();
                            let neg: Vec<i64> = t.iter().map(|x| -x).collect();
                            let ta = m.k_scalar(&neg, a);
                            for (&x, c) in fa {
                                add_into(&mut col, idx(x, b), c);
                            }
                            for (&y, c) in fb {
                                add_into(&mut col, idx(a, y), &(c * &ta));
                            }
                            Some(col)
                        }
                        _ => None,
                    };
                    out.f_action[i].push(f);
                }
            }
        }
        out
    }

    /// Full braiding on `M^{⊗strands}` restricted to tuples of total depth at most `max_depth`,
    /// acting on strands `(pos, pos+1)`.
    /// True iff `σ1 σ2 σ1 = σ2 σ1 σ2` on `M⊗M⊗M` up to total depth `max_depth`.
    pub fn ybe_check(&self, m: &WeightModule, cap: usize, max_depth: i64) -> Result<bool, RepError> {
        let sigma = self.braiding(m, m, cap, max_depth)?;
        ybe_holds(m, &sigma, max_depth)
    }

    /// Matrix of a braid word (generators `±1..strands-1`, applied left to right)
    /// on `M^{⊗strands}` up to total depth `max_depth`.
    pub fn braid_rep(&self, m: &WeightModule, strands: usize, word: &[i64], cap: usize, max_depth: i64) -> Result<BraidRep, RepError> {
        for &g in word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(RepError::BadGenerator { gen: g, strands });
            }
        }
        let tuples = depth_tuples(m, strands, max_depth);
        let identity: BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, ScalarQ>> =
            tuples.iter().map(|t| (t.clone(), [(t.clone(), ScalarQ::one())].into())).collect();
        if word.is_empty() {
            return Ok(BraidRep { shift: BigRational::zero(), columns: identity });
        }
        let sigma = self.braiding(m, m, cap, max_depth)?;
        let mut gens: HashMap<i64, BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, ScalarQ>>> = HashMap::new();
        let mut cols = identity;
        let mut shift = BigRational::zero();
        for &g in word {
            if !gens.contains_key(&g) {
                let fwd = strand_braiding(&sigma, &tuples, g.unsigned_abs() as usize - 1)?;
                let map = if g > 0 { fwd } else { invert_map(&tuples, &fwd)? };
                gens.insert(g, map);
            }
            let gm = &gens[&g];
            let mut next = BTreeMap::new();
            for (src, v) in &cols {
                next.insert(src.clone(), apply_map(gm, v)?);
            }
            cols = next;
            if g > 0 {
                shift += &sigma.shift;
            } else {
                shift -= &sigma.shift;
            }
        }
        Ok(BraidRep { shift, columns: cols })
    }
}

fn strand_braiding(
    sigma: &BraidingMatrix,
    tuples: &[Vec<usize>],
    pos: usize,
) -> Result<MapCols<Vec<usize>>, RepError> {
    let mut out = BTreeMap::new();
    for t in tuples {
        let col = sigma
            .columns
            .get(&(t[pos], t[pos + 1]))
            .ok_or_else(|| RepError::Window(format!("braiding column for strands {} and {}", pos + 1, pos + 2)))?;
        let mut img = BTreeMap::new();
        for (&(x, y), c) in col {
            let mut s = t.clone();
            s[pos] = x;
            s[pos + 1] = y;
            add_into(&mut img, s, c);
        }
        out.insert(t.clone(), img);
    }
    Ok(out)
}

/// Braid relation for any map `M⊗M → M⊗M` given by columns, on `M^{⊗3}` up
/// to total depth `max_depth`. The shift is irrelevant here.
pub fn ybe_holds(m: &WeightModule, sigma: &BraidingMatrix, max_depth: i64) -> Result<bool, RepError> {
    let tuples = depth_tuples(m, 3, max_depth);
    let s1 = strand_braiding(sigma, &tuples, 0)?;
    let s2 = strand_braiding(sigma, &tuples, 1)?;
    for t in &tuples {
        let x: BTreeMap<Vec<usize>, ScalarQ> = [(t.clone(), ScalarQ::one())].into();
        let lhs = apply_map(&s1, &apply_map(&s2, &apply_map(&s1, &x)?)?)?;
        let rhs = apply_map(&s2, &apply_map(&s1, &apply_map(&s2, &x)?)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis tuples of `M^{⊗k}` with total depth at most `max_depth`.
pub fn depth_tuples(m: &WeightModule, k: usize, max_depth: i64) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            let d: i64 = t.iter().map(|&v| m.depth[v]).sum();
            for v in 0..m.dim() {
                if d + m.depth[v] <= max_depth {
                    let mut s = t.clone();
                    s.push(v);
                    next.push(s);
                }
            }
        }
        out = next;
    }
    // drop tuples whose remaining factors would push the depth over the bound
    out
}

type MapCols<K> = BTreeMap<K, BTreeMap<K, ScalarQ>>;

fn apply_map<K: Ord + Clone + std::fmt::Debug>(map: &MapCols<K>, x: &BTreeMap<K, ScalarQ>) -> Result<BTreeMap<K, ScalarQ>, RepError> {
    let mut out = BTreeMap::new();
    for (k, c) in x {
        let col = map.get(k).ok_or_else(|| RepError::Window(format!("basis tuple {k:?} outside the window")))?;
        for (t, d) in col {
            add_into(&mut out, t.clone(), &(c * d));
        }
    }
    Ok(out)
}

fn invert_map(tuples: &[Vec<usize>], map: &MapCols<Vec<usize>>) -> Result<MapCols<Vec<usize>>, RepError> {
    let index: HashMap<&Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let n = tuples.len();
    // block by the multiset of entries, which every generator preserves up to weight
    let mut m = vec![vec![ScalarQ::zero(); n]; n];
    for (src, col) in map {
        let j = index[src];
        for (dst, c) in col {
            let i = *index.get(dst).ok_or_else(|| RepError::Window(format!("{dst:?} outside the window")))?;
            m[i][j] = c.clone();
        }
    }
    let inv = inverse_q(&m).ok_or(RepError::Singular)?;
    let mut out = MapCols::new();
    for (j, src) in tuples.iter().enumerate() {
        let mut col = BTreeMap::new();
        for (i, dst) in tuples.iter().enumerate() {
            if !inv[i][j].is_zero() {
                col.insert(dst.clone(), inv[i][j].clone());
            }
        }
        out.insert(src.clone(), col);
    }
    Ok(out)
}
