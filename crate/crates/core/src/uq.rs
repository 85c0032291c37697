//! The quantum group in PBW normal order `F-word · K_λ · E-word`, with Hopf
//! structure and the double pairing between its two Borel halves.

use crate::braided::{add_into, multidegree, word_label, Word};
use crate::cartan::RootDatum;
use crate::nichols::{NicholsAlgebra, NicholsError};
use crate::scalar::{q_diff, ScalarQ};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

/// Errors from quantum group computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UqError {
    #[error("term of degree {degree} exceeds the cap {cap}")]
    CapExceeded { degree: usize, cap: usize },
    #[error(transparent)]
    Nichols(#[from] NicholsError),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("Cartan vector has length {got}, expected {expected}")]
    BadWeight { got: usize, expected: usize },
    #[error("element is not in the {0} Borel part")]
    OutsideBorel(&'static str),
    #[error("Cartan part {0:?} is not an integer combination of the t_i")]
    NotInTLattice(Vec<i64>),
}

/// PBW monomial `F_f K_k E_e`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UqKey {
    pub f: Word,
    pub k: Vec<i64>,
    pub e: Word,
}

impl UqKey {
    pub fn unit(lattice_rank: usize) -> Self {
        UqKey { f: Vec::new(), k: vec![0; lattice_rank], e: Vec::new() }
    }

    /// Length of the F-word plus length of the E-word.
    pub fn degree(&self) -> usize {
        self.f.len() + self.e.len()
    }

    /// Ψ-degree `deg E - deg F` in simple-root coordinates.
    pub fn psi_degree(&self, rank: usize) -> Vec<i64> {
        let e = multidegree(&self.e, rank);
        let f = multidegree(&self.f, rank);
        e.iter().zip(&f).map(|(a, b)| *a as i64 - *b as i64).collect()
    }
}

impl fmt::Display for UqKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.f.is_empty() {
            parts.push(format!("F{}", word_label(&self.f)));
        }
        if self.k.iter().any(|&x| x != 0) {
            let v: Vec<String> = self.k.iter().map(|x| x.to_string()).collect();
            parts.push(format!("K[{}]", v.join(",")));
        }
        if !self.e.is_empty() {
            parts.push(format!("E{}", word_label(&self.e)));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Sparse combination of PBW monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UqElement {
    terms: BTreeMap<UqKey, ScalarQ>,
}

/// Element of `U ⊗ U`.
pub type UqTensor = BTreeMap<(UqKey, UqKey), ScalarQ>;

impl UqElement {
    pub fn zero() -> Self {
        UqElement::default()
    }

    pub fn from_key(k: UqKey) -> Self {
        UqElement::monomial(k, ScalarQ::one())
    }

    pub fn monomial(k: UqKey, c: ScalarQ) -> Self {
        let mut x = UqElement::zero();
        x.add_term(k, &c);
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (UqKey, ScalarQ)>>(it: I) -> Self {
        let mut x = UqElement::zero();
        for (k, c) in it {
            x.add_term(k, &c);
        }
        x
    }

    pub fn add_term(&mut self, k: UqKey, c: &ScalarQ) {
        add_into(&mut self.terms, k, c);
    }

    pub fn terms(&self) -> &BTreeMap<UqKey, ScalarQ> {
        &self.terms
    }

    pub fn coeff(&self, k: &UqKey) -> ScalarQ {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &UqElement) -> UqElement {
        let mut x = self.clone();
        for (k, c) in &o.terms {
            x.add_term(k.clone(), c);
        }
        x
    }

    pub fn sub(&self, o: &UqElement) -> UqElement {
        self.add(&o.scale(&-ScalarQ::one()))
    }

    pub fn scale(&self, c: &ScalarQ) -> UqElement {
        if c.is_zero() {
            return UqElement::zero();
        }
        UqElement { terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect() }
    }

    /// Largest term degree, 0 for the zero element.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(UqKey::degree).max().unwrap_or(0)
    }

    /// Ψ-degree when all terms agree.
    pub fn homogeneous_psi_degree(&self, rank: usize) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|k| k.psi_degree(rank));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for UqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "({c})*{k}")?;
            }
        }
        Ok(())
    }
}

/// Render a tensor as `a (x) b` terms in key order.
pub fn tensor_to_string(x: &UqTensor) -> String {
    if x.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = x
        .iter()
        .map(|((a, b), c)| if c.is_one() { format!("{a} (x) {b}") } else { format!("({c})*{a} (x) {b}") })
        .collect();
    parts.join(" + ")
}

type TermList = Arc<Vec<(UqKey, ScalarQ)>>;

/// Quantum group of a root datum with a cap on PBW degrees.
pub struct Uq {
    datum: RootDatum,
    nichols: NicholsAlgebra,
    cap: usize,
    // E_w F_u in normal order with unreduced words
    ef_memo: RwLock<HashMap<(Word, Word), TermList>>,
}

impl Uq {
    pub fn new(datum: RootDatum, cap: usize) -> Self {
        let nichols = NicholsAlgebra::for_datum(&datum, cap);
        Uq { datum, nichols, cap, ef_memo: RwLock::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn nichols(&self) -> &NicholsAlgebra {
        &self.nichols
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn lr(&self) -> usize {
        self.datum.lattice_rank()
    }

    pub fn one(&self) -> UqElement {
        UqElement::from_key(UqKey::unit(self.lr()))
    }

    pub fn e(&self, i: usize) -> UqElement {
        UqElement::from_key(UqKey { e: vec![i], ..UqKey::unit(self.lr()) })
    }

    pub fn f(&self, i: usize) -> UqElement {
        UqElement::from_key(UqKey { f: vec![i], ..UqKey::unit(self.lr()) })
    }

    pub fn k(&self, lambda: Vec<i64>) -> UqElement {
        UqElement::from_key(UqKey { k: lambda, ..UqKey::unit(self.lr()) })
    }

    /// `t_i^{±1}`.
    pub fn t(&self, i: usize, sign: i64) -> UqElement {
        self.k(self.datum.t_vector(i).iter().map(|x| sign * x).collect())
    }

    /// `E_w` for a word, reduced.
    pub fn e_word(&self, w: &[usize]) -> Result<UqElement, UqError> {
        self.normalize(&UqElement::from_key(UqKey { e: w.to_vec(), ..UqKey::unit(self.lr()) }))
    }

    /// `F_w` for a word, reduced.
    pub fn f_word(&self, w: &[usize]) -> Result<UqElement, UqError> {
        self.normalize(&UqElement::from_key(UqKey { f: w.to_vec(), ..UqKey::unit(self.lr()) }))
    }

    fn check_key(&self, k: &UqKey) -> Result<(), UqError> {
        if k.k.len() != self.lr() {
            return Err(UqError::BadWeight { got: k.k.len(), expected: self.lr() });
        }
        if let Some(&l) = k.f.iter().chain(&k.e).find(|&&l| l >= self.datum.rank()) {
            return Err(UqError::IndexOutOfRange(l));
        }
        if k.degree() > self.cap {
            return Err(UqError::CapExceeded { degree: k.degree(), cap: self.cap });
        }
        Ok(())
    }

    /// Rewrite every term with F- and E-words in the Nichols basis.
    pub fn normalize(&self, x: &UqElement) -> Result<UqElement, UqError> {
        let mut out = UqElement::zero();
        for (k, c) in x.terms() {
            self.push_reduced(&mut out, k.f.clone(), k.k.clone(), k.e.clone(), c)?;
        }
        Ok(out)
    }

    fn push_reduced(&self, out: &mut UqElement, f: Word, k: Vec<i64>, e: Word, c: &ScalarQ) -> Result<(), UqError> {
        let key = UqKey { f, k, e };
        self.check_key(&key)?;
        let fr = self.nichols.reduce_word(&key.f)?;
        let er = self.nichols.reduce_word(&key.e)?;
        for (fw, a) in &fr {
            for (ew, b) in &er {
                let coeff = &(c * a) * b;
                out.add_term(UqKey { f: fw.clone(), k: key.k.clone(), e: ew.clone() }, &coeff);
            }
        }
        Ok(())
    }

    /// `λ(Σ α_{w_k})`.
    fn lambda_on_word(&self, lambda: &[i64], w: &[usize]) -> i64 {
        w.iter().map(|&l| self.datum.eval(lambda, self.datum.simple_root(l))).sum()
    }

    /// `(α_i, Σ α_{w_k})`.
    fn root_on_word(&self, i: usize, w: &[usize]) -> i64 {
        w.iter().map(|&l| self.datum.pairing(i, l)).sum()
    }

    /// Normal order of `E_w F_u`, words left unreduced.
    fn ef(&self, w: &[usize], u: &[usize]) -> TermList {
        let key = (w.to_vec(), u.to_vec());
        if let Some(v) = self.ef_memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let lr = self.lr();
        let mut acc: BTreeMap<UqKey, ScalarQ> = BTreeMap::new();
        if w.is_empty() || u.is_empty() {
            acc.insert(UqKey { f: u.to_vec(), k: vec![0; lr], e: w.to_vec() }, ScalarQ::one());
        } else {
            // E_{w'} E_i F_u = E_{w'} F_u E_i + Σ_{u_p = i} E_{w'} F_{u∖p} (q^{-c} t_i - q^{c} t_i^{-1}) / (q_i - q_i^{-1})
            let (i, rest) = (w[w.len() - 1], &w[..w.len() - 1]);
            for (k, c) in self.ef(rest, u).iter() {
                let mut e = k.e.clone();
                e.push(i);
                add_into(&mut acc, UqKey { f: k.f.clone(), k: k.k.clone(), e }, c);
            }
            let denom = q_diff(self.datum.symmetrizer(i)).inv();
            let t = self.datum.t_vector(i);
            for p in 0..u.len() {
                if u[p] != i {
                    continue;
                }
                let shift = self.root_on_word(i, &u[p + 1..]);
                let mut v = u.to_vec();
                v.remove(p);
                for (k, c) in self.ef(rest, &v).iter() {
                    for sign in [1i64, -1] {
                        // (F K_μ E) t^{±1} = q^{∓t(deg E)} F K_{μ±t} E
                        let lam: Vec<i64> = t.iter().map(|x| sign * x).collect();
                        let ex = -sign * shift - self.lambda_on_word(&lam, &k.e);
                        let mut coeff = (c * &denom).mul_q_pow(ex);
                        if sign < 0 {
                            coeff = -coeff;
                        }
                        let kk: Vec<i64> = k.k.iter().zip(&lam).map(|(a, b)| a + b).collect();
                        add_into(&mut acc, UqKey { f: k.f.clone(), k: kk, e: k.e.clone() }, &coeff);
                    }
                }
            }
        }
        let v: TermList = Arc::new(acc.into_iter().collect());
        self.ef_memo.write().unwrap().insert(key, v.clone());
        v
    }

    /// Product in normal order. Errors if a term would exceed the cap.
    pub fn multiply(&self, x: &UqElement, y: &UqElement) -> Result<UqElement, UqError> {
        let mut out = UqElement::zero();
        for (a, ca) in x.terms() {
            self.check_key(a)?;
            for (b, cb) in y.terms() {
                self.check_key(b)?;
                let deg = a.degree() + b.degree();
                if deg > self.cap {
                    return Err(UqError::CapExceeded { degree: deg, cap: self.cap });
                }
                let cab = ca * cb;
                for (m, c) in self.ef(&a.e, &b.f).iter() {
                    // F_a K_a (F' K' E') K_b E_b
                    let ex = -self.lambda_on_word(&a.k, &m.f) - self.lambda_on_word(&b.k, &m.e);
                    let coeff = (&cab * c).mul_q_pow(ex);
                    let mut f = a.f.clone();
                    f.extend_from_slice(&m.f);
                    let k: Vec<i64> = a.k.iter().zip(&m.k).zip(&b.k).map(|((p, q), r)| p + q + r).collect();
                    let mut e = m.e.clone();
                    e.extend_from_slice(&b.e);
                    self.push_reduced(&mut out, f, k, e, &coeff)?;
                }
            }
        }
        Ok(out)
    }

    /// Product of several factors, left to right.
    pub fn product(&self, xs: &[UqElement]) -> Result<UqElement, UqError> {
        let mut acc = self.one();
        for x in xs {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// Factor a normal-ordered key into generators `F_{f_1} ... K E_{e_1} ...`.
    fn generator_factors(&self, k: &UqKey) -> Vec<UqElement> {
        let mut out: Vec<UqElement> = k.f.iter().map(|&i| self.f(i)).collect();
        out.push(self.k(k.k.clone()));
        out.extend(k.e.iter().map(|&i| self.e(i)));
        out
    }

    fn generator_coproduct(&self, g: &UqElement) -> UqTensor {
        let (k, _) = g.terms().iter().next().expect("generator");
        let lr = self.lr();
        let mut out = UqTensor::new();
        let unit = UqKey::unit(lr);
        let one = ScalarQ::one();
        if let Some(&i) = k.e.first() {
            let t = UqKey { k: self.datum.t_vector(i).to_vec(), ..unit.clone() };
            add_into(&mut out, (k.clone(), t), &one);
            add_into(&mut out, (unit, k.clone()), &one);
        } else if let Some(&i) = k.f.first() {
            let tinv = UqKey { k: self.datum.t_vector(i).iter().map(|x| -x).collect(), ..unit.clone() };
            add_into(&mut out, (k.clone(), unit), &one);
            add_into(&mut out, (tinv, k.clone()), &one);
        } else {
            add_into(&mut out, (k.clone(), k.clone()), &one);
        }
        out
    }

    /// `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn tensor_multiply(&self, x: &UqTensor, y: &UqTensor) -> Result<UqTensor, UqError> {
        let mut out = UqTensor::new();
        for ((a, b), s) in x {
            for ((c, d), t) in y {
                let l = self.multiply(&UqElement::from_key(a.clone()), &UqElement::from_key(c.clone()))?;
                let r = self.multiply(&UqElement::from_key(b.clone()), &UqElement::from_key(d.clone()))?;
                let st = s * t;
                for (lk, lc) in l.terms() {
                    for (rk, rc) in r.terms() {
                        add_into(&mut out, (lk.clone(), rk.clone()), &(&(&st * lc) * rc));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Δ(E_i) = E_i⊗t_i + 1⊗E_i`, `Δ(F_i) = F_i⊗1 + t_i^{-1}⊗F_i`, `Δ(K_λ) = K_λ⊗K_λ`.
    pub fn coproduct(&self, x: &UqElement) -> Result<UqTensor, UqError> {
        let mut out = UqTensor::new();
        for (k, c) in x.terms() {
            self.check_key(k)?;
            let mut acc: UqTensor = [((UqKey::unit(self.lr()), UqKey::unit(self.lr())), ScalarQ::one())].into();
            for g in self.generator_factors(k) {
                acc = self.tensor_multiply(&acc, &self.generator_coproduct(&g))?;
            }
            for (kk, v) in acc {
                add_into(&mut out, kk, &(c * &v));
            }
        }
        Ok(out)
    }

    /// `ε`: the coefficient of pure Cartan terms, each `K_λ` counting 1.
    pub fn counit(&self, x: &UqElement) -> ScalarQ {
        let mut acc = ScalarQ::zero();
        for (k, c) in x.terms() {
            if k.f.is_empty() && k.e.is_empty() {
                acc += c;
            }
        }
        acc
    }

    fn anti_map(&self, x: &UqElement, inverse: bool) -> Result<UqElement, UqError> {
        let mut out = UqElement::zero();
        for (k, c) in x.terms() {
            self.check_key(k)?;
            let mut factors: Vec<UqElement> = Vec::new();
            for g in self.generator_factors(k).into_iter().rev() {
                let (gk, _) = g.terms().iter().next().unwrap();
                let img = if let Some(&i) = gk.e.first() {
                    // S(E) = -E t^{-1}, S^{-1}(E) = -t^{-1} E
                    let parts = if inverse { [self.t(i, -1), self.e(i)] } else { [self.e(i), self.t(i, -1)] };
                    self.multiply(&parts[0], &parts[1])?.scale(&-ScalarQ::one())
                } else if let Some(&i) = gk.f.first() {
                    // S(F) = -t F, S^{-1}(F) = -F t
                    let parts = if inverse { [self.f(i), self.t(i, 1)] } else { [self.t(i, 1), self.f(i)] };
                    self.multiply(&parts[0], &parts[1])?.scale(&-ScalarQ::one())
                } else {
                    self.k(gk.k.iter().map(|x| -x).collect())
                };
                factors.push(img);
            }
            out = out.add(&self.product(&factors)?.scale(c));
        }
        Ok(out)
    }

    /// Antipode, extended as an algebra anti-homomorphism.
    pub fn antipode(&self, x: &UqElement) -> Result<UqElement, UqError> {
        self.anti_map(x, false)
    }

    pub fn antipode_inverse(&self, x: &UqElement) -> Result<UqElement, UqError> {
        self.anti_map(x, true)
    }

    /// `μ∘(f⊗g)` on a tensor.
    pub fn mu_with<Fa, Fb>(&self, x: &UqTensor, f: Fa, g: Fb) -> Result<UqElement, UqError>
    where
        Fa: Fn(&UqElement) -> Result<UqElement, UqError>,
        Fb: Fn(&UqElement) -> Result<UqElement, UqError>,
    {
        let mut out = UqElement::zero();
        for ((a, b), c) in x {
            let l = f(&UqElement::from_key(a.clone()))?;
            let r = g(&UqElement::from_key(b.clone()))?;
            out = out.add(&self.multiply(&l, &r)?.scale(c));
        }
        Ok(out)
    }

    /// Double pairing `<K_λ E_w, F_u t^n> = q^{-λ(Σ (n - deg u)_j α_j)} (-1)^{|w|} <w, u>`
    /// where `<w, u>` is the Nichols pairing.
    pub fn double_pairing(&self, b: &UqElement, c: &UqElement) -> Result<ScalarQ, UqError> {
        let rank = self.datum.rank();
        let mut acc = ScalarQ::zero();
        for (bk, bc) in b.terms() {
            if !bk.f.is_empty() {
                return Err(UqError::OutsideBorel("upper"));
            }
            for (ck, cc) in c.terms() {
                if !ck.e.is_empty() {
                    return Err(UqError::OutsideBorel("lower"));
                }
                if bk.e.len() != ck.f.len() {
                    continue;
                }
                let n = self.datum.t_coordinates(&ck.k).ok_or_else(|| UqError::NotInTLattice(ck.k.clone()))?;
                let du = multidegree(&ck.f, rank);
                let m: Vec<i64> = n.iter().zip(&du).map(|(a, b)| a - *b as i64).collect();
                let ex = -self.datum.eval(&bk.k, &self.datum.root_combination(&m));
                let mut p = self.nichols.pairing(&bk.e, &ck.f);
                if p.is_zero() {
                    continue;
                }
                if bk.e.len() % 2 == 1 {
                    p = -p;
                }
                acc += &(&(bc * cc) * &p.mul_q_pow(ex));
            }
        }
        Ok(acc)
    }

    fn coproduct2(&self, x: &UqElement) -> Result<Vec<(UqKey, UqKey, UqKey, ScalarQ)>, UqError> {
        let mut out = Vec::new();
        for ((a, b), c) in self.coproduct(x)? {
            for ((a1, a2), d) in self.coproduct(&UqElement::from_key(a))? {
                out.push((a1, a2, b.clone(), &c * &d));
            }
        }
        Ok(out)
    }

    /// `E_w · F_u` computed in the double: `Σ <b1, S^{-1}(c1)> c2 b2 <b3, c3>`.
    pub fn drinfeld_reorder(&self, e_word: &[usize], f_word: &[usize]) -> Result<UqElement, UqError> {
        let deg = e_word.len() + f_word.len();
        if deg > self.cap {
            return Err(UqError::CapExceeded { degree: deg, cap: self.cap });
        }
        let b = self.e_word(e_word)?;
        let c = self.f_word(f_word)?;
        let bs = self.coproduct2(&b)?;
        let cs = self.coproduct2(&c)?;
        let mut out = UqElement::zero();
        let mut sinv: HashMap<UqKey, UqElement> = HashMap::new();
        for (b1, b2, b3, cb) in &bs {
            let b1e = UqElement::from_key(b1.clone());
            let b3e = UqElement::from_key(b3.clone());
            for (c1, c2, c3, cc) in &cs {
                let right = self.double_pairing(&b3e, &UqElement::from_key(c3.clone()))?;
                if right.is_zero() {
                    continue;
                }
                if !sinv.contains_key(c1) {
                    let v = self.antipode_inverse(&UqElement::from_key(c1.clone()))?;
                    sinv.insert(c1.clone(), v);
                }
                let left = self.double_pairing(&b1e, &sinv[c1])?;
                if left.is_zero() {
                    continue;
                }
                let prod = self.multiply(&UqElement::from_key(c2.clone()), &UqElement::from_key(b2.clone()))?;
                out = out.add(&prod.scale(&(&(&left * &right) * &(cb * cc))));
            }
        }
        Ok(out)
    }
}

/// Pass/fail counts for one Hopf axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct AxiomTally {
    pub checked: usize,
    pub failed: Vec<String>,
}

impl AxiomTally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed.push(what());
        }
    }
}

/// Results of [`Uq::hopf_check`], keyed by axiom name.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct HopfReport {
    pub axioms: BTreeMap<String, AxiomTally>,
}

impl HopfReport {
    pub fn passes(&self) -> bool {
        self.axioms.values().all(|t| t.failed.is_empty())
    }

    pub fn total_checks(&self) -> usize {
        self.axioms.values().map(|t| t.checked).sum()
    }

    fn tally(&mut self, name: &str) -> &mut AxiomTally {
        self.axioms.entry(name.to_string()).or_default()
    }
}

type Tensor3 = BTreeMap<(UqKey, UqKey, UqKey), ScalarQ>;

impl Uq {
    /// Named generators `E_i, F_i, t_i, t_i^{-1}`.
    pub fn generators(&self) -> Vec<(String, UqElement)> {
        let mut out = Vec::new();
        for i in 0..self.datum.rank() {
            out.push((format!("E{}", i + 1), self.e(i)));
            out.push((format!("F{}", i + 1), self.f(i)));
            out.push((format!("t{}", i + 1), self.t(i, 1)));
            out.push((format!("t{}^-1", i + 1), self.t(i, -1)));
        }
        out
    }

    fn coproduct_left(&self, x: &UqElement) -> Result<Tensor3, UqError> {
        let mut out = Tensor3::new();
        for ((a, b), c) in self.coproduct(x)? {
            for ((a1, a2), d) in self.coproduct(&UqElement::from_key(a))? {
                add_into(&mut out, (a1, a2, b.clone()), &(&c * &d));
            }
        }
        Ok(out)
    }

    fn coproduct_right(&self, x: &UqElement) -> Result<Tensor3, UqError> {
        let mut out = Tensor3::new();
        for ((a, b), c) in self.coproduct(x)? {
            for ((b1, b2), d) in self.coproduct(&UqElement::from_key(b))? {
                add_into(&mut out, (a.clone(), b1, b2), &(&c * &d));
            }
        }
        Ok(out)
    }

    /// Check the Hopf axioms on single elements (counit, coassociativity,
    /// antipode convolution), on ordered pairs (multiplicativity of the
    /// coproduct) and on ordered triples (associativity).
    pub fn hopf_check(&self, elements: &[(String, UqElement)]) -> Result<HopfReport, UqError> {
        let mut rep = self.hopf_check_unary(elements)?;
        for (nx, x) in elements {
            for (ny, y) in elements {
                let xy = self.multiply(x, y)?;
                let ok = self.coproduct_is_multiplicative(x, y)?;
                rep.tally("coproduct_multiplicative").record(ok, || format!("{nx},{ny}"));
                for (nz, z) in elements {
                    let a = self.multiply(&xy, z)?;
                    let b = self.multiply(x, &self.multiply(y, z)?)?;
                    rep.tally("associativity").record(a == b, || format!("{nx},{ny},{nz}"));
                }
            }
        }
        Ok(rep)
    }

    /// `Δ(xy) = Δ(x)Δ(y)`.
    pub fn coproduct_is_multiplicative(&self, x: &UqElement, y: &UqElement) -> Result<bool, UqError> {
        let lhs = self.coproduct(&self.multiply(x, y)?)?;
        let rhs = self.tensor_multiply(&self.coproduct(x)?, &self.coproduct(y)?)?;
        Ok(lhs == rhs)
    }

    /// The axioms that involve a single element: antipode, counit, coassociativity.
    pub fn hopf_check_unary(&self, elements: &[(String, UqElement)]) -> Result<HopfReport, UqError> {
        let mut rep = HopfReport::default();
        for (name, x) in elements {
            let d = self.coproduct(x)?;
            let eps = self.counit(x);
            let one = self.one().scale(&eps);
            let s_left = self.mu_with(&d, |a| self.antipode(a), |b| Ok(b.clone()))?;
            let s_right = self.mu_with(&d, |a| Ok(a.clone()), |b| self.antipode(b))?;
            rep.tally("antipode").record(s_left == one && s_right == one, || name.clone());
            let mut left = UqElement::zero();
            let mut right = UqElement::zero();
            for ((a, b), c) in &d {
                let ea = self.counit(&UqElement::from_key(a.clone()));
                let eb = self.counit(&UqElement::from_key(b.clone()));
                left.add_term(b.clone(), &(c * &ea));
                right.add_term(a.clone(), &(c * &eb));
            }
            let x_norm = self.normalize(x)?;
            rep.tally("counit").record(left == x_norm && right == x_norm, || name.clone());
            rep.tally("coassociativity").record(self.coproduct_left(x)? == self.coproduct_right(x)?, || name.clone());
        }
        Ok(rep)
    }

    /// `drinfeld_reorder(w, u) == E_w · F_u` for all words with `|w|, |u| ≤ max_len`
    /// and total length within the cap.
    pub fn drinfeld_check(&self, max_len: usize) -> Result<AxiomTally, UqError> {
        let rank = self.datum.rank();
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut frontier: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            frontier = frontier.iter().flat_map(|w| (0..rank).map(move |i| [w.clone(), vec![i]].concat())).collect();
            words.extend(frontier.iter().cloned());
        }
        let mut tally = AxiomTally::default();
        for w in &words {
            for u in &words {
                if w.len() + u.len() > self.cap {
                    continue;
                }
                let lhs = self.drinfeld_reorder(w, u)?;
                let rhs = self.multiply(&self.e_word(w)?, &self.f_word(u)?)?;
                tally.record(lhs == rhs, || format!("E[{}]F[{}]", word_label(w), word_label(u)));
            }
        }
        Ok(tally)
    }
}
