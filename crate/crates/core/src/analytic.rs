//! Norm layer: radii, admissibility, the R-matrix bound, convergence
//! certificates and entry-level operator-norm checks.
//!
//! Norms are never materialized: `|x| = p^{-v(x)}` and radii `r = p^{r_exp}`,
//! so every comparison is between rational exponents.

use crate::braided::words_of_multidegree;
use crate::cartan::RootDatum;
use crate::nichols::{braided_coproduct, multidegrees_of_total};
use crate::braided::TensorElement;
use crate::repcat::WeightModule;
use crate::scalar::{
    gauss_valuation, q_diff, q_int, rat, vp_rational, ExtRational, PadicError, PadicParams, ScalarQ,
};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Number of terms re-verified by brute force in a certificate.
pub const CERTIFIED_PREFIX: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalyticError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("pairing matrix is singular")]
    SingularPairing,
    #[error("slope <= 0: v(h) - 1/(p-1) = {0}")]
    SlopeNonPositive(BigRational),
    #[error("term {k} fails its certified bound")]
    CertificateFailed { k: usize },
}

/// Radii `r = p^{r_exp}`, `s = p^{s_exp}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusParams {
    #[serde(with = "crate::scalar::rational_string")]
    pub r_exp: BigRational,
    #[serde(with = "crate::scalar::rational_string")]
    pub s_exp: BigRational,
}

impl RadiusParams {
    pub fn new(r_exp: BigRational, s_exp: BigRational) -> Self {
        RadiusParams { r_exp, s_exp }
    }

    pub fn from_ints(r: i64, s: i64) -> Self {
        RadiusParams { r_exp: rat(r), s_exp: rat(s) }
    }
}

/// Three-valued answer for checks on inexact valuations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    True,
    False,
    Indeterminate,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::True
    }
}

/// Is `v(x) <= bound`? Decided from a Gauss bound.
fn valuation_at_most(x: &ScalarQ, bound: &BigRational, params: &PadicParams) -> Result<Verdict, AnalyticError> {
    let v = gauss_valuation(x, params)?;
    Ok(match &v.lower {
        ExtRational::Infinity => Verdict::False,
        ExtRational::Finite(l) if l > bound => Verdict::False,
        ExtRational::Finite(_) if v.exact => Verdict::True,
        ExtRational::Finite(_) => Verdict::Indeterminate,
    })
}

/// `1 ≤ |q_i - q_i^{-1}| r s` for every `i`, i.e. `v(q_i - q_i^{-1}) ≤ r_exp + s_exp`.
pub fn admissible(datum: &RootDatum, params: &PadicParams, radii: &RadiusParams) -> Result<Verdict, AnalyticError> {
    let bound = &radii.r_exp + &radii.s_exp;
    let mut out = Verdict::True;
    for i in 0..datum.rank() {
        match valuation_at_most(&q_diff(datum.symmetrizer(i)), &bound, params)? {
            Verdict::False => return Ok(Verdict::False),
            Verdict::Indeterminate => out = Verdict::Indeterminate,
            Verdict::True => {}
        }
    }
    Ok(out)
}

/// `|h| max |A^{-1}_{ij}| < p^{1/(1-p)}`, i.e. `v(h) + min v_p(A^{-1}_{ij}) > 1/(p-1)`.
pub fn rmatrix_condition(datum: &RootDatum, params: &PadicParams) -> Result<bool, AnalyticError> {
    let a_inv = datum.a_inverse().ok_or(AnalyticError::SingularPairing)?;
    let min = a_inv
        .iter()
        .flatten()
        .filter_map(|x| vp_rational(x, params.p()))
        .min()
        .expect("inverse matrix has a nonzero entry");
    Ok(params.vh() + rat(min) > params.critical())
}

/// Certified lower bound `v_k ≥ slope·k + offset` on the coaction terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceCertificate {
    #[serde(with = "crate::scalar::rational_string")]
    pub slope: BigRational,
    #[serde(with = "crate::scalar::rational_string")]
    pub offset: BigRational,
    pub verified_prefix: usize,
}

/// Valuation of the k-th coaction coefficient `(q - q^{-1})^k / [k]!`, computed
/// factor by factor from Gauss valuations.
pub fn coaction_term_valuation(k: usize, params: &PadicParams) -> Result<BigRational, AnalyticError> {
    let exact = |x: &ScalarQ| -> Result<BigRational, AnalyticError> {
        let v = gauss_valuation(x, params)?;
        v.value().cloned().ok_or_else(|| AnalyticError::Padic(PadicError::Indeterminate(v.lower.finite().cloned().unwrap_or_default())))
    };
    let mut v = exact(&q_diff(1))? * rat(k as i64);
    for m in 1..=k as i64 {
        v -= exact(&q_int(m))?;
    }
    Ok(v)
}

/// The coaction terms `|(q - q^{-1})^k/[k]!|` (radii cancel) decay with slope
/// `v(h) - 1/(p-1)`: `v_k = k v(h) - v_p(k!) ≥ k (v(h) - 1/(p-1))` by Legendre's
/// formula. The first [`CERTIFIED_PREFIX`] terms are re-verified directly.
pub fn coaction_convergence(params: &PadicParams, _radii: &RadiusParams) -> Result<ConvergenceCertificate, AnalyticError> {
    let slope = params.vh() - params.critical();
    if slope <= BigRational::zero() {
        return Err(AnalyticError::SlopeNonPositive(slope));
    }
    let cert = ConvergenceCertificate { slope, offset: BigRational::zero(), verified_prefix: CERTIFIED_PREFIX };
    verify_certificate(&cert, params)?;
    Ok(cert)
}

/// Brute-force check of a certificate on its prefix.
pub fn verify_certificate(cert: &ConvergenceCertificate, params: &PadicParams) -> Result<(), AnalyticError> {
    for k in 0..=cert.verified_prefix {
        let v = coaction_term_valuation(k, params)?;
        if v < &cert.slope * rat(k as i64) + &cert.offset {
            return Err(AnalyticError::CertificateFailed { k });
        }
    }
    Ok(())
}

/// Outcome of [`norm_contract_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormReport {
    pub checked: usize,
    pub violations: Vec<String>,
    pub indeterminate: Vec<String>,
}

impl NormReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty() && self.indeterminate.is_empty()
    }
}

/// Largest word degree for the coproduct check.
pub const COPRODUCT_CHECK_DEGREE: usize = 4;

fn nonneg(report: &mut NormReport, x: &ScalarQ, what: impl FnOnce() -> String, params: &PadicParams) -> Result<(), AnalyticError> {
    report.checked += 1;
    if x.is_zero() {
        return Ok(());
    }
    let v = gauss_valuation(x, params)?;
    match v.lower {
        ExtRational::Finite(l) if l < BigRational::zero() => {
            if v.exact {
                report.violations.push(what());
            } else {
                report.indeterminate.push(what());
            }
        }
        _ => {}
    }
    Ok(())
}

/// Entry-level operator-norm contract: braiding coefficients and braided
/// coproduct coefficients on words of degree ≤ 4 have valuation ≥ 0, and the
/// module actions satisfy `‖X·x‖ ≤ ‖X‖ ‖x‖` with `‖E_i‖ = s`, `‖F_i‖ = r`,
/// `‖K‖ = 1`, where `‖x‖ = r^{norm exponent}`.
pub fn norm_contract_check(
    datum: &RootDatum,
    params: &PadicParams,
    radii: &RadiusParams,
    modules: &[&WeightModule],
) -> Result<NormReport, AnalyticError> {
    params.require_convergence()?;
    let mut report = NormReport::default();
    let space = datum.braided_space();
    let n = datum.rank();
    for i in 0..n {
        for j in 0..n {
            nonneg(&mut report, space.coeff(i, j), || format!("braiding coefficient ({},{})", i + 1, j + 1), params)?;
        }
    }
    for t in 1..=COPRODUCT_CHECK_DEGREE {
        for d in multidegrees_of_total(n, t) {
            for w in words_of_multidegree(&d) {
                for ((l, r), c) in braided_coproduct(&space, &TensorElement::word(w.clone())) {
                    nonneg(&mut report, &c, || format!("coproduct of {w:?} at ({l:?}, {r:?})"), params)?;
                }
            }
        }
    }
    for m in modules {
        for (kind, table, op) in [("E", &m.e_action, &radii.s_exp), ("F", &m.f_action, &radii.r_exp)] {
            for (i, cols) in table.iter().enumerate() {
                for (v, col) in cols.iter().enumerate() {
                    let Some(col) = col else { continue };
                    // v(c) ≥ (e_w - e_v) r_exp - op_exp
                    let src = &m.norm_exponents[v] * &radii.r_exp + op;
                    for (&w, c) in col {
                        report.checked += 1;
                        let need = &m.norm_exponents[w] * &radii.r_exp - &src;
                        let g = gauss_valuation(c, params)?;
                        let ok = match &g.lower {
                            ExtRational::Infinity => true,
                            ExtRational::Finite(l) => l >= &need,
                        };
                        if !ok {
                            let msg = format!("{}: |{kind}{} {} -> {}| exceeds the operator bound", m.name, i + 1, m.labels[v], m.labels[w]);
                            if g.exact {
                                report.violations.push(msg);
                            } else {
                                report.indeterminate.push(msg);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::load_preset;
    use crate::repcat::build_mlambda;
    use crate::scalar::ratio;

    fn p5() -> PadicParams {
        PadicParams::from_ints(5, 1, 1).unwrap()
    }

    #[test]
    fn admissible_examples() {
        let a1 = load_preset("A1").unwrap();
        assert_eq!(admissible(&a1, &p5(), &RadiusParams::from_ints(1, 0)).unwrap(), Verdict::True);
        assert_eq!(admissible(&a1, &p5(), &RadiusParams::from_ints(0, 0)).unwrap(), Verdict::False);
        assert_eq!(admissible(&a1, &p5(), &RadiusParams::from_ints(1000, 1000)).unwrap(), Verdict::True);
    }

    #[test]
    fn rmatrix_examples() {
        let a1 = load_preset("A1").unwrap();
        assert!(rmatrix_condition(&a1, &p5()).unwrap());
        let small = PadicParams::new(5, ratio(1, 5)).unwrap();
        assert!(!rmatrix_condition(&a1, &small).unwrap());
        assert!(rmatrix_condition(&load_preset("A1xA1").unwrap(), &p5()).unwrap());
    }

    #[test]
    fn convergence_examples() {
        let r = RadiusParams::from_ints(1, 0);
        let c = coaction_convergence(&p5(), &r).unwrap();
        assert_eq!(c.slope, ratio(3, 4));
        assert_eq!(coaction_term_valuation(5, &p5()).unwrap(), rat(4));
        let edge = PadicParams::new(5, ratio(1, 4)).unwrap();
        assert!(matches!(coaction_convergence(&edge, &r), Err(AnalyticError::SlopeNonPositive(_))));
    }

    #[test]
    fn mlambda_norms() {
        let a1 = load_preset("A1").unwrap();
        let m = build_mlambda(&a1, 3, 3, 3).unwrap();
        let rep = norm_contract_check(&a1, &p5(), &RadiusParams::from_ints(1, 0), &[&m]).unwrap();
        assert!(rep.passes(), "{rep:?}");
        let rep = norm_contract_check(&a1, &p5(), &RadiusParams::from_ints(0, -1), &[&m]).unwrap();
        assert!(rep.violations.iter().any(|v| v.contains("|E1")));
    }
}
