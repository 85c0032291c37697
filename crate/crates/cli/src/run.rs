//! Subcommand dispatch. Every run produces a JSON report with sorted keys and
//! canonical scalar strings, plus an exit code: 0 success, 1 mathematical
//! failure, 2 configuration error, 3 truncation window too small.

use crate::config::{parse_rational, resolve_datum, Command, ConfigError, JobConfig};
use anqg::analytic::{self, AnalyticError, RadiusParams, Verdict};
use anqg::braided::{word_label, BraidError};
use anqg::cartan::{DatumError, RootDatum};
use anqg::deform::{self, DeformError, LieAlgebra, LinearMap, ParseUgError, SeriesElement, SeriesMap, TruncatedUg, UgElement};
use anqg::nichols::{serre_element, NicholsAlgebra, NicholsError};
use anqg::repcat::{build_mlambda, RepContext, RepError, WeightModule};
use anqg::scalar::{PadicError, PadicParams};
use anqg::uq::{Uq, UqError};
use num_traits::One;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

/// Why a run stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Math(String),
    Config(String),
    Window(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Math(_) => 1,
            Failure::Config(_) => 2,
            Failure::Window(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Math(_) => "math",
            Failure::Config(_) => "config",
            Failure::Window(_) => "window",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Math(m) | Failure::Config(m) | Failure::Window(m) => m,
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

impl From<DatumError> for Failure {
    fn from(e: DatumError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<PadicError> for Failure {
    fn from(e: PadicError) -> Self {
        match e {
            PadicError::NotPrime(_) | PadicError::NonPositiveVh(_) => Failure::Config(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

impl From<NicholsError> for Failure {
    fn from(e: NicholsError) -> Self {
        match e {
            NicholsError::DegreeLimit { .. } => Failure::Window(e.to_string()),
            NicholsError::NonDiagonal | NicholsError::BadMultidegree(_) | NicholsError::Shape { .. } => Failure::Config(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

impl From<UqError> for Failure {
    fn from(e: UqError) -> Self {
        match e {
            UqError::CapExceeded { .. } => Failure::Window(e.to_string()),
            UqError::Nichols(n) => n.into(),
            UqError::IndexOutOfRange(_) | UqError::BadWeight { .. } => Failure::Config(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Window(_) | RepError::CapTooSmall { .. } => Failure::Window(e.to_string()),
            RepError::Uq(u) => u.into(),
            RepError::BadWeight { .. } | RepError::BadGenerator { .. } | RepError::NotRankOne => Failure::Config(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

impl From<AnalyticError> for Failure {
    fn from(e: AnalyticError) -> Self {
        match e {
            AnalyticError::Padic(p) => p.into(),
            _ => Failure::Math(e.to_string()),
        }
    }
}

impl From<DeformError> for Failure {
    fn from(e: DeformError) -> Self {
        match e {
            DeformError::Window { .. } => Failure::Window(e.to_string()),
            DeformError::UnsupportedDatum | DeformError::CochainDegree(_) | DeformError::Shape { .. } => Failure::Config(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

impl From<ParseUgError> for Failure {
    fn from(e: ParseUgError) -> Self {
        match e {
            ParseUgError::Deform(d) => d.into(),
            _ => Failure::Config(format!("plant: {e}")),
        }
    }
}

/// Outcome of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub exit_code: i32,
}

impl Outcome {
    /// Pretty JSON with a trailing newline; keys are sorted.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
        s.push('\n');
        s
    }
}

struct Success {
    result: Value,
    summary: String,
    passed: bool,
}

/// Resolve the config, run the subcommand and assemble the report.
pub fn run(cmd: Command, config: JobConfig) -> Outcome {
    let mut report = Map::new();
    report.insert("command".into(), json!(cmd.name()));
    let resolved = match config.clone().resolve(cmd) {
        Ok(c) => c,
        Err(e) => {
            report.insert("config".into(), serde_json::to_value(&config).expect("config serializes"));
            return finish(report, Err(e.into()));
        }
    };
    report.insert("config".into(), serde_json::to_value(&resolved).expect("config serializes"));
    let datum = match resolve_datum(resolved.datum.as_ref().expect("resolved")) {
        Ok(d) => d,
        Err(e) => return finish(report, Err(e.into())),
    };
    report.insert("datum".into(), serde_json::to_value(datum.raw()).expect("datum serializes"));
    let res = dispatch(cmd, &resolved, &datum);
    finish(report, res)
}

fn finish(mut report: Map<String, Value>, res: Result<Success, Failure>) -> Outcome {
    let (summary, exit_code) = match res {
        Ok(s) => {
            report.insert("result".into(), s.result);
            let code = if s.passed { 0 } else { 1 };
            report.insert("status".into(), json!(if s.passed { "PASS" } else { "FAIL" }));
            (s.summary, code)
        }
        Err(f) => {
            report.insert("error".into(), json!({"kind": f.kind(), "message": f.message()}));
            report.insert("status".into(), json!("ERROR"));
            (format!("ERROR ({}): {}", f.kind(), f.message()), f.exit_code())
        }
    };
    report.insert("summary".into(), json!(summary));
    report.insert("exit_code".into(), json!(exit_code));
    Outcome { report: Value::Object(report), summary, exit_code }
}

fn dispatch(cmd: Command, c: &JobConfig, datum: &RootDatum) -> Result<Success, Failure> {
    match cmd {
        Command::NicholsDims => nichols_dims(c, datum),
        Command::SerreCheck => serre_check(datum),
        Command::HopfCheck => hopf_check(c, datum),
        Command::YbeCheck => ybe_check(c, datum),
        Command::BraidRep => braid_rep(c, datum),
        Command::Verma => verma(c, datum),
        Command::Mlambda => mlambda(c, datum),
        Command::ConvergeCert => converge_cert(c),
        Command::Admissible => admissible(c, datum),
        Command::RigiditySolve => rigidity_solve(c, datum),
        Command::Trivialize => trivialize(c, datum),
    }
}

fn tuple_label(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn nichols_dims(c: &JobConfig, datum: &RootDatum) -> Result<Success, Failure> {
    let max = c.max_degree.expect("resolved");
    let nichols = NicholsAlgebra::for_datum(datum, max);
    let dims = nichols.dims_up_to(max)?;
    let table: Map<String, Value> = dims.iter().map(|(d, n)| (tuple_label(d), json!(n))).collect();
    let total: usize = dims.values().sum();
    Ok(Success {
        result: json!({ "dimensions": table }),
        summary: format!("PASS: {} multidegrees, total dimension {total}", dims.len()),
        passed: true,
    })
}

fn serre_check(datum: &RootDatum) -> Result<Success, Failure> {
    let rank = datum.rank();
    let mut max = 2;
    for i in 0..rank {
        for j in 0..rank {
            if i != j {
                max = max.max((2 - datum.cartan_entry(i, j)) as usize);
            }
        }
    }
    let nichols = NicholsAlgebra::for_datum(datum, max);
    let mut rows = Map::new();
    let mut in_radical = 0;
    let mut total = 0;
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            total += 1;
            let s = serre_element(datum, i, j)?;
            let ok = nichols.reduce_mod_radical(&s)?.is_zero();
            if ok {
                in_radical += 1;
            }
            rows.insert(format!("({},{})", i + 1, j + 1), json!({ "element": s.to_string(), "in_radical": ok }));
        }
    }
    let passed = in_radical == total;
    let summary = if passed {
        format!("PASS: {in_radical} Serre elements in radical")
    } else {
        format!("FAIL: {in_radical} of {total} Serre elements in radical")
    };
    Ok(Success { result: json!({ "serre": rows }), summary, passed })
}

fn hopf_check(c: &JobConfig, datum: &RootDatum) -> Result<Success, Failure> {
    let uq = Uq::new(datum.clone(), c.cap.expect("resolved"));
    let rep = uq.hopf_check(&uq.generators())?;
    let drinfeld = uq.drinfeld_check(1)?;
    let passed = rep.passes() && drinfeld.failed.is_empty();
    let checks = rep.total_checks() + drinfeld.checked;
    let mut result = serde_json::to_value(&rep).expect("report serializes");
    result["axioms"]["drinfeld_reorder"] = serde_json::to_value(&drinfeld).expect("tally serializes");
    let summary = if passed { format!("PASS: {checks} Hopf checks") } else { format!("FAIL: Hopf axioms violated ({checks} checks)") };
    Ok(Success { result, summary, passed })
}

fn weight(c: &JobConfig, datum: &RootDatum) -> Vec<i64> {
    c.lambda.clone().unwrap_or_else(|| vec![0; datum.lattice_rank()])
}

fn verma_context(c: &JobConfig, datum: &RootDatum) -> Result<(RepContext, WeightModule, usize), Failure> {
    let depth = c.depth.expect("resolved");
    let ctx = RepContext::new(datum.clone(), c.cap.unwrap_or(depth + 1).max(depth + 1));
    let m = ctx.build_verma(&weight(c, datum), depth)?;
    Ok((ctx, m, depth))
}

fn ybe_check(c: &JobConfig, datum: &RootDatum) -> Result<Success, Failure> {
    let (ctx, m, depth) = verma_context(c, datum)?;
    let holds = ctx.ybe_check(&m, depth, depth as i64)?;
    let summary = if holds { format!("PASS: YBE holds up to depth {depth}") } else { format!("FAIL: YBE fails within depth {depth}") };
    Ok(Success { result: json!({ "ybe": holds, "module": m.name, "dimension": m.dim() }), summary, passed: holds })
}

fn braid_rep(c: &JobConfig, datum: &RootDatum) -> Result<Success, Failure> {
    let (ctx, m, depth) = verma_context(c, datum)?;
    let strands = c.strands.expect("resolved");
    let word = c.word.clone().expect("resolved");
    let rep = ctx.braid_rep(&m, strands, &word, depth, depth as i64)?;
    let label = |t: &[usize]| t.iter().map(|&i| m.labels[i].clone()).collect::<Vec<_>>().join(" (x) ");
    let mut cols = Map::new();
    for (src, col) in &rep.columns {
        let entries: Map<String, Value> = col.iter().map(|(dst, v)| (label(dst), json!(v.to_string()))).collect();
        cols.insert(label(src), Value::Object(entries));
    }
    Ok(Success {
        result: json!({ "shift": rep.shift.to_string(), "columns": cols, "size": rep.columns.len() }),
        summary: format!("PASS: {} x {} matrix times q^({})", rep.columns.len(), rep.columns.len(), rep.shift),
        passed: true,
    })
}

fn module_json(m: &WeightModule) -> Value {
    let col_json = |col: &Option<anqg::repcat::SparseCol>| -> Value {
        match col {
            None => json!("outside window"),
            Some(x) => Value::Object(x.iter().map(|(k, v)| (m.labels[*k].clone(), json!(v.to_string()))).collect()),
        }
    };
    let mut basis = Map::new();
    for v in 0..m.dim() {
        let mut e = Map::new();
        let mut f = Map::new();
        for i in 0..m.rank() {
            e.insert(format!("E{}", i + 1), col_json(&m.e_action[i][v]));
            f.insert(format!("F{}", i + 1), col_json(&m.f_action[i][v]));
        }
        basis.insert(
            m.labels[v].clone(),
            json!({
                "weight": m.weights[v],
                "depth": m.depth[v],
                "norm_exponent": m.norm_exponents[v].to_string(),
                "E": e,
                "F": f,
            }),
        );
    }
    json!({ "name": m.name, "dimension": m.dim(), "basis": basis })
}

fn verma(c: &JobConfig, datum: &RootDatum) -> Result<Success, Failure> {
    let (ctx, m, depth) = verma_context(c, datum)?;
    let mut coaction = Map::new();
    for v in 0..m.dim() {
        let co = ctx.coaction(&m, v, depth)?;
        let terms: Map<String, Value> = co
            .iter()
            .map(|((w, u), s)| (format!("F[{}] (x) {}", word_label(w), m.labels[*u]), json!(s.to_string())))
            .collect();
        coaction.insert(m.labels[v].clone(), Value::Object(terms));
    }
    let mut module = module_json(&m);
    module["coaction"] = Value::Object(coaction);
    Ok(Success { result: module, summary: format!("PASS: {} of dimension {}", m.name, m.dim()), passed: true })
}

fn mlambda(c: &JobConfig, datum: &RootDatum) -> Result<Success, Failure> {
    let lambda = c.lambda.as_ref().expect("resolved");
    if lambda.len() != 1 {
        return Err(Failure::Config("mlambda takes a single integer lambda".into()));
    }
    let m = build_mlambda(datum, lambda[0], c.i_max.expect("resolved"), c.j_max.expect("resolved"))?;
    Ok(Success { result: module_json(&m), summary: format!("PASS: {} of dimension {}", m.name, m.dim()), passed: true })
}

fn padic(c: &JobConfig) -> Result<(PadicParams, RadiusParams), Failure> {
    let vh = parse_rational("vh", c.vh.as_deref().unwrap_or("1"))?;
    let params = PadicParams::new(c.p.expect("resolved"), vh)?;
    let radii = RadiusParams::new(
        parse_rational("r_exp", c.r_exp.as_deref().unwrap_or("0"))?,
        parse_rational("s_exp", c.s_exp.as_deref().unwrap_or("0"))?,
    );
    Ok((params, radii))
}

fn converge_cert(c: &JobConfig) -> Result<Success, Failure> {
    let (params, radii) = padic(c)?;
    let cert = analytic::coaction_convergence(&params, &radii)?;
    analytic::verify_certificate(&cert, &params)?;
    let mut terms = Map::new();
    for k in 0..=cert.verified_prefix {
        terms.insert(format!("{k:02}"), json!(analytic::coaction_term_valuation(k, &params)?.to_string()));
    }
    Ok(Success {
        result: json!({ "certificate": cert, "term_valuations": terms }),
        summary: format!("PASS: slope {} verified on {} terms", cert.slope, cert.verified_prefix),
        passed: true,
    })
}

fn admissible(c: &JobConfig, datum: &RootDatum) -> Result<Success, Failure> {
    let (params, radii) = padic(c)?;
    let verdict = analytic::admissible(datum, &params, &radii)?;
    let rmatrix = match analytic::rmatrix_condition(datum, &params) {
        Ok(b) => json!(b),
        Err(e) => json!(e.to_string()),
    };
    let word = match verdict {
        Verdict::True => "PASS",
        Verdict::False => "FAIL",
        Verdict::Indeterminate => "INDETERMINATE",
    };
    Ok(Success {
        result: json!({ "admissible": word, "rmatrix_condition": rmatrix }),
        summary: word.to_string(),
        passed: verdict == Verdict::True,
    })
}

fn ug_for(c: &JobConfig, datum: &RootDatum) -> Result<TruncatedUg, Failure> {
    Ok(TruncatedUg::new(LieAlgebra::from_datum(datum)?, c.window.expect("resolved")))
}

fn rigidity_solve(c: &JobConfig, datum: &RootDatum) -> Result<Success, Failure> {
    let ug = ug_for(c, datum)?;
    let n = c.order.expect("resolved");
    let names = ug.lie().names().to_vec();
    let plant = deform::parse_ug_element(c.plant.as_deref().expect("resolved"), &ug)?;
    let d = SeriesMap::inclusion(&ug, n);
    let mut f0 = vec![ug.one(), plant];
    f0.resize(n + 1, UgElement::zero());
    let mut dp = deform::conjugate_series(&ug, &SeriesElement { coeffs: f0 }, &d, n)?;
    if c.obstruct == Some(true) {
        // h·1 added to the last generator is not a derivation of the bracket
        let last = ug.gen_mono(ug.dim() - 1);
        let col = dp.coeffs[1].cols.entry(last).or_default();
        *col = col.add(&ug.one());
    }
    let res = deform::rigidity_conjugator(&ug, &d, &dp, n, c.search_degree.expect("resolved"))?;
    let p = c.p.expect("resolved");
    let conj: Map<String, Value> =
        res.conjugator.coeffs.iter().enumerate().map(|(i, x)| (format!("h^{i}"), json!(x.render(&names)))).collect();
    let steps: Vec<Value> = res
        .steps
        .iter()
        .map(|s| json!({ "order": s.order, "u": s.u.render(&names), "min_valuation": s.u.min_valuation(p) }))
        .collect();
    Ok(Success {
        result: json!({ "conjugator": conj, "steps": steps, "residual": format!("0 mod h^{}", n + 1) }),
        summary: format!("PASS: conjugator verified modulo h^{}", n + 1),
        passed: true,
    })
}

fn parse_gauge(ug: &TruncatedUg, text: &str) -> Result<LinearMap, Failure> {
    let monos = ug.monomials_up_to(ug.max_degree());
    let mut beta = LinearMap { cols: monos.iter().map(|m| (m.clone(), UgElement::zero())).collect() };
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| Failure::Config(format!("plant: expected name=element, got {part:?}")))?;
        let idx = ug.lie().index_of(name.trim()).ok_or_else(|| Failure::Config(format!("plant: unknown generator {name:?}")))?;
        let v = deform::parse_ug_element(value, ug)?;
        if v.degree() > 1 {
            return Err(Failure::Config(format!("plant: image of {name} must have degree at most 1")));
        }
        beta.cols.insert(ug.gen_mono(idx), v);
    }
    Ok(beta)
}

fn trivialize(c: &JobConfig, datum: &RootDatum) -> Result<Success, Failure> {
    let ug = ug_for(c, datum)?;
    let n = c.order.expect("resolved");
    let names = ug.lie().names().to_vec();
    let beta = parse_gauge(&ug, c.plant.as_deref().expect("resolved"))?;
    let monos = ug.monomials_up_to(ug.max_degree());
    let mut mu = deform::transported_multiplication(&ug, &[LinearMap::identity(&monos), beta], n)?;
    if c.obstruct == Some(true) {
        let f = deform::find_obstructed_perturbation(&ug)?
            .ok_or_else(|| Failure::Math("no obstructed perturbation exists on this window".into()))?;
        for (k, v) in f {
            let e = mu[1].entry(k).or_default();
            *e = e.add(&v);
        }
    }
    let res = deform::mult_trivialize(&ug, &mu, n)?;
    let one = num_rational::BigRational::one();
    let mut gauge = Map::new();
    for (i, lm) in res.gauge.coeffs.iter().enumerate().skip(1) {
        let cols: BTreeMap<String, Value> = lm
            .cols
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| (UgElement::monomial(m.clone(), one.clone()).render(&names), json!(v.render(&names))))
            .collect();
        gauge.insert(format!("h^{i}"), serde_json::to_value(cols).expect("map serializes"));
    }
    let steps: Vec<Value> = res.steps.iter().map(|s| json!({ "order": s.order, "support": s.support })).collect();
    Ok(Success {
        result: json!({ "gauge": gauge, "steps": steps, "residual": format!("0 mod h^{}", n + 1) }),
        summary: format!("PASS: multiplication trivialized modulo h^{}", n + 1),
        passed: true,
    })
}
