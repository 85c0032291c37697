//! Job configuration: a JSON file and command-line flags merged into one
//! validated, fully resolved record that every report echoes back.

use anqg::cartan::{load_preset, parse_datum_json, RawDatum, RootDatum};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;

/// Subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    NicholsDims,
    SerreCheck,
    HopfCheck,
    YbeCheck,
    BraidRep,
    Verma,
    Mlambda,
    ConvergeCert,
    Admissible,
    RigiditySolve,
    Trivialize,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::NicholsDims,
        Command::SerreCheck,
        Command::HopfCheck,
        Command::YbeCheck,
        Command::BraidRep,
        Command::Verma,
        Command::Mlambda,
        Command::ConvergeCert,
        Command::Admissible,
        Command::RigiditySolve,
        Command::Trivialize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::NicholsDims => "nichols-dims",
            Command::SerreCheck => "serre-check",
            Command::HopfCheck => "hopf-check",
            Command::YbeCheck => "ybe-check",
            Command::BraidRep => "braid-rep",
            Command::Verma => "verma",
            Command::Mlambda => "mlambda",
            Command::ConvergeCert => "converge-cert",
            Command::Admissible => "admissible",
            Command::RigiditySolve => "rigidity-solve",
            Command::Trivialize => "trivialize",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A preset name, a path to a datum file, or an inline datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DatumSpec {
    Name(String),
    Inline(RawDatum),
}

/// Every knob of every subcommand; unset fields take per-command defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    /// Rational written as a string, e.g. `"1/5"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vh: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_exp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_exp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strands: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_max: Option<usize>,
    /// Truncation order in h.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// PBW window degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_degree: Option<usize>,
    /// Planted gauge: an element for `rigidity-solve`, `name=element;...` for `trivialize`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruct: Option<bool>,
}

/// Configuration problems; exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Largest accepted window, depth, cap or order; keeps runs desk-sized.
pub const MAX_SIZE: usize = 24;

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError(format!("config: {e}")))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merged(mut self, over: JobConfig) -> JobConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(datum, p, vh, r_exp, s_exp, max_degree, cap, depth, lambda, strands, word, i_max, j_max, order, window, search_degree, plant, obstruct);
        self
    }

    /// Fill in per-command defaults and validate ranges. The datum itself is
    /// resolved by [`resolve_datum`].
    pub fn resolve(mut self, cmd: Command) -> Result<JobConfig, ConfigError> {
        use Command::*;
        if self.datum.is_none() {
            self.datum = Some(DatumSpec::Name("A1".into()));
        }
        let analytic = matches!(cmd, ConvergeCert | Admissible | RigiditySolve);
        if analytic {
            self.p.get_or_insert(5);
        }
        if matches!(cmd, ConvergeCert | Admissible) {
            self.vh.get_or_insert_with(|| "1".into());
            self.r_exp.get_or_insert_with(|| "0".into());
            self.s_exp.get_or_insert_with(|| "0".into());
        }
        match cmd {
            NicholsDims => {
                self.max_degree.get_or_insert(4);
            }
            HopfCheck => {
                self.cap.get_or_insert(3);
            }
            YbeCheck | Verma => {
                self.depth.get_or_insert(3);
            }
            BraidRep => {
                self.depth.get_or_insert(2);
                self.strands.get_or_insert(3);
                if self.word.is_none() {
                    return Err(ConfigError("braid-rep needs a word".into()));
                }
            }
            Mlambda => {
                self.lambda.get_or_insert_with(|| vec![1]);
                self.i_max.get_or_insert(2);
                self.j_max.get_or_insert(2);
            }
            RigiditySolve => {
                self.window.get_or_insert(6);
                self.search_degree.get_or_insert(3);
                self.order.get_or_insert(4);
                self.plant.get_or_insert_with(|| "E".into());
                self.obstruct.get_or_insert(false);
            }
            Trivialize => {
                self.window.get_or_insert(3);
                self.order.get_or_insert(1);
                self.plant.get_or_insert_with(|| "F=H;H=E+1".into());
                self.obstruct.get_or_insert(false);
            }
            SerreCheck | ConvergeCert | Admissible => {}
        }
        for (name, v) in [
            ("max_degree", self.max_degree),
            ("cap", self.cap),
            ("depth", self.depth),
            ("strands", self.strands),
            ("i_max", self.i_max),
            ("j_max", self.j_max),
            ("order", self.order),
            ("window", self.window),
            ("search_degree", self.search_degree),
        ] {
            if let Some(v) = v {
                if v > MAX_SIZE {
                    return Err(ConfigError(format!("{name} = {v} exceeds {MAX_SIZE}")));
                }
            }
        }
        if let Some(s) = self.strands {
            if s < 2 {
                return Err(ConfigError("strands must be at least 2".into()));
            }
        }
        if self.order == Some(0) {
            return Err(ConfigError("order must be at least 1".into()));
        }
        if let (Some(w), Some(s)) = (self.window, self.search_degree) {
            if 2 * s > w {
                return Err(ConfigError(format!("search_degree {s} exceeds half the window {w}")));
            }
        }
        Ok(self)
    }
}

/// Load the datum named or given inline in the config.
pub fn resolve_datum(spec: &DatumSpec) -> Result<RootDatum, ConfigError> {
    match spec {
        DatumSpec::Inline(raw) => anqg::cartan::validate_datum(raw.clone()).map_err(|e| ConfigError(format!("datum: {e}"))),
        DatumSpec::Name(name) if name.ends_with(".json") => {
            let text = std::fs::read_to_string(Path::new(name)).map_err(|e| ConfigError(format!("datum file {name}: {e}")))?;
            parse_datum_json(&text).map_err(|e| ConfigError(format!("datum file {name}: {e}")))
        }
        DatumSpec::Name(name) => load_preset(name).map_err(|e| ConfigError(format!("datum: {e}"))),
    }
}

/// Parse a rational string such as `3`, `-1/4`.
pub fn parse_rational(field: &str, s: &str) -> Result<num_rational::BigRational, ConfigError> {
    let t = s.trim();
    let bad = || ConfigError(format!("{field}: not a rational number: {s:?}"));
    if t.is_empty() || t.len() > 64 {
        return Err(bad());
    }
    let r: num_rational::BigRational = t.parse().map_err(|_| bad())?;
    Ok(r)
}

/// Comma-separated integers, optionally in brackets.
pub fn parse_int_list(field: &str, s: &str) -> Result<Vec<i64>, ConfigError> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| ConfigError(format!("{field}: bad integer {x:?}"))))
        .collect()
}
