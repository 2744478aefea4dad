//! Machine-readable run and sweep reports, and their golden-file form.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{RunConfig, Suite};
use crate::error::{Error, Result};
use crate::macparams::PairKind;

pub const SCHEMA_VERSION: u32 = 1;

/// Residuals below this are written as 0 in golden files: they sit at
/// the rounding floor and vary with the platform's libm.
pub const GOLDEN_RESIDUAL_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub status: Status,
    /// Tolerance per gated residual, same keys as `residuals`.
    pub tolerances: BTreeMap<String, f64>,
    pub residuals: BTreeMap<String, f64>,
    /// Reported quantities that are not residuals (masses, gaps, ...).
    pub values: BTreeMap<String, f64>,
    pub counts: BTreeMap<String, i64>,
    pub diagnostics: Vec<String>,
    pub wall_clock_ms: f64,
}

impl SuiteReport {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            status: Status::Pass,
            tolerances: BTreeMap::new(),
            residuals: BTreeMap::new(),
            values: BTreeMap::new(),
            counts: BTreeMap::new(),
            diagnostics: Vec::new(),
            wall_clock_ms: 0.0,
        }
    }

    /// Records a residual and fails the suite if it exceeds `tol`. NaN
    /// fails.
    pub fn gate(&mut self, key: &str, value: f64, tol: f64) {
        self.residuals.insert(key.to_string(), value);
        self.tolerances.insert(key.to_string(), tol);
        if !(value <= tol) {
            self.fail(format!("{key} = {value:.3e} exceeds {tol:.0e}"));
        }
    }

    /// Records an exact count that must be zero.
    pub fn gate_zero(&mut self, key: &str, count: usize) {
        self.counts.insert(key.to_string(), count as i64);
        if count != 0 {
            self.fail(format!("{key} = {count}, expected 0"));
        }
    }

    pub fn value(&mut self, key: &str, v: f64) {
        self.values.insert(key.to_string(), v);
    }

    pub fn count(&mut self, key: &str, n: i64) {
        self.counts.insert(key.to_string(), n);
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.status = Status::Fail;
        self.diagnostics.push(msg.into());
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub version: String,
    pub config: RunConfig,
    pub status: Status,
    pub cone_size: usize,
    pub grid_size: usize,
    /// `|P_c|` from the generating function.
    pub cone_size_generating_function: i64,
    /// `Σ_{λ∈P_c} Δ(λ)`.
    pub n0_brute: Option<f64>,
    /// `Ind(R) · N_c` from the product tables.
    pub n0_formula: Option<f64>,
    pub min_gap: Option<f64>,
    pub condition: Option<f64>,
    /// Construction went through continuation in `g`.
    pub continued: Option<bool>,
    /// Construction failure, if any; the suites that need it then fail.
    pub construction_error: Option<String>,
    pub suites: Vec<SuiteReport>,
    pub wall_clock_ms: f64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    pub fn suite(&self, s: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|r| r.suite == s)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// The report without timings or output path: identical across runs at
    /// fixed thread count and precision.
    pub fn stable_json(&self) -> Result<String> {
        let mut v = serde_json::to_value(self)?;
        strip_volatile(&mut v);
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    }
}

fn strip_volatile(v: &mut Value) {
    if let Value::Object(m) = v {
        m.remove("wall_clock_ms");
        if let Some(Value::Object(cfg)) = m.get_mut("config") {
            cfg.remove("out");
        }
        if let Some(Value::Array(suites)) = m.get_mut("suites") {
            for s in suites {
                if let Value::Object(s) = s {
                    s.remove("wall_clock_ms");
                }
            }
        }
    }
}

fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

fn round_map(v: Option<&mut Value>, f: impl Fn(f64) -> f64) {
    if let Some(Value::Object(m)) = v {
        for x in m.values_mut() {
            if let Some(y) = x.as_f64() {
                *x = Value::from(f(y));
            }
        }
    }
}

/// Golden-file form of a report: stable JSON with residuals rounded to two
/// significant digits (zero below [`GOLDEN_RESIDUAL_FLOOR`]) and other
/// floating-point values to six.
pub fn golden_text(report: &Report) -> Result<String> {
    let mut v = serde_json::to_value(report)?;
    strip_volatile(&mut v);
    let residual = |x: f64| {
        if x.abs() < GOLDEN_RESIDUAL_FLOOR {
            0.0
        } else {
            round_sig(x, 2)
        }
    };
    let value = |x: f64| round_sig(x, 6);
    if let Value::Object(m) = &mut v {
        m.remove("version");
        for key in ["n0_brute", "n0_formula", "min_gap", "condition"] {
            if let Some(x) = m.get(key).and_then(Value::as_f64) {
                m.insert(key.into(), Value::from(value(x)));
            }
        }
        if let Some(Value::Array(suites)) = m.get_mut("suites") {
            for s in suites {
                round_map(s.get_mut("residuals"), residual);
                round_map(s.get_mut("values"), value);
            }
        }
    }
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn diff_values(path: &str, a: &Value, b: &Value, out: &mut Vec<String>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for k in x.keys().chain(y.keys().filter(|k| !x.contains_key(*k))) {
                let p = format!("{path}.{k}");
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => diff_values(&p, u, v, out),
                    (u, v) => out.push(format!("{p}: {u:?} vs {v:?}")),
                }
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                diff_values(&format!("{path}[{i}]"), u, v, out);
            }
        }
        _ if a != b => out.push(format!("{path}: {a} vs {b}")),
        _ => {}
    }
}

/// Differences between a report and a golden file, as `path: got vs
/// expected` lines. Empty means the report matches.
pub fn compare_golden(report: &Report, golden: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(golden)
        .map_err(|e| Error::Config(format!("cannot read golden file {}: {e}", golden.display())))?;
    let expected: Value = serde_json::from_str(&text)?;
    let got: Value = serde_json::from_str(&golden_text(report)?)?;
    let mut out = Vec::new();
    diff_values("$", &got, &expected, &mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub root_type: String,
    pub pair: PairKind,
    pub g_short: String,
    pub g_long: String,
    pub c: i64,
    pub status: Status,
    pub failed_suites: Vec<Suite>,
    pub error: Option<String>,
}

impl SweepEntry {
    pub fn from_report(cfg: &RunConfig, r: &Report) -> Self {
        Self {
            root_type: cfg.root_type.clone(),
            pair: cfg.pair,
            g_short: cfg.g_short.clone(),
            g_long: cfg.g_long.clone(),
            c: cfg.c,
            status: r.status,
            failed_suites: r
                .suites
                .iter()
                .filter(|s| !s.status.is_pass())
                .map(|s| s.suite)
                .collect(),
            error: r.construction_error.clone(),
        }
    }

    pub fn from_error(cfg: &RunConfig, e: &Error) -> Self {
        Self {
            root_type: cfg.root_type.clone(),
            pair: cfg.pair,
            g_short: cfg.g_short.clone(),
            g_long: cfg.g_long.clone(),
            c: cfg.c,
            status: Status::Fail,
            failed_suites: Vec::new(),
            error: Some(e.to_string()),
        }
    }
}

/// Pass/fail matrix over type × pair × g × c.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub version: String,
    pub status: Status,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn new(entries: Vec<SweepEntry>) -> Self {
        let passed = entries.iter().filter(|e| e.status.is_pass()).count();
        Self {
            schema_version: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION").to_string(),
            status: Status::from_ok(passed == entries.len()),
            total: entries.len(),
            passed,
            failed: entries.len() - passed,
            entries,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}
