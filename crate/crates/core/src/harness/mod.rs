//! Run configuration, verification suites, JSON reports, sweeps and golden
//! comparisons.

mod report;
mod suites;


use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macparams::{AdmissiblePair, Multiplicity, PairKind, UnitarySpec};
use crate::numeric::Precision;
use crate::rational::{format_rational, parse_rational};
use crate::rootsys::CartanType;

pub use report::{
    compare_golden, golden_text, Report, Status, SuiteReport, SweepEntry, SweepReport,
    GOLDEN_RESIDUAL_FLOOR, SCHEMA_VERSION,
};
pub use suites::run_suites;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Orthogonality,
    Norms,
    Mass,
    Duality,
    Pieri,
    Weyl,
    Nondegeneracy,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Orthogonality,
        Suite::Norms,
        Suite::Mass,
        Suite::Duality,
        Suite::Pieri,
        Suite::Weyl,
        Suite::Nondegeneracy,
        Suite::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Norms => "norms",
            Suite::Mass => "mass",
            Suite::Duality => "duality",
            Suite::Pieri => "pieri",
            Suite::Weyl => "weyl",
            Suite::Nondegeneracy => "nondegeneracy",
            Suite::Lemmas => "lemmas",
        }
    }

    /// Suites that need the polynomials themselves.
    pub fn needs_construction(self) -> bool {
        matches!(
            self,
            Suite::Orthogonality | Suite::Norms | Suite::Duality | Suite::Pieri
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// Parses `a,b,c`. `all` selects every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out: Vec<Suite> = s
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::Config("no suites selected".into()));
    }
    Ok(out)
}

/// Negative control: scale `Δ̂` at one grid point before the
/// orthogonality and norm suites evaluate it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub grid_index: usize,
    pub factor: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Family letter with rank, e.g. `"B3"`.
    pub root_type: String,
    pub pair: PairKind,
    pub g_short: String,
    pub g_long: String,
    pub c: i64,
    pub suites: Vec<Suite>,
    pub precision: Precision,
    /// Worker threads; 0 leaves the choice to rayon.
    pub threads: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub allow_degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Perturbation>,
}

impl RunConfig {
    /// A config with every suite, double precision and default threads.
    /// `g_long` defaults to `g_short`.
    pub fn new(
        root_type: &str,
        pair: PairKind,
        g_short: &str,
        g_long: Option<&str>,
        c: i64,
    ) -> Result<Self> {
        let cfg = Self {
            root_type: root_type.to_string(),
            pair,
            g_short: g_short.to_string(),
            g_long: g_long.unwrap_or(g_short).to_string(),
            c,
            suites: Suite::ALL.to_vec(),
            precision: Precision::Double,
            threads: 0,
            out: None,
            allow_degenerate: false,
            perturbation: None,
        };
        cfg.normalized()
    }

    pub fn with_suites(mut self, suites: &[Suite]) -> Self {
        self.suites = suites.to_vec();
        self.suites.sort();
        self.suites.dedup();
        self
    }

    /// Validates the config and rewrites `g` and the type label in canonical
    /// form, so that parsing the result again is the identity.
    pub fn normalized(mut self) -> Result<Self> {
        let ty = CartanType::parse(&self.root_type, None)?;
        self.root_type = ty.to_string();
        self.g_short = format_rational(&parse_rational(&self.g_short)?);
        self.g_long = format_rational(&parse_rational(&self.g_long)?);
        self.suites.sort();
        self.suites.dedup();
        self.spec()?;
        Ok(self)
    }

    pub fn cartan_type(&self) -> Result<CartanType> {
        CartanType::parse(&self.root_type, None)
    }

    pub fn multiplicity(&self) -> Result<Multiplicity> {
        Multiplicity::new(
            parse_rational(&self.g_short)?,
            parse_rational(&self.g_long)?,
        )
    }

    /// The unitary specialization this config describes. Rejects `c ≤ 1`,
    /// mismatched `g` on simply laced types and `E7` with `c ∈ 6·{2,3,…}`
    /// unless `allow_degenerate` is set.
    pub fn spec(&self) -> Result<UnitarySpec> {
        let pair = AdmissiblePair::build(self.cartan_type()?, self.pair)?;
        Ok(
            UnitarySpec::new(pair, self.multiplicity()?, self.c, self.allow_degenerate)?
                .with_precision(self.precision),
        )
    }

    pub fn label(&self) -> String {
        format!(
            "{} {} g=({},{}) c={}",
            self.root_type, self.pair, self.g_short, self.g_long, self.c
        )
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<Self>(s)?.normalized()
    }

    /// A JSON array of configs, each normalized.
    pub fn list_from_json(s: &str) -> Result<Vec<Self>> {
        serde_json::from_str::<Vec<Self>>(s)?
            .into_iter()
            .map(Self::normalized)
            .collect()
    }
}

/// Runs `f` on a pool of `threads` workers; 0 uses the global pool.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {threads} worker threads: {e}")))?;
    Ok(pool.install(f))
}

/// Runs every selected suite. Configuration errors are returned as `Err`;
/// suite failures are recorded in the report.
pub fn run_verification(config: &RunConfig) -> Result<Report> {
    let config = config.clone().normalized()?;
    let spec = config.spec()?;
    with_threads(config.threads, || run_suites(&config, &spec))?
}

/// Runs each config and aggregates the verdicts. A config that errors is
/// recorded as failed; the rest of the sweep continues.
pub fn sweep(configs: &[RunConfig]) -> SweepReport {
    let entries: Vec<SweepEntry> = configs
        .par_iter()
        .map(|cfg| match run_verification(cfg) {
            Ok(r) => SweepEntry::from_report(cfg, &r),
            Err(e) => SweepEntry::from_error(cfg, &e),
        })
        .collect();
    SweepReport::new(entries)
}

/// The g samples of the shipped sweep.
pub const SWEEP_G: [(&str, &str); 3] = [("7/10", "11/20"), ("1", "1"), ("1/3", "1/3")];

/// Classical types of rank at most 4 together with `G2` and `F4`.
pub fn sweep_types() -> Vec<CartanType> {
    [
        "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4",
    ]
    .iter()
    .map(|t| CartanType::parse(t, None).expect("static label"))
    .collect()
}

/// Both admissible pairs where they differ, i.e. only `self` on simply
/// laced types.
pub fn pair_kinds(ty: CartanType) -> Vec<PairKind> {
    if ty.is_simply_laced() {
        vec![PairKind::SelfDual]
    } else {
        vec![PairKind::SelfDual, PairKind::Dual]
    }
}

/// The shipped sweep over [`sweep_types`], [`SWEEP_G`] and `c ∈ {2,3,4}`.
/// Simply laced types take the single multiplicity from `g_short`.
pub fn default_sweep(suites: &[Suite]) -> Vec<RunConfig> {
    let mut out = Vec::new();
    for ty in sweep_types() {
        for pair in pair_kinds(ty) {
            for (gs, gl) in SWEEP_G {
                let gl = if ty.is_simply_laced() { gs } else { gl };
                for c in 2..=4 {
                    let cfg = RunConfig::new(&ty.to_string(), pair, gs, Some(gl), c)
                        .expect("shipped sweep configs are valid")
                        .with_suites(suites);
                    out.push(cfg);
                }
            }
        }
    }
    out
}
