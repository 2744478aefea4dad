//! Loader and evaluator for the product formulas in `data/mass_tables.txt`.

use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use super::{pochhammer, PairKind, SineScale, UnitarySpec};
use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::rational::{q, Q};
use crate::rootsys::{CartanType, Family};

const MASS_TABLE_TEXT: &str = include_str!("../../data/mass_tables.txt");

/// SHA-256 of the shipped table file. Edits to the data must update this.
pub const MASS_TABLE_SHA256: &str =
    "03f1186ded249f045fd75d9c17f14941e65c8749acec2ef64907b1b5e3dd5fff";

pub fn mass_table_checksum() -> String {
    let digest = Sha256::digest(MASS_TABLE_TEXT.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn verify_mass_table_checksum() -> Result<()> {
    let got = mass_table_checksum();
    if got != MASS_TABLE_SHA256 {
        return Err(Error::Invariant(format!(
            "mass table checksum mismatch: expected {MASS_TABLE_SHA256}, found {got}"
        )));
    }
    Ok(())
}

/// `konst + n·n_coef + k·k_coef + c·c_coef`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
struct Affine {
    konst: i64,
    n: i64,
    k: i64,
    c: i64,
}

impl Affine {
    fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad affine expression {s:?} in mass tables"));
        let mut out = Affine::default();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
            let var = &term[digits.len()..];
            let coef = if digits.is_empty() {
                1
            } else {
                digits.parse::<i64>().map_err(|_| bad())?
            };
            let coef = sign * coef;
            match var {
                "" if !digits.is_empty() => out.konst += coef,
                "n" => out.n += coef,
                "k" => out.k += coef,
                "c" => out.c += coef,
                _ => return Err(bad()),
            }
        }
        Ok(out)
    }

    fn eval(&self, n: i64, k: i64, c: i64) -> i64 {
        self.konst + self.n * n + self.k * k + self.c * c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bound {
    Affine(Affine),
    HalfN,
}

impl Bound {
    fn parse(s: &str) -> Result<Self> {
        if s == "n/2" {
            Ok(Bound::HalfN)
        } else {
            Affine::parse(s).map(Bound::Affine)
        }
    }

    fn eval(&self, n: i64) -> i64 {
        match self {
            Bound::Affine(a) => a.eval(n, 0, 0),
            Bound::HalfN => n / 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScaleTag {
    Phi,
    Theta,
    Kappa,
}

/// One row `(one + g_ϑ·a + g_φ·b : scale)_length ^ power`, possibly
/// repeated over a range of `k`.
#[derive(Clone, Debug)]
pub struct MassFactor {
    type_key: String,
    pair: Option<PairKind>,
    pub scale: ScaleTag,
    one: Affine,
    g_theta: Affine,
    g_phi: Affine,
    length: Affine,
    pub power: i32,
    range: Option<(Bound, Bound)>,
}

#[derive(Clone, Debug)]
struct HgRow {
    type_key: String,
    pair: Option<PairKind>,
    g_theta: Affine,
    g_phi: Affine,
}

#[derive(Clone, Debug)]
pub struct MassTables {
    hg: Vec<HgRow>,
    factors: Vec<MassFactor>,
}

fn type_key(ty: CartanType) -> String {
    match ty.family {
        Family::A | Family::B | Family::C | Family::D => ty.family.to_string(),
        _ => ty.to_string(),
    }
}

fn parse_pair(s: &str) -> Result<Option<PairKind>> {
    match s {
        "any" => Ok(None),
        other => other.parse().map(Some),
    }
}

fn matches(key: &str, pair: Option<PairKind>, ty: CartanType, kind: PairKind) -> bool {
    key == type_key(ty) && pair.is_none_or(|p| p == kind)
}

impl MassTables {
    pub fn parse(text: &str) -> Result<Self> {
        let mut hg = Vec::new();
        let mut factors = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            let err = || Error::Parse(format!("mass tables line {}: {line:?}", lineno + 1));
            match cols[0] {
                "hg" if cols.len() == 5 => hg.push(HgRow {
                    type_key: cols[1].to_string(),
                    pair: parse_pair(cols[2])?,
                    g_theta: Affine::parse(cols[3])?,
                    g_phi: Affine::parse(cols[4])?,
                }),
                "f" if cols.len() == 10 => {
                    let scale = match cols[3] {
                        "phi" => ScaleTag::Phi,
                        "theta" => ScaleTag::Theta,
                        "kappa" => ScaleTag::Kappa,
                        _ => return Err(err()),
                    };
                    let power: i32 = cols[8].trim_start_matches('+').parse().map_err(|_| err())?;
                    let range = if cols[9] == "-" {
                        None
                    } else {
                        let spec = cols[9].strip_prefix("k=").ok_or_else(err)?;
                        let (lo, hi) = spec.split_once("..").ok_or_else(err)?;
                        Some((Bound::parse(lo)?, Bound::parse(hi)?))
                    };
                    factors.push(MassFactor {
                        type_key: cols[1].to_string(),
                        pair: parse_pair(cols[2])?,
                        scale,
                        one: Affine::parse(cols[4])?,
                        g_theta: Affine::parse(cols[5])?,
                        g_phi: Affine::parse(cols[6])?,
                        length: Affine::parse(cols[7])?,
                        power,
                        range,
                    });
                }
                _ => return Err(err()),
            }
        }
        Ok(Self { hg, factors })
    }

    /// Tabulated `h_g` for the given type and pair, if present.
    pub fn h_g(&self, ty: CartanType, kind: PairKind, g_short: Q, g_long: Q) -> Option<Q> {
        let n = ty.rank as i64;
        self.hg
            .iter()
            .find(|r| matches(&r.type_key, r.pair, ty, kind))
            .map(|r| q(r.g_theta.eval(n, 0, 0)) * g_short + q(r.g_phi.eval(n, 0, 0)) * g_long)
    }

    pub fn has_entry(&self, ty: CartanType, kind: PairKind) -> bool {
        self.factors
            .iter()
            .any(|f| matches(&f.type_key, f.pair, ty, kind))
    }

    /// `N_c` for the given specialization.
    pub fn evaluate<R: Real>(&self, spec: &UnitarySpec) -> Result<R> {
        let pair = spec.pair();
        let ty = pair.roots().cartan_type();
        let kind = pair.kind();
        if !self.has_entry(ty, kind) {
            return Err(Error::Domain(format!(
                "no mass table entry for {ty} {kind}"
            )));
        }
        let n = ty.rank as i64;
        let c = spec.c();
        let g = spec.g();
        let mut acc = R::one();
        for f in self
            .factors
            .iter()
            .filter(|f| matches(&f.type_key, f.pair, ty, kind))
        {
            let scale: SineScale = match f.scale {
                ScaleTag::Phi | ScaleTag::Kappa => spec.scale_phi(),
                ScaleTag::Theta => spec.scale_theta(),
            };
            let ks: Vec<i64> = match f.range {
                None => vec![0],
                Some((lo, hi)) => (lo.eval(n)..=hi.eval(n)).collect(),
            };
            for k in ks {
                let a = q(f.one.eval(n, k, c))
                    + q(f.g_theta.eval(n, k, c)) * g.g_short
                    + q(f.g_phi.eval(n, k, c)) * g.g_long;
                let len = f.length.eval(n, k, c);
                let v: R = pochhammer(&a, scale, len);
                acc = acc * v.powi(f.power);
            }
        }
        Ok(acc)
    }
}

/// The shipped tables, parsed once after checksum validation.
pub fn mass_tables() -> Result<&'static MassTables> {
    static TABLES: OnceLock<std::result::Result<MassTables, String>> = OnceLock::new();
    TABLES
        .get_or_init(|| {
            verify_mass_table_checksum().map_err(|e| e.to_string())?;
            MassTables::parse(MASS_TABLE_TEXT).map_err(|e| e.to_string())
        })
        .as_ref()
        .map_err(|e| Error::Invariant(e.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_parser() {
        assert_eq!(
            Affine::parse("n+k-2").unwrap(),
            Affine {
                konst: -2,
                n: 1,
                k: 1,
                c: 0
            }
        );
        assert_eq!(
            Affine::parse("2n-2k").unwrap(),
            Affine {
                konst: 0,
                n: 2,
                k: -2,
                c: 0
            }
        );
        assert_eq!(
            Affine::parse("2c-1").unwrap(),
            Affine {
                konst: -1,
                n: 0,
                k: 0,
                c: 2
            }
        );
        assert_eq!(
            Affine::parse("-1").unwrap(),
            Affine {
                konst: -1,
                ..Default::default()
            }
        );
        assert!(Affine::parse("x").is_err());
        assert!(Affine::parse("").is_err());
    }

    #[test]
    fn shipped_file_checksum_and_parse() {
        verify_mass_table_checksum().unwrap();
        let t = mass_tables().unwrap();
        assert!(t.factors.len() > 40);
        assert!(t.has_entry(CartanType::new(Family::B, 3).unwrap(), PairKind::Dual));
        assert!(t.has_entry(CartanType::new(Family::E, 7).unwrap(), PairKind::SelfDual));
    }

    #[test]
    fn tampered_text_changes_checksum() {
        let digest = Sha256::digest(MASS_TABLE_TEXT.replace("c-1", "c").as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        assert_ne!(hex, MASS_TABLE_SHA256);
    }
}
