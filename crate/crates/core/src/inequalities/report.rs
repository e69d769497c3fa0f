use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Verdict tolerance relative to [`CheckReport::scale`].
pub const DEFAULT_TOL: f64 = 1e-10;

/// Which statement a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Composition,
    Thm1,
    Cor1,
    Lemma1,
    Thm2,
    CsOneParam,
    Lemma2,
    Thm3,
    Thm4(Part),
    Cor2(Part),
    Dahmani,
    Gruss,
}

/// Sub-statement selector for the four-part results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    A,
    B,
    C,
    D,
}

impl Part {
    pub const ALL: [Part; 4] = [Part::A, Part::B, Part::C, Part::D];

    fn letter(self) -> char {
        match self {
            Part::A => 'a',
            Part::B => 'b',
            Part::C => 'c',
            Part::D => 'd',
        }
    }

    fn from_letter(c: &str) -> Option<Part> {
        match c {
            "a" | "A" => Some(Part::A),
            "b" | "B" => Some(Part::B),
            "c" | "C" => Some(Part::C),
            "d" | "D" => Some(Part::D),
            _ => None,
        }
    }
}

impl FromStr for Part {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Part::from_letter(s).ok_or_else(|| Error::Config(format!("unknown part `{s}`")))
    }
}

impl TheoremId {
    /// Every id that applies to a generated two-function case.
    pub fn case_checks() -> Vec<TheoremId> {
        let mut ids = vec![
            TheoremId::Thm1,
            TheoremId::Cor1,
            TheoremId::Lemma1,
            TheoremId::Thm2,
            TheoremId::CsOneParam,
            TheoremId::Lemma2,
            TheoremId::Thm3,
        ];
        ids.extend(Part::ALL.map(TheoremId::Thm4));
        ids.extend(Part::ALL.map(TheoremId::Cor2));
        ids.push(TheoremId::Dahmani);
        ids.push(TheoremId::Gruss);
        ids
    }

    pub fn is_identity(self) -> bool {
        matches!(
            self,
            TheoremId::Lemma1 | TheoremId::Lemma2 | TheoremId::Composition
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremId::Composition => f.write_str("composition"),
            TheoremId::Thm1 => f.write_str("thm1"),
            TheoremId::Cor1 => f.write_str("cor1"),
            TheoremId::Lemma1 => f.write_str("lemma1"),
            TheoremId::Thm2 => f.write_str("thm2"),
            TheoremId::CsOneParam => f.write_str("cs1"),
            TheoremId::Lemma2 => f.write_str("lemma2"),
            TheoremId::Thm3 => f.write_str("thm3"),
            TheoremId::Thm4(p) => write!(f, "thm4{}", p.letter()),
            TheoremId::Cor2(p) => write!(f, "cor2{}", p.letter()),
            TheoremId::Dahmani => f.write_str("dahmani"),
            TheoremId::Gruss => f.write_str("gruss"),
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let id = match s {
            "composition" => TheoremId::Composition,
            "thm1" => TheoremId::Thm1,
            "cor1" => TheoremId::Cor1,
            "lemma1" => TheoremId::Lemma1,
            "thm2" => TheoremId::Thm2,
            "cs1" => TheoremId::CsOneParam,
            "lemma2" => TheoremId::Lemma2,
            "thm3" => TheoremId::Thm3,
            "dahmani" => TheoremId::Dahmani,
            "gruss" => TheoremId::Gruss,
            _ => {
                let part = |prefix: &str| {
                    s.strip_prefix(prefix)
                        .filter(|rest| rest.len() == 1)
                        .and_then(Part::from_letter)
                };
                if let Some(p) = part("thm4") {
                    TheoremId::Thm4(p)
                } else if let Some(p) = part("cor2") {
                    TheoremId::Cor2(p)
                } else {
                    return Err(Error::UnknownTheorem(s.to_string()));
                }
            }
        };
        Ok(id)
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// `lhs ≤ rhs`; `slack = rhs - lhs`.
    Inequality,
    /// `lhs = rhs`; `slack = |lhs - rhs|`.
    Identity,
}

/// Outcome of checking one statement on one case.
///
/// For inequalities `lhs` is the side expected to be smaller, so a
/// nonnegative `slack` means the statement holds. `scale` is the largest
/// magnitude among the additive terms that make up either side (floor 1) and
/// is what `tol` is measured against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem_id: TheoremId,
    pub kind: CheckKind,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub scale: f64,
    pub tol: f64,
    pub holds: bool,
    pub seed: Option<u64>,
    pub inputs: serde_json::Value,
    /// Auxiliary named values (e.g. alternative forms of a side).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, f64>,
}

impl CheckReport {
    pub fn inequality(
        theorem_id: TheoremId,
        lhs: f64,
        rhs: f64,
        scale: f64,
        inputs: serde_json::Value,
    ) -> Self {
        let mut r = CheckReport {
            theorem_id,
            kind: CheckKind::Inequality,
            lhs,
            rhs,
            slack: rhs - lhs,
            scale: scale.max(1.0),
            tol: DEFAULT_TOL,
            holds: false,
            seed: None,
            inputs,
            extra: BTreeMap::new(),
        };
        r.holds = r.verdict();
        r
    }

    pub fn identity(
        theorem_id: TheoremId,
        lhs: f64,
        rhs: f64,
        scale: f64,
        inputs: serde_json::Value,
    ) -> Self {
        let mut r = CheckReport {
            theorem_id,
            kind: CheckKind::Identity,
            lhs,
            rhs,
            slack: (lhs - rhs).abs(),
            scale: scale.max(1.0),
            tol: DEFAULT_TOL,
            holds: false,
            seed: None,
            inputs,
            extra: BTreeMap::new(),
        };
        r.holds = r.verdict();
        r
    }

    fn verdict(&self) -> bool {
        match self.kind {
            CheckKind::Inequality => self.slack >= -self.tol * self.scale,
            CheckKind::Identity => self.slack <= self.tol * self.scale,
        }
    }

    /// Re-judges the report under a different tolerance.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.holds = self.verdict();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }

    /// `slack / scale`: the normalized margin (inequalities) or residual (identities).
    pub fn normalized_slack(&self) -> f64 {
        self.slack / self.scale
    }
}

/// Running maximum of term magnitudes.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Scale(f64);

impl Scale {
    pub fn new() -> Self {
        Scale(1.0)
    }

    pub fn of(terms: &[f64]) -> Self {
        let mut s = Scale::new();
        s.add(terms);
        s
    }

    pub fn add(&mut self, terms: &[f64]) {
        for t in terms {
            self.0 = self.0.max(t.abs());
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        let mut all = TheoremId::case_checks();
        all.push(TheoremId::Composition);
        for id in all {
            let s = id.to_string();
            assert_eq!(s.parse::<TheoremId>().unwrap(), id);
        }
        assert!(matches!(
            "thm9".parse::<TheoremId>(),
            Err(Error::UnknownTheorem(_))
        ));
        assert!("thm4e".parse::<TheoremId>().is_err());
        assert!("cor2ab".parse::<TheoremId>().is_err());
    }

    #[test]
    fn verdicts() {
        let r = CheckReport::inequality(TheoremId::Thm1, 1.0, 1.0 - 1e-11, 1.0, serde_json::Value::Null);
        assert!(r.holds);
        let r = r.with_tolerance(1e-12);
        assert!(!r.holds);
        let r = CheckReport::identity(TheoremId::Lemma1, 5.0, 5.0 + 1e-9, 10.0, serde_json::Value::Null);
        assert!(!r.holds);
        assert!(r.with_tolerance(1e-9).holds);
    }

    #[test]
    fn json_field_names() {
        let r = CheckReport::inequality(TheoremId::Cor2(Part::B), 0.25, 0.5, 1.0, serde_json::json!({}))
            .with_seed(7);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["theorem_id", "lhs", "rhs", "slack", "scale", "tol", "holds", "seed", "inputs"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["theorem_id"], "cor2b");
        let back: CheckReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
