//! Evacuation schemes on finite automata.
//!
//! A scheme with constant `K` assigns every vertex a path that ends on the
//! inner boundary `∂Y`, using each directed edge at most `K` times. Pure
//! schemes (`K = 1`) additionally use simple paths and never use an edge
//! together with its inverse.

mod certificate;
pub mod corpus;
mod flow;
mod hall;
mod psi;
mod relabel;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cayley::Automaton;
use crate::error::{Error, Result};

pub use certificate::{verify_flow_certificate, CertificateVerdict, FlowCertificate, Rejection};
pub use flow::{max_flow_value, solve_pure, solve_with_constant, Outcome};
pub use hall::{hall_oracle, hall_oracle_with_constant, HallOutcome, HALL_GUARD};
pub use psi::{relation_to_scheme, scheme_to_relation, PsiPair, PsiRelation};
pub use relabel::{conjugate_relabel, conjugation_identities_hold, validate_multiset, RelabelStats};

/// One traversed edge: `from --letter--> to`, with `letter` a letter name
/// such as `x0` or `x1^-1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(String, String, String)", into = "(String, String, String)")]
pub struct Step {
    pub from: String,
    pub letter: String,
    pub to: String,
}

impl Step {
    pub fn new(from: impl Into<String>, letter: impl Into<String>, to: impl Into<String>) -> Self {
        Step { from: from.into(), letter: letter.into(), to: to.into() }
    }

    /// The same geometric edge traversed backwards.
    pub fn reversed(&self) -> Step {
        Step { from: self.to.clone(), letter: invert_letter_name(&self.letter), to: self.from.clone() }
    }
}

impl From<(String, String, String)> for Step {
    fn from((from, letter, to): (String, String, String)) -> Self {
        Step { from, letter, to }
    }
}

impl From<Step> for (String, String, String) {
    fn from(s: Step) -> Self {
        (s.from, s.letter, s.to)
    }
}

pub(crate) fn invert_letter_name(letter: &str) -> String {
    match letter.strip_suffix("^-1") {
        Some(base) => base.to_string(),
        None => format!("{letter}^-1"),
    }
}

pub(crate) fn symbol_of(letter: &str) -> &str {
    letter.strip_suffix("^-1").unwrap_or(letter)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvacScheme {
    #[serde(rename = "K")]
    pub k: u32,
    pub paths: BTreeMap<String, Vec<Step>>,
}

impl EvacScheme {
    /// Number of traversals of every used directed edge.
    pub fn usage(&self) -> BTreeMap<Step, usize> {
        let mut u = BTreeMap::new();
        for step in self.paths.values().flatten() {
            *u.entry(step.clone()).or_insert(0) += 1;
        }
        u
    }

    pub fn max_usage(&self) -> usize {
        self.usage().values().copied().max().unwrap_or(0)
    }

    pub fn total_length(&self) -> usize {
        self.paths.values().map(Vec::len).sum()
    }

    /// Checks every invariant of a scheme with constant `self.k` on `y`.
    pub fn validate(&self, y: &Automaton) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScheme(msg));
        if self.k == 0 {
            return bad("K must be at least 1".into());
        }
        let a = y.alphabet();
        if let Some(extra) = self.paths.keys().find(|k| y.vertex(k).is_none()) {
            return bad(format!("path for unknown vertex `{extra}`"));
        }
        for (v, key) in y.keys().iter().enumerate() {
            let Some(path) = self.paths.get(key) else {
                return bad(format!("vertex `{key}` has no path"));
            };
            let mut at = key.as_str();
            let mut seen = BTreeSet::from([at]);
            for step in path {
                if step.from != at {
                    return bad(format!("path of `{key}` breaks at `{}`", step.from));
                }
                let from = y.vertex(&step.from).ok_or_else(|| Error::InvalidScheme(format!("unknown vertex `{}`", step.from)))?;
                let l = a.parse_letter(&step.letter).map_err(|_| Error::InvalidScheme(format!("unknown letter `{}`", step.letter)))?;
                match y.target(from, l) {
                    Some(t) if y.key(t) == step.to => {}
                    _ => return bad(format!("({}, {}, {}) is not an edge", step.from, step.letter, step.to)),
                }
                at = step.to.as_str();
                if self.k == 1 && !seen.insert(at) {
                    return bad(format!("path of `{key}` is not simple"));
                }
            }
            let end = y.vertex(at).expect("checked above");
            if !y.is_boundary(end) {
                return bad(format!("path of `{key}` ends at internal vertex `{at}`"));
            }
            if path.is_empty() && !y.is_boundary(v) {
                return bad(format!("internal vertex `{key}` has an empty path"));
            }
        }
        let usage = self.usage();
        for (step, &count) in &usage {
            if count > self.k as usize {
                return bad(format!("({}, {}, {}) used {count} times, K = {}", step.from, step.letter, step.to, self.k));
            }
            if self.k == 1 && step.from != step.to && usage.contains_key(&step.reversed()) {
                return bad(format!("({}, {}, {}) used together with its inverse", step.from, step.letter, step.to));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// A set `Z` of internal vertices with `K·|∂*Z| < |Z|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "Z")]
    pub z: Vec<String>,
    pub cheeger: usize,
}

impl Witness {
    pub(crate) fn from_mask(y: &Automaton, mask: &[bool]) -> Self {
        let z = (0..y.len()).filter(|&v| mask[v]).map(|v| y.key(v).to_string()).collect();
        Witness { z, cheeger: y.cheeger_of(mask) }
    }

    /// Recomputes `|∂*Z|` on `y` and checks `K·|∂*Z| < |Z|` with `Z` internal.
    pub fn verify(&self, y: &Automaton, k: u32) -> bool {
        let mut mask = vec![false; y.len()];
        for key in &self.z {
            match y.vertex(key) {
                Some(v) if !y.is_boundary(v) && !mask[v] => mask[v] = true,
                _ => return false,
            }
        }
        let cheeger = y.cheeger_of(&mask);
        !self.z.is_empty() && cheeger == self.cheeger && (k as usize) * cheeger < self.z.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"Z": self.z, "cheeger": self.cheeger})
    }
}
