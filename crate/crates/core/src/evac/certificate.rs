//! Verification of flow certificates.
//!
//! A certificate is an antisymmetric function `f` on directed edges with
//! `|f| <= C` whose inflow into every vertex of `Y` is at least `ε`. Edges
//! leaving `Y` are summarised per vertex by a supplied boundary inflow. An
//! accepted certificate gives `ε|Y| <= C|∂*Y|`, hence `ι* >= ε/C`.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cayley::Automaton;
use crate::error::{Error, Result};
use crate::ratio::{format_ratio, parse_ratio, to_decimal, Rational};

/// On-disk form: `{C, eps, flow: [[u, letter, v, "p/q"]], boundary_inflows}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowCertificate {
    #[serde(rename = "C")]
    pub c: String,
    pub eps: String,
    pub flow: Vec<(String, String, String, String)>,
    #[serde(default)]
    pub boundary_inflows: BTreeMap<String, String>,
}

impl FlowCertificate {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// Both orientations given with `f(e^-1) != -f(e)`.
    Antisymmetry { from: String, letter: String, to: String },
    /// `|f(e)| > C`.
    EdgeBound { from: String, letter: String, to: String, value: Rational },
    /// Boundary inflow exceeds `C` times the number of boundary slots.
    BoundaryBound { vertex: String, value: Rational, slots: usize },
    /// Inflow below `ε`.
    Inflow { vertex: String, inflow: Rational },
}

impl Rejection {
    pub fn describe(&self) -> String {
        match self {
            Rejection::Antisymmetry { from, letter, to } => format!("antisymmetry fails on ({from}, {letter}, {to})"),
            Rejection::EdgeBound { from, letter, to, value } => {
                format!("|f({from}, {letter}, {to})| = {} exceeds C", format_ratio(&value.abs()))
            }
            Rejection::BoundaryBound { vertex, value, slots } => {
                format!("boundary inflow {} at `{vertex}` exceeds C times {slots} boundary slots", format_ratio(value))
            }
            Rejection::Inflow { vertex, inflow } => {
                format!("inflow {} at `{vertex}` is below eps", format_ratio(inflow))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    Accepted {
        /// `ε / C`, a lower bound on `ι*`.
        bound: Rational,
        size: usize,
        cheeger: usize,
        /// `ε|Y| <= C|∂*Y|`, checked exactly.
        inequality_holds: bool,
    },
    Rejected(Rejection),
}

impl CertificateVerdict {
    pub fn accepted(&self) -> bool {
        matches!(self, CertificateVerdict::Accepted { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CertificateVerdict::Accepted { bound, size, cheeger, inequality_holds } => json!({
                "accepted": true,
                "bound": format_ratio(bound),
                "bound_decimal": to_decimal(bound, 12),
                "size": size,
                "cheeger": cheeger,
                "inequality_holds": inequality_holds,
            }),
            CertificateVerdict::Rejected(r) => json!({"accepted": false, "reason": r.describe()}),
        }
    }
}

/// Checks the certificate on `y`. Malformed input (unknown vertices or
/// letters, non-edges, non-positive constants) is an error; a well-formed
/// certificate that fails a condition is a rejection.
pub fn verify_flow_certificate(y: &Automaton, cert: &FlowCertificate) -> Result<CertificateVerdict> {
    let bad = |m: String| Error::InvalidCertificate(m);
    let c = parse_ratio(&cert.c)?;
    let eps = parse_ratio(&cert.eps)?;
    if !c.is_positive() || !eps.is_positive() {
        return Err(bad("C and eps must be positive".into()));
    }
    let a = y.alphabet();
    let w = a.letter_count();
    // value per slot (v, letter)
    let mut slot: Vec<Option<Rational>> = vec![None; y.len() * w];
    for (u, letter, v, value) in &cert.flow {
        let ui = y.vertex(u).ok_or_else(|| bad(format!("unknown vertex `{u}`")))?;
        let l = a.parse_letter(letter).map_err(|_| bad(format!("unknown letter `{letter}`")))?;
        match y.target(ui, l) {
            Some(t) if y.key(t) == v => {}
            _ => return Err(bad(format!("({u}, {letter}, {v}) is not an edge"))),
        }
        let value = parse_ratio(value)?;
        if slot[ui * w + l.0].replace(value).is_some() {
            return Err(bad(format!("({u}, {letter}, {v}) given twice")));
        }
    }
    let mut bnd: Vec<Rational> = vec![Rational::zero(); y.len()];
    for (key, value) in &cert.boundary_inflows {
        let v = y.vertex(key).ok_or_else(|| bad(format!("unknown vertex `{key}`")))?;
        bnd[v] = parse_ratio(value)?;
    }
    // antisymmetry, then fill implied values
    for u in 0..y.len() {
        for l in a.letters() {
            let Some(t) = y.target(u, l) else { continue };
            let back = t * w + l.inverse().0;
            match (&slot[u * w + l.0], &slot[back]) {
                (Some(x), Some(z)) if *x != -z.clone() => {
                    return Ok(CertificateVerdict::Rejected(Rejection::Antisymmetry {
                        from: y.key(u).to_string(),
                        letter: a.letter_name(l),
                        to: y.key(t).to_string(),
                    }))
                }
                (Some(x), None) => slot[back] = Some(-x.clone()),
                _ => {}
            }
        }
    }
    for u in 0..y.len() {
        for l in a.letters() {
            let Some(t) = y.target(u, l) else { continue };
            let value = slot[u * w + l.0].clone().unwrap_or_else(Rational::zero);
            if value.abs() > c {
                return Ok(CertificateVerdict::Rejected(Rejection::EdgeBound {
                    from: y.key(u).to_string(),
                    letter: a.letter_name(l),
                    to: y.key(t).to_string(),
                    value,
                }));
            }
        }
    }
    for (v, b) in bnd.iter().enumerate() {
        let slots = y.alphabet().letter_count() - y.degree(v);
        if b.abs() > &c * Rational::from_integer(slots.into()) {
            return Ok(CertificateVerdict::Rejected(Rejection::BoundaryBound {
                vertex: y.key(v).to_string(),
                value: b.clone(),
                slots,
            }));
        }
    }
    let mut total = Rational::zero();
    for v in 0..y.len() {
        let out: Rational = a
            .letters()
            .filter(|&l| y.accepts(v, l))
            .map(|l| slot[v * w + l.0].clone().unwrap_or_else(Rational::zero))
            .sum();
        let inflow = &bnd[v] - out;
        if inflow < eps {
            return Ok(CertificateVerdict::Rejected(Rejection::Inflow { vertex: y.key(v).to_string(), inflow }));
        }
        total += inflow;
    }
    let size = y.len();
    let cheeger = y.cheeger_of(&vec![true; size]);
    let lhs = &eps * Rational::from_integer(size.into());
    let rhs = &c * Rational::from_integer(cheeger.into());
    debug_assert!(lhs <= total);
    Ok(CertificateVerdict::Accepted { bound: &eps / &c, size, cheeger, inequality_holds: lhs <= rhs })
}
