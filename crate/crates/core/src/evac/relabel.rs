//! Relabelling a pure `{x0, x1, x2}` scheme through conjugation by `x0^-1`.
//!
//! With `φ(g) = x0 g x0^-1` we have `φ(x0) = x0`, `φ(x1) = x0·xb1` and
//! `φ(x2) = x1`. An `x1` edge `g -> g x1` therefore becomes the two-edge
//! segment `g -> g x0 -> g x1` labelled `x0, xb1`; the second copy of `x0` in
//! the multiset alphabet `{x1, xb1, x0, x0}` carries these segments so that no
//! symbol is used twice on the same directed edge.

use std::collections::{BTreeMap, BTreeSet};

use crate::cayley::{Automaton, GenAlphabet};
use crate::error::{Error, Result};
use crate::fgroup::{generator_x, generator_xbar1, x0, x1, FElement, Generator};

use super::{symbol_of, EvacScheme, Step};

/// Symbol carrying the `x0` half of a relabelled `x1` edge.
const SECOND_X0: &str = "x0_2";

/// Per-label usage counts on both sides of the relabelling.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelabelStats {
    pub x0_in: usize,
    pub x1_in: usize,
    pub x2_in: usize,
    pub x0_out: usize,
    pub xb1_out: usize,
    pub x1_out: usize,
}

impl RelabelStats {
    pub fn conserved(&self) -> bool {
        self.x0_out == self.x0_in + self.x1_in && self.xb1_out == self.x1_in && self.x1_out == self.x2_in
    }
}

/// `φ(x0) = x0`, `φ(x1) = x0·xb1`, `φ(x2) = x1` and `x0^-1 x1 x0 = x2` as
/// reduced tree pairs.
pub fn conjugation_identities_hold() -> bool {
    let phi = |a: &FElement| a.conjugate_by(&x0().invert());
    phi(&x0()) == x0()
        && phi(&x1()) == x0().multiply(&generator_xbar1())
        && phi(&generator_x(2)) == x1()
        && x1().conjugate_by(&x0()) == generator_x(2)
}

fn check_alphabet(a: &GenAlphabet) -> Result<()> {
    let mut gens: Vec<Generator> = Vec::new();
    for s in a.symbols() {
        match s.generator {
            Some(g @ (Generator::X0 | Generator::X1 | Generator::X2)) if s.name == g.name() => gens.push(g),
            _ => return Err(Error::BadAlphabet(format!("symbol `{}` outside {{x0, x1, x2}}", s.name))),
        }
    }
    gens.sort_by_key(|g| g.name());
    if gens != [Generator::X0, Generator::X1, Generator::X2] {
        return Err(Error::BadAlphabet("relabelling needs exactly the symbols x0, x1, x2".into()));
    }
    Ok(())
}

/// Name of the vertex `g·x0`: its key when it lies in `y`, its tree-pair
/// encoding when `g` is a group element, and `g*x0` otherwise.
fn x0_neighbour(y: &Automaton, g: &str) -> String {
    let a = y.alphabet();
    let l = a.parse_letter("x0").expect("checked alphabet");
    if let Some(t) = y.vertex(g).and_then(|v| y.target(v, l)) {
        return y.key(t).to_string();
    }
    match g.parse::<FElement>() {
        Ok(e) => e.multiply(&x0()).encode(),
        Err(_) => format!("{g}*x0"),
    }
}

/// Relabels a pure scheme on `y` over `{x0, x1, x2}` into a scheme over the
/// multiset `{x1, xb1, x0, x0}` (symbols `x1, xb1, x0, x0_2`) on the
/// conjugated graph. Vertices keep their keys; `φ` is implicit.
pub fn conjugate_relabel(y: &Automaton, s: &EvacScheme) -> Result<EvacScheme> {
    check_alphabet(y.alphabet())?;
    if s.k != 1 {
        return Err(Error::InvalidScheme("relabelling needs a pure scheme".into()));
    }
    s.validate(y)?;
    let mut paths = BTreeMap::new();
    for (key, path) in &s.paths {
        let mut out = Vec::with_capacity(path.len());
        for step in path {
            let (sym, inv) = match step.letter.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (step.letter.as_str(), false),
            };
            let suffix = if inv { "^-1" } else { "" };
            match sym {
                "x0" => out.push(step.clone()),
                "x2" => out.push(Step::new(&step.from, format!("x1{suffix}"), &step.to)),
                "x1" if !inv => {
                    let mid = x0_neighbour(y, &step.from);
                    out.push(Step::new(&step.from, SECOND_X0, &mid));
                    out.push(Step::new(mid, "xb1", &step.to));
                }
                "x1" => {
                    let mid = x0_neighbour(y, &step.to);
                    out.push(Step::new(&step.from, "xb1^-1", &mid));
                    out.push(Step::new(mid, format!("{SECOND_X0}^-1"), &step.to));
                }
                other => return Err(Error::BadLetter(other.to_string())),
            }
        }
        paths.insert(key.clone(), out);
    }
    Ok(EvacScheme { k: 1, paths })
}

/// Checks a relabelled scheme against the multiset capacities: every directed
/// edge used at most once per symbol, never together with its inverse, each
/// `x0` geometric edge at most twice in total; paths contiguous with the same
/// endpoints as `input`; label usage conserved.
pub fn validate_multiset(input: &EvacScheme, output: &EvacScheme) -> Result<RelabelStats> {
    let bad = |m: String| Err(Error::InvalidScheme(m));
    let allowed: BTreeSet<&str> = ["x1", "xb1", "x0", SECOND_X0].into();
    if input.paths.keys().ne(output.paths.keys()) {
        return bad("vertex sets differ".into());
    }
    for (key, path) in &output.paths {
        let mut at = key.as_str();
        for step in path {
            if step.from != at {
                return bad(format!("path of `{key}` breaks at `{}`", step.from));
            }
            if !allowed.contains(symbol_of(&step.letter)) {
                return bad(format!("letter `{}` outside the multiset alphabet", step.letter));
            }
            at = &step.to;
        }
        let end_in = input.paths[key].last().map_or(key.as_str(), |s| s.to.as_str());
        if at != end_in {
            return bad(format!("path of `{key}` ends at `{at}` instead of `{end_in}`"));
        }
    }
    let usage = output.usage();
    let mut x0_geometric: BTreeMap<(String, String), usize> = BTreeMap::new();
    for (step, &count) in &usage {
        if count > 1 {
            return bad(format!("({}, {}, {}) used {count} times", step.from, step.letter, step.to));
        }
        if usage.contains_key(&step.reversed()) {
            return bad(format!("({}, {}, {}) used together with its inverse", step.from, step.letter, step.to));
        }
        let sym = symbol_of(&step.letter);
        if sym == "x0" || sym == SECOND_X0 {
            let oriented = if step.letter.ends_with("^-1") {
                (step.to.clone(), step.from.clone())
            } else {
                (step.from.clone(), step.to.clone())
            };
            *x0_geometric.entry(oriented).or_insert(0) += count;
        }
    }
    if let Some(((u, v), c)) = x0_geometric.iter().find(|(_, &c)| c > 2) {
        return bad(format!("x0 edge ({u}, {v}) used {c} times"));
    }
    let count = |s: &EvacScheme, syms: &[&str]| {
        s.paths.values().flatten().filter(|st| syms.contains(&symbol_of(&st.letter))).count()
    };
    let stats = RelabelStats {
        x0_in: count(input, &["x0"]),
        x1_in: count(input, &["x1"]),
        x2_in: count(input, &["x2"]),
        x0_out: count(output, &["x0", SECOND_X0]),
        xb1_out: count(output, &["xb1"]),
        x1_out: count(output, &["x1"]),
    };
    if !stats.conserved() {
        return bad(format!("label usage not conserved: {stats:?}"));
    }
    Ok(stats)
}
