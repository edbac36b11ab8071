//! Finite subgraphs (automata) of right Cayley graphs.
//!
//! An automaton over an alphabet of `m` symbols gives every vertex exactly
//! `2m` slots, one per letter of `A^{±1}`. A filled slot is an accepted edge
//! to another vertex; an empty slot is an edge leaving the automaton. Filled
//! slots always come in Serre pairs: `(u, a) = v` iff `(v, a^-1) = u`.

use std::collections::{btree_map, BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fgroup::{FElement, Generator};
use crate::ratio::{format_ratio, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub value: Option<FElement>,
    pub generator: Option<Generator>,
}

/// Ordered list of formal symbols; repeated values are allowed (multisets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenAlphabet {
    symbols: Vec<Symbol>,
}

/// A letter of `A^{±1}`: symbol index `i` gives letters `2i` (positive) and
/// `2i + 1` (inverse).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub usize);

impl Letter {
    pub fn new(symbol: usize, inverse: bool) -> Self {
        Letter(2 * symbol + inverse as usize)
    }

    pub fn symbol(self) -> usize {
        self.0 / 2
    }

    pub fn is_inverse(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

fn valid_symbol_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl GenAlphabet {
    /// Symbols named after the generators; a repeated generator gets the
    /// suffix `_2`, `_3`, ... (`x1,xb1,x0,x0` gives `x1, xb1, x0, x0_2`).
    pub fn from_generators(gens: &[Generator]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::BadAlphabet("alphabet needs at least one symbol".into()));
        }
        let mut seen: HashMap<Generator, usize> = HashMap::new();
        let symbols = gens
            .iter()
            .map(|&g| {
                let c = seen.entry(g).or_insert(0);
                *c += 1;
                let name = if *c == 1 { g.name().to_string() } else { format!("{}_{}", g.name(), c) };
                Symbol { name, value: Some(g.value()), generator: Some(g) }
            })
            .collect();
        Ok(GenAlphabet { symbols })
    }

    /// Parses the mini-language: comma-separated tokens from
    /// `{x0, x1, xb1, x2}`, repetition allowed.
    pub fn parse(spec: &str) -> Result<Self> {
        let gens = spec
            .split(',')
            .map(|t| {
                let t = t.trim();
                Generator::from_name(t).ok_or_else(|| Error::BadAlphabet(format!("unknown token `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(&gens)
    }

    /// Symbols without group values, for hand-built automata.
    pub fn abstract_symbols<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::from_symbols(
            names
                .iter()
                .map(|n| Symbol { name: n.as_ref().to_string(), value: None, generator: None })
                .collect(),
        )
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::BadAlphabet("alphabet needs at least one symbol".into()));
        }
        let mut names = BTreeSet::new();
        for s in &symbols {
            if !valid_symbol_name(&s.name) {
                return Err(Error::BadAlphabet(format!("bad symbol name `{}`", s.name)));
            }
            if !names.insert(s.name.clone()) {
                return Err(Error::BadAlphabet(format!("symbol `{}` listed twice", s.name)));
            }
        }
        Ok(GenAlphabet { symbols })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Number of symbols `m`.
    pub fn m(&self) -> usize {
        self.symbols.len()
    }

    pub fn letter_count(&self) -> usize {
        2 * self.symbols.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letter_count()).map(Letter)
    }

    /// `x0` or `x0^-1`.
    pub fn letter_name(&self, l: Letter) -> String {
        let s = &self.symbols[l.symbol()].name;
        if l.is_inverse() {
            format!("{s}^-1")
        } else {
            s.clone()
        }
    }

    pub fn parse_letter(&self, token: &str) -> Result<Letter> {
        let (name, inv) = match token.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (token, false),
        };
        self.symbols
            .iter()
            .position(|s| s.name == name)
            .map(|i| Letter::new(i, inv))
            .ok_or_else(|| Error::BadLetter(token.to_string()))
    }

    pub fn value(&self, l: Letter) -> Option<FElement> {
        let v = self.symbols[l.symbol()].value.as_ref()?;
        Some(if l.is_inverse() { v.invert() } else { v.clone() })
    }

    pub fn generator(&self, l: Letter) -> Option<(Generator, bool)> {
        self.symbols[l.symbol()].generator.map(|g| (g, l.is_inverse()))
    }

    pub fn has_values(&self) -> bool {
        self.symbols.iter().all(|s| s.value.is_some())
    }

    /// Short label such as `x1,xb1,x0,x0`.
    pub fn spec_string(&self) -> String {
        self.symbols
            .iter()
            .map(|s| s.generator.map(|g| g.name().to_string()).unwrap_or_else(|| s.name.clone()))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for GenAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.symbols.iter().map(|s| s.name.as_str()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Finite labelled subgraph with per-vertex acceptance slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: GenAlphabet,
    keys: Vec<String>,
    index: HashMap<String, usize>,
    slots: Vec<Option<usize>>,
    // outer boundary keys, known only when built inside the ambient Cayley graph
    outer: Option<BTreeSet<String>>,
}

impl Automaton {
    /// Builds an automaton from a vertex list and one directed edge per
    /// geometric edge. Vertices are stored sorted by key.
    pub fn from_edges<V: AsRef<str>, E: AsRef<str>>(
        alphabet: GenAlphabet,
        vertices: &[V],
        edges: &[(E, Letter, E)],
    ) -> Result<Self> {
        let mut keys: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        keys.sort();
        if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("vertex `{}` listed twice", w[0])));
        }
        let index: HashMap<String, usize> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let width = alphabet.letter_count();
        let mut y = Automaton { slots: vec![None; keys.len() * width], alphabet, keys, index, outer: None };
        for (u, l, v) in edges {
            y.add_edge(u.as_ref(), *l, v.as_ref())?;
        }
        Ok(y)
    }

    fn add_edge(&mut self, u: &str, l: Letter, v: &str) -> Result<()> {
        let ui = *self.index.get(u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
        let vi = *self.index.get(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        if l.0 >= self.alphabet.letter_count() {
            return Err(Error::BadLetter(format!("{l:?}")));
        }
        let w = self.alphabet.letter_count();
        if self.slots[ui * w + l.0].is_some() {
            return Err(Error::DuplicateSlot { vertex: u.to_string(), letter: self.alphabet.letter_name(l) });
        }
        let back = vi * w + l.inverse().0;
        if self.slots[back].is_some() {
            return Err(Error::SerreViolation {
                vertex: v.to_string(),
                letter: self.alphabet.letter_name(l.inverse()),
            });
        }
        self.slots[ui * w + l.0] = Some(vi);
        self.slots[back] = Some(ui);
        Ok(())
    }

    pub fn alphabet(&self) -> &GenAlphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn key(&self, v: usize) -> &str {
        &self.keys[v]
    }

    pub fn vertex(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Target of the `l`-edge at `v`, or `None` if the edge leaves the automaton.
    pub fn target(&self, v: usize, l: Letter) -> Option<usize> {
        self.slots[v * self.alphabet.letter_count() + l.0]
    }

    pub fn accepts(&self, v: usize, l: Letter) -> bool {
        self.target(v, l).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.alphabet.letters().filter(|&l| self.accepts(v, l)).count()
    }

    /// Inner boundary membership: some letter is not accepted.
    pub fn is_boundary(&self, v: usize) -> bool {
        self.alphabet.letters().any(|l| !self.accepts(v, l))
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_boundary(v)).collect()
    }

    /// Geometric edges, each once, as its positive-letter orientation.
    pub fn geometric_edges(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for v in 0..self.len() {
            for l in self.alphabet.letters().filter(|l| !l.is_inverse()) {
                if let Some(t) = self.target(v, l) {
                    out.push((v, l, t));
                }
            }
        }
        out
    }

    /// Number of directed edges from members of `set` to non-members,
    /// counting edges that leave the automaton.
    pub fn cheeger_of(&self, set: &[bool]) -> usize {
        let mut c = 0;
        for v in (0..self.len()).filter(|&v| set[v]) {
            for l in self.alphabet.letters() {
                match self.target(v, l) {
                    Some(t) if set[t] => {}
                    _ => c += 1,
                }
            }
        }
        c
    }

    pub fn has_ambient(&self) -> bool {
        self.outer.is_some()
    }

    pub fn outer_boundary(&self) -> Option<&BTreeSet<String>> {
        self.outer.as_ref()
    }

    /// Subgraph induced on a subset of vertices (by index). Ambient knowledge
    /// is dropped.
    pub fn restrict(&self, keep: &[bool]) -> Result<Automaton> {
        let verts: Vec<&str> = (0..self.len()).filter(|&v| keep[v]).map(|v| self.key(v)).collect();
        let edges: Vec<(&str, Letter, &str)> = self
            .geometric_edges()
            .into_iter()
            .filter(|&(u, _, v)| keep[u] && keep[v])
            .map(|(u, l, v)| (self.key(u), l, self.key(v)))
            .collect();
        Automaton::from_edges(self.alphabet.clone(), &verts, &edges)
    }

    pub fn to_file(&self) -> AutomatonFile {
        let values = self
            .alphabet
            .symbols()
            .iter()
            .filter_map(|s| s.value.as_ref().map(|v| (s.name.clone(), v.encode())))
            .collect();
        let edges = self
            .geometric_edges()
            .into_iter()
            .map(|(u, l, v)| (self.key(u).to_string(), self.alphabet.letter_name(l), self.key(v).to_string()))
            .collect();
        AutomatonFile {
            alphabet: self.alphabet.symbols().iter().map(|s| s.name.clone()).collect(),
            values,
            vertices: self.keys.clone(),
            edges,
        }
    }

    /// Rebuilds from the file form. When every symbol has a value and every
    /// vertex key decodes as a tree pair, edges are checked against right
    /// multiplication and the outer boundary is recomputed.
    pub fn from_file(file: &AutomatonFile) -> Result<Automaton> {
        let symbols = file
            .alphabet
            .iter()
            .map(|name| {
                let value = file.values.get(name).map(|s| s.parse::<FElement>()).transpose()?;
                let generator = value.as_ref().and_then(Generator::from_value);
                Ok(Symbol { name: name.clone(), value, generator })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(extra) = file.values.keys().find(|k| !file.alphabet.contains(k)) {
            return Err(Error::BadAlphabet(format!("value given for unknown symbol `{extra}`")));
        }
        let alphabet = GenAlphabet::from_symbols(symbols)?;
        let edges = file
            .edges
            .iter()
            .map(|(u, l, v)| Ok((u.as_str(), alphabet.parse_letter(l)?, v.as_str())))
            .collect::<Result<Vec<_>>>()?;
        let mut y = Automaton::from_edges(alphabet, &file.vertices, &edges)?;
        if y.alphabet.has_values() {
            let decoded: Option<Vec<FElement>> = y.keys.iter().map(|k| k.parse().ok()).collect();
            if let Some(elements) = decoded {
                y.attach_ambient(&elements)?;
            }
        }
        Ok(y)
    }

    fn attach_ambient(&mut self, elements: &[FElement]) -> Result<()> {
        let mut outer = BTreeSet::new();
        for (v, g) in elements.iter().enumerate() {
            for l in self.alphabet.letters() {
                let image = g.multiply(&self.alphabet.value(l).expect("values checked")).encode();
                match self.target(v, l) {
                    Some(t) if self.keys[t] != image => {
                        return Err(Error::CayleyMismatch {
                            from: self.keys[v].clone(),
                            letter: self.alphabet.letter_name(l),
                            to: self.keys[t].clone(),
                        })
                    }
                    Some(_) => {}
                    None => {
                        if self.index.contains_key(&image) {
                            return Err(Error::CayleyMismatch {
                                from: self.keys[v].clone(),
                                letter: self.alphabet.letter_name(l),
                                to: image,
                            });
                        }
                        outer.insert(image);
                    }
                }
            }
        }
        self.outer = Some(outer);
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(s: &str) -> Result<Automaton> {
        let file: AutomatonFile = serde_json::from_str(s)?;
        Automaton::from_file(&file)
    }
}

/// On-disk form: `{alphabet, values, vertices, edges}` with one directed edge
/// `[u, symbol, v]` per inverse pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub alphabet: Vec<String>,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

pub fn save_automaton(y: &Automaton, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, y.to_json()? + "\n")?;
    Ok(())
}

pub fn load_automaton(path: impl AsRef<Path>) -> Result<Automaton> {
    Automaton::from_json(&std::fs::read_to_string(path)?)
}

/// Subgraph of the right Cayley graph induced on the given elements:
/// `(g, a)` is accepted iff `g * value(a)` is one of the keys.
pub fn induced_subgraph<S: AsRef<str>>(keys: &[S], alphabet: &GenAlphabet) -> Result<Automaton> {
    if !alphabet.has_values() {
        return Err(Error::BadAlphabet("every symbol needs a group value".into()));
    }
    let elements = keys
        .iter()
        .map(|k| k.as_ref().parse::<FElement>().map_err(|_| Error::UndecodableKey(k.as_ref().to_string())))
        .collect::<Result<Vec<_>>>()?;
    induced_from_elements(&elements, alphabet)
}

fn induced_from_elements(elements: &[FElement], alphabet: &GenAlphabet) -> Result<Automaton> {
    let keys: Vec<String> = elements.iter().map(FElement::encode).collect();
    let key_set: HashMap<&str, usize> = keys.iter().enumerate().map(|(i, k)| (k.as_str(), i)).collect();
    let mut edges = Vec::new();
    for (i, g) in elements.iter().enumerate() {
        for l in alphabet.letters().filter(|l| !l.is_inverse()) {
            let image = g.multiply(&alphabet.value(l).expect("values checked")).encode();
            if let Some(&j) = key_set.get(image.as_str()) {
                edges.push((keys[i].as_str(), l, keys[j].as_str()));
            }
        }
    }
    let mut y = Automaton::from_edges(alphabet.clone(), &keys, &edges)?;
    let sorted: Vec<FElement> = y.keys.iter().map(|k| elements[key_set[k.as_str()]].clone()).collect();
    y.attach_ambient(&sorted)?;
    Ok(y)
}

/// Word-metric distances from the identity for all elements within radius `r`.
pub fn bfs_distances(r: usize, alphabet: &GenAlphabet) -> Result<BTreeMap<String, usize>> {
    if !alphabet.has_values() {
        return Err(Error::BadAlphabet("every symbol needs a group value".into()));
    }
    let steps: Vec<FElement> = alphabet.letters().filter_map(|l| alphabet.value(l)).collect();
    let mut dist: BTreeMap<String, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let id = FElement::identity();
    dist.insert(id.encode(), 0);
    queue.push_back((id, 0usize));
    while let Some((g, d)) = queue.pop_front() {
        if d == r {
            continue;
        }
        for s in &steps {
            let h = g.multiply(s);
            if let btree_map::Entry::Vacant(e) = dist.entry(h.encode()) {
                e.insert(d + 1);
                queue.push_back((h, d + 1));
            }
        }
    }
    Ok(dist)
}

/// Ball of radius `r` around the identity with all internal edges.
pub fn ball(r: usize, alphabet: &GenAlphabet) -> Result<Automaton> {
    let dist = bfs_distances(r, alphabet)?;
    let elements: Vec<FElement> = dist.keys().map(|k| k.parse().expect("encoded element")).collect();
    induced_from_elements(&elements, alphabet)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryReport {
    pub m: usize,
    /// `ν(a)` per letter, in alphabet order.
    pub nu: Vec<(String, u64)>,
    pub size: u64,
    pub inner_boundary: u64,
    pub outer_boundary: Option<u64>,
    pub cheeger_boundary: u64,
    pub density: Rational,
    pub isoperimetric: Rational,
}

pub fn boundary_report(y: &Automaton) -> Result<BoundaryReport> {
    if y.is_empty() {
        return Err(Error::EmptyAutomaton);
    }
    let a = y.alphabet();
    let nu: Vec<(String, u64)> = a
        .letters()
        .map(|l| (a.letter_name(l), (0..y.len()).filter(|&v| !y.accepts(v, l)).count() as u64))
        .collect();
    let cheeger: u64 = nu.iter().map(|(_, c)| c).sum();
    let size = y.len() as u64;
    let two_m = 2 * a.m() as u64;
    Ok(BoundaryReport {
        m: a.m(),
        size,
        inner_boundary: y.boundary_vertices().len() as u64,
        outer_boundary: y.outer_boundary().map(|o| o.len() as u64),
        cheeger_boundary: cheeger,
        density: BigRational::new(BigInt::from(two_m * size - cheeger), BigInt::from(size)),
        isoperimetric: BigRational::new(BigInt::from(cheeger), BigInt::from(size)),
        nu,
    })
}

impl BoundaryReport {
    pub fn nu_of(&self, letter: &str) -> Option<u64> {
        self.nu.iter().find(|(l, _)| l == letter).map(|&(_, c)| c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "m": self.m,
            "size": self.size,
            "nu": self.nu.iter().map(|(l, c)| json!({"letter": l, "nu": c})).collect::<Vec<_>>(),
            "inner_boundary": self.inner_boundary,
            "outer_boundary": self.outer_boundary,
            "cheeger_boundary": self.cheeger_boundary,
            "delta": format_ratio(&self.density),
            "iota": format_ratio(&self.isoperimetric),
        })
    }

    /// `letter,nu` table.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("letter,nu\n");
        for (l, c) in &self.nu {
            s.push_str(&format!("{l},{c}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgroup::{x0, x1};

    fn ab() -> GenAlphabet {
        GenAlphabet::abstract_symbols(&["a", "c"]).unwrap()
    }

    #[test]
    fn alphabet_parsing() {
        let a = GenAlphabet::parse("x1,xb1,x0,x0").unwrap();
        assert_eq!(a.m(), 4);
        let names: Vec<_> = a.symbols().iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["x1", "xb1", "x0", "x0_2"]);
        assert_eq!(a.spec_string(), "x1,xb1,x0,x0");
        assert!(GenAlphabet::parse("x0,y3").is_err());
        assert!(GenAlphabet::parse("").is_err());
        assert_eq!(a.parse_letter("x0_2^-1").unwrap(), Letter::new(3, true));
    }

    #[test]
    fn small_balls() {
        let a = GenAlphabet::parse("x0,x1").unwrap();
        let b0 = ball(0, &a).unwrap();
        assert_eq!(b0.len(), 1);
        assert!(b0.geometric_edges().is_empty());
        let b1 = ball(1, &a).unwrap();
        assert_eq!(b1.len(), 5);
        let m = GenAlphabet::parse("x1,xb1,x0,x0").unwrap();
        assert_eq!(ball(1, &m).unwrap().len(), 7);
    }

    #[test]
    fn induced_examples() {
        let a = GenAlphabet::parse("x0,x1").unwrap();
        let id = FElement::identity().encode();
        let single = induced_subgraph(std::slice::from_ref(&id), &a).unwrap();
        let rep = boundary_report(&single).unwrap();
        assert_eq!(rep.cheeger_boundary, 4);
        assert_eq!(rep.density, BigRational::from_integer(0.into()));
        assert_eq!(rep.isoperimetric, BigRational::from_integer(4.into()));
        assert_eq!(rep.outer_boundary, Some(4));

        let pair = induced_subgraph(&[id, x0().encode()], &a).unwrap();
        assert_eq!(pair.geometric_edges().len(), 1);

        let b1 = ball(1, &a).unwrap();
        assert_eq!(induced_subgraph(b1.keys(), &a).unwrap(), b1);
        assert!(matches!(induced_subgraph(&["nope"], &a), Err(Error::UndecodableKey(_))));
    }

    #[test]
    fn edges_follow_right_multiplication() {
        let a = GenAlphabet::parse("x0,x1").unwrap();
        let b = ball(2, &a).unwrap();
        for (u, l, v) in b.geometric_edges() {
            let g: FElement = b.key(u).parse().unwrap();
            assert_eq!(g.multiply(&a.value(l).unwrap()).encode(), b.key(v));
        }
        let x1k = x1().encode();
        let v = b.vertex(&x1k).unwrap();
        assert!(b.accepts(v, Letter::new(1, true)));
    }

    #[test]
    fn serre_and_duplicates() {
        let e = Automaton::from_edges(ab(), &["u", "v"], &[("u", Letter(0), "v"), ("u", Letter(0), "v")]);
        assert!(matches!(e, Err(Error::DuplicateSlot { .. })));
        // v's a^-1 slot cannot point at both u and w
        let e = Automaton::from_edges(ab(), &["u", "v", "w"], &[("u", Letter(0), "v"), ("w", Letter(0), "v")]);
        assert!(matches!(e, Err(Error::SerreViolation { .. })));
    }

    #[test]
    fn three_vertex_path_round_trip() {
        let json = r#"{"alphabet": ["a"], "vertices": ["p", "q", "r"],
                       "edges": [["p", "a", "q"], ["r", "a^-1", "q"]]}"#;
        let y = Automaton::from_json(json).unwrap();
        assert_eq!(y.geometric_edges().len(), 2);
        assert!(!y.has_ambient());
        let back = Automaton::from_json(&y.to_json().unwrap()).unwrap();
        assert_eq!(back, y);
        let rep = boundary_report(&y).unwrap();
        assert_eq!(rep.outer_boundary, None);
        assert_eq!(rep.nu_of("a"), Some(1));
        assert_eq!(rep.nu_of("a^-1"), Some(1));
    }

    #[test]
    fn cayley_round_trip_keeps_ambient() {
        let a = GenAlphabet::parse("x0,x1").unwrap();
        let b = ball(2, &a).unwrap();
        let back = Automaton::from_json(&b.to_json().unwrap()).unwrap();
        assert_eq!(back, b);
        assert!(back.has_ambient());
    }

    #[test]
    fn empty_report_errors() {
        let y = Automaton::from_edges::<&str, &str>(ab(), &[], &[]).unwrap();
        assert!(matches!(boundary_report(&y), Err(Error::EmptyAutomaton)));
    }
}
