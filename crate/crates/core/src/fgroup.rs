//! Thompson's group F as reduced tree pairs.
//!
//! An element is a pair of trees with equal leaf counts; leaf `i` of the
//! domain tree is sent to leaf `i` of the range tree. Products are read left
//! to right as a right action: `multiply(a, b)` applies `a` first, then `b`.
//! Under this convention the base pairs
//!
//! ```text
//! x0 = ((..).) | (.(..))
//! x1 = (.((..).)) | (.(.(..)))
//! ```
//!
//! satisfy `x_j x_i = x_i x_{j+1}` for `i < j` with `x_n = x0^-(n-1) x1 x0^(n-1)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::TreeShape;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FElement {
    domain: TreeShape,
    range: TreeShape,
}

impl FElement {
    pub fn identity() -> Self {
        FElement { domain: TreeShape::Leaf, range: TreeShape::Leaf }
    }

    /// Builds and reduces a tree pair.
    pub fn new(domain: TreeShape, range: TreeShape) -> Result<Self> {
        if domain.leaf_count() != range.leaf_count() {
            return Err(Error::Parse(format!(
                "tree pair with {} and {} leaves",
                domain.leaf_count(),
                range.leaf_count()
            )));
        }
        Ok(Self::reduced(domain, range))
    }

    fn reduced(mut domain: TreeShape, mut range: TreeShape) -> Self {
        loop {
            let d = domain.exposed_carets();
            let r = range.exposed_carets();
            // both lists are sorted
            let common = d.iter().find(|i| r.binary_search(i).is_ok()).copied();
            match common {
                Some(i) => {
                    domain = domain.collapse_caret(i);
                    range = range.collapse_caret(i);
                }
                None => return FElement { domain, range },
            }
        }
    }

    pub fn domain(&self) -> &TreeShape {
        &self.domain
    }

    pub fn range(&self) -> &TreeShape {
        &self.range
    }

    pub fn is_identity(&self) -> bool {
        self.domain.is_leaf()
    }

    pub fn leaf_count(&self) -> usize {
        self.domain.leaf_count()
    }

    pub fn invert(&self) -> Self {
        FElement { domain: self.range.clone(), range: self.domain.clone() }
    }

    /// `self` followed by `other`.
    pub fn multiply(&self, other: &FElement) -> FElement {
        let common = self.range.union(&other.domain);
        let below_self = self.range.subtrees_at_leaves(&common);
        let below_other = other.domain.subtrees_at_leaves(&common);
        let domain = self.domain.graft(&below_self);
        let range = other.range.graft(&below_other);
        Self::reduced(domain, range)
    }

    pub fn pow(&self, e: i64) -> FElement {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut acc = FElement::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.multiply(&base);
        }
        acc
    }

    /// `self^other = other^-1 self other`.
    pub fn conjugate_by(&self, other: &FElement) -> FElement {
        other.invert().multiply(self).multiply(other)
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &FElement) -> FElement {
        self.invert().multiply(&other.invert()).multiply(self).multiply(other)
    }

    /// Canonical `domain|range` encoding.
    pub fn encode(&self) -> String {
        format!("{}|{}", self.domain.encode(), self.range.encode())
    }
}

pub fn multiply(a: &FElement, b: &FElement) -> FElement {
    a.multiply(b)
}

pub fn invert(a: &FElement) -> FElement {
    a.invert()
}

impl fmt::Display for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FElement({})", self.encode())
    }
}

impl FromStr for FElement {
    type Err = Error;

    /// Parses `domain|range`; the pair is reduced on the way in.
    fn from_str(s: &str) -> Result<Self> {
        let (d, r) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("tree pair `{s}` lacks `|`")))?;
        FElement::new(d.parse()?, r.parse()?)
    }
}

/// `x0`: `((..).) | (.(..))`.
pub fn x0() -> FElement {
    "((..).)|(.(..))".parse().expect("static tree pair")
}

/// `x1`: `(.((..).)) | (.(.(..)))`.
pub fn x1() -> FElement {
    "(.((..).))|(.(.(..)))".parse().expect("static tree pair")
}

/// `x_n`; for `n >= 2` computed as `x0^-(n-1) x1 x0^(n-1)`.
pub fn generator_x(n: usize) -> FElement {
    match n {
        0 => x0(),
        1 => x1(),
        _ => x1().conjugate_by(&x0().pow(n as i64 - 1)),
    }
}

/// `x̄1 = x1 x0^-1`.
pub fn generator_xbar1() -> FElement {
    x1().multiply(&x0().invert())
}

/// Named generators used by the Brown–Belk actions and the CLI alphabet
/// mini-language (`x0`, `x1`, `xb1`, `x2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X0,
    X1,
    XBar1,
    X2,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::X0, Generator::X1, Generator::XBar1, Generator::X2];

    pub fn name(self) -> &'static str {
        match self {
            Generator::X0 => "x0",
            Generator::X1 => "x1",
            Generator::XBar1 => "xb1",
            Generator::X2 => "x2",
        }
    }

    pub fn value(self) -> FElement {
        match self {
            Generator::X0 => x0(),
            Generator::X1 => x1(),
            Generator::XBar1 => generator_xbar1(),
            Generator::X2 => generator_x(2),
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == s)
    }

    pub fn from_value(v: &FElement) -> Option<Self> {
        Self::ALL.into_iter().find(|g| &g.value() == v)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One letter of a group word: a formal symbol with an exponent sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordLetter {
    pub symbol: String,
    pub inverse: bool,
}

impl WordLetter {
    pub fn new(symbol: impl Into<String>, inverse: bool) -> Self {
        WordLetter { symbol: symbol.into(), inverse }
    }

    pub fn inv(&self) -> Self {
        WordLetter { symbol: self.symbol.clone(), inverse: !self.inverse }
    }
}

impl fmt::Display for WordLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.symbol)
        } else {
            f.write_str(&self.symbol)
        }
    }
}

impl FromStr for WordLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (sym, inverse) = match s.strip_suffix("^-1") {
            Some(base) => (base, true),
            None => (s, false),
        };
        let valid = !sym.is_empty()
            && sym.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
        if !valid {
            return Err(Error::BadLetter(s.to_string()));
        }
        Ok(WordLetter::new(sym, inverse))
    }
}

/// Element of the free monoid over a group alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(pub Vec<WordLetter>);

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord(Vec::new())
    }

    pub fn letters(&self) -> &[WordLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Formal inverse: reverse and invert every letter.
    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(WordLetter::inv).collect())
    }

    pub fn pow(&self, e: i64) -> GroupWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `self^other = other^-1 self other`.
    pub fn conjugate_by(&self, other: &GroupWord) -> GroupWord {
        other.inverse().concat(self).concat(other)
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &GroupWord) -> GroupWord {
        self.inverse().concat(&other.inverse()).concat(self).concat(other)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Whitespace-separated letters such as `x0^-1 x1 x0`.
    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(GroupWord)
    }
}

fn w(s: &str) -> GroupWord {
    s.parse().expect("static word")
}

/// Product of the assigned values in word order; the empty word is the identity.
pub fn evaluate_word(word: &GroupWord, assignment: &HashMap<String, FElement>) -> Result<FElement> {
    let mut acc = FElement::identity();
    for letter in word.letters() {
        let v = assignment
            .get(&letter.symbol)
            .ok_or_else(|| Error::UnassignedSymbol(letter.symbol.clone()))?;
        acc = if letter.inverse { acc.multiply(&v.invert()) } else { acc.multiply(v) };
    }
    Ok(acc)
}

/// Assignment of `x0`, `x1`, `xb1`, `x2` to their tree pairs.
pub fn standard_assignment() -> HashMap<String, FElement> {
    Generator::ALL.iter().map(|g| (g.name().to_string(), g.value())).collect()
}

/// The word `x0^-(n-1) x1 x0^(n-1)`.
pub fn x_word(n: usize) -> GroupWord {
    match n {
        0 => w("x0"),
        _ => w("x1").conjugate_by(&w("x0").pow(n as i64 - 1)),
    }
}

/// Both relators of the two-generator presentation:
/// `x1^(x0^2) (x1^(x0 x1))^-1` and `x1^(x0^3) (x1^(x0^2 x1))^-1`.
pub fn two_generator_relators() -> [GroupWord; 2] {
    let x0 = w("x0");
    let x1 = w("x1");
    let r1 = x1
        .conjugate_by(&x0.pow(2))
        .concat(&x1.conjugate_by(&x0.concat(&x1)).inverse());
    let r2 = x1
        .conjugate_by(&x0.pow(3))
        .concat(&x1.conjugate_by(&x0.pow(2).concat(&x1)).inverse());
    [r1, r2]
}

/// Relators of the symmetric presentation with `a = x1^-1`, `b = x0 x1^-1`:
/// `[a^b, b^a]` and `[a^b, b^(a^2)]`, written over `x0`, `x1`.
pub fn symmetric_relators() -> [GroupWord; 2] {
    let a = w("x1^-1");
    let b = w("x0 x1^-1");
    let ab = a.conjugate_by(&b);
    let ba = b.conjugate_by(&a);
    let ba2 = b.conjugate_by(&a.pow(2));
    [ab.commutator(&ba), ab.commutator(&ba2)]
}

/// Letter-wise substitution `x0 -> x0^-1`, `x1 -> x1 x0^-1`.
pub fn apply_auto(word: &GroupWord) -> Result<GroupWord> {
    let mut out = Vec::new();
    for letter in word.letters() {
        let image = match letter.symbol.as_str() {
            "x0" => w("x0^-1"),
            "x1" => w("x1 x0^-1"),
            _ => return Err(Error::BadLetter(letter.to_string())),
        };
        let image = if letter.inverse { image.inverse() } else { image };
        out.extend(image.0);
    }
    Ok(GroupWord(out))
}

#[derive(Clone, Debug)]
pub struct AutomorphismReport {
    pub relators_preserved: bool,
    pub involutive_on_generators: bool,
    pub commutator_image: FElement,
    pub commutator_image_nontrivial: bool,
}

impl AutomorphismReport {
    pub fn passed(&self) -> bool {
        self.relators_preserved && self.involutive_on_generators && self.commutator_image_nontrivial
    }
}

/// Checks that `x0 -> x0^-1`, `x1 -> x1 x0^-1` kills both relators, squares to
/// the identity on the generators, and keeps `[x0, x1]` nontrivial.
pub fn check_automorphism() -> Result<AutomorphismReport> {
    let env = standard_assignment();
    let mut relators_preserved = true;
    for r in two_generator_relators() {
        relators_preserved &= evaluate_word(&apply_auto(&r)?, &env)?.is_identity();
    }
    let mut involutive = true;
    for (word, value) in [(w("x0"), x0()), (w("x1"), x1())] {
        let twice = apply_auto(&apply_auto(&word)?)?;
        involutive &= evaluate_word(&twice, &env)? == value;
    }
    let comm = w("x0").commutator(&w("x1"));
    let image = evaluate_word(&apply_auto(&comm)?, &env)?;
    Ok(AutomorphismReport {
        relators_preserved,
        involutive_on_generators: involutive,
        commutator_image_nontrivial: !image.is_identity(),
        commutator_image: image,
    })
}
