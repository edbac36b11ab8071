//! Marked forests and the Brown–Belk sets `BB(n, k)`.
//!
//! Generators act on the right:
//!
//! * `x0` moves the marker one tree left, `x0^-1` one tree right;
//! * `x1` removes the caret of the marked tree `(T1^T2)` and marks `T1`;
//!   `xb1` does the same but marks `T2`;
//! * `x1^-1` joins the marked tree with its right neighbour under a new caret,
//!   `xb1^-1` joins the left neighbour with the marked tree; inside
//!   `BB(n, k)` both joined trees must have height `< k`;
//! * `x2` and `x2^-1` are the compositions `x0^-1 x1^±1 x0`.
//!
//! Forests are drawn here with roots at the top. The mirrored drawing
//! (roots at the bottom) describes the same sets and the same adjacency.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::cayley::{Automaton, GenAlphabet, Letter};
use crate::counting;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fgroup::Generator;
use crate::tree::{trees_with, TreeShape};

/// Default cap on explicitly enumerated forests.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedForest {
    trees: Vec<TreeShape>,
    mark: usize,
}

impl MarkedForest {
    pub fn new(trees: Vec<TreeShape>, mark: usize) -> Result<Self> {
        if trees.is_empty() || mark >= trees.len() {
            return Err(Error::Parse(format!("mark {mark} out of range for {} trees", trees.len())));
        }
        Ok(MarkedForest { trees, mark })
    }

    pub fn trees(&self) -> &[TreeShape] {
        &self.trees
    }

    pub fn mark(&self) -> usize {
        self.mark
    }

    pub fn marked_tree(&self) -> &TreeShape {
        &self.trees[self.mark]
    }

    pub fn leaf_count(&self) -> usize {
        self.trees.iter().map(TreeShape::leaf_count).sum()
    }

    pub fn max_height(&self) -> usize {
        self.trees.iter().map(TreeShape::height).max().unwrap_or(0)
    }

    /// Trees separated by `;`, the marked one suffixed with `*`:
    /// `(..);.*;(..)`.
    pub fn encode(&self) -> String {
        let parts: Vec<String> = self
            .trees
            .iter()
            .enumerate()
            .map(|(i, t)| if i == self.mark { format!("{t}*") } else { t.encode() })
            .collect();
        parts.join(";")
    }
}

impl fmt::Display for MarkedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for MarkedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MarkedForest({})", self.encode())
    }
}

impl FromStr for MarkedForest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut mark = None;
        let mut trees = Vec::new();
        for (i, part) in s.split(';').enumerate() {
            let part = match part.strip_suffix('*') {
                Some(p) => {
                    if mark.replace(i).is_some() {
                        return Err(Error::Parse(format!("forest `{s}` has two markers")));
                    }
                    p
                }
                None => part,
            };
            trees.push(part.parse()?);
        }
        let mark = mark.ok_or_else(|| Error::Parse(format!("forest `{s}` has no marker")))?;
        MarkedForest::new(trees, mark)
    }
}

/// A generator letter acting on marked forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenLetter {
    pub generator: Generator,
    pub inverse: bool,
}

impl GenLetter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        GenLetter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        GenLetter { generator: self.generator, inverse: !self.inverse }
    }
}

impl FromStr for GenLetter {
    type Err = Error;

    /// `x0`, `x1^-1`, `xb1`, `x2^-1`, ...
    fn from_str(s: &str) -> Result<Self> {
        let (base, inverse) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let generator = Generator::from_name(base).ok_or_else(|| Error::BadLetter(s.to_string()))?;
        Ok(GenLetter { generator, inverse })
    }
}

impl fmt::Display for GenLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

fn shift(f: &MarkedForest, right: bool) -> Option<MarkedForest> {
    let mark = if right {
        (f.mark + 1 < f.trees.len()).then_some(f.mark + 1)?
    } else {
        f.mark.checked_sub(1)?
    };
    Some(MarkedForest { trees: f.trees.clone(), mark })
}

fn split(f: &MarkedForest, keep_left: bool) -> Option<MarkedForest> {
    let (l, r) = f.marked_tree().children()?;
    let mut trees = Vec::with_capacity(f.trees.len() + 1);
    trees.extend_from_slice(&f.trees[..f.mark]);
    trees.push(l.clone());
    trees.push(r.clone());
    trees.extend_from_slice(&f.trees[f.mark + 1..]);
    let mark = if keep_left { f.mark } else { f.mark + 1 };
    Some(MarkedForest { trees, mark })
}

/// Joins trees `i` and `i + 1`, marking the result.
fn join(f: &MarkedForest, i: usize, cap: usize) -> Option<MarkedForest> {
    let (a, b) = (f.trees.get(i)?, f.trees.get(i + 1)?);
    if a.height() >= cap || b.height() >= cap {
        return None;
    }
    let mut trees = Vec::with_capacity(f.trees.len() - 1);
    trees.extend_from_slice(&f.trees[..i]);
    trees.push(TreeShape::caret(a.clone(), b.clone()));
    trees.extend_from_slice(&f.trees[i + 2..]);
    Some(MarkedForest { trees, mark: i })
}

/// Right action of a letter on a marked forest with height cap `k`;
/// `None` when the letter is not accepted.
pub fn act(letter: GenLetter, f: &MarkedForest, k: usize) -> Option<MarkedForest> {
    use Generator::*;
    match (letter.generator, letter.inverse) {
        (X0, false) => shift(f, false),
        (X0, true) => shift(f, true),
        (X1, false) => split(f, true),
        (XBar1, false) => split(f, false),
        (X1, true) => join(f, f.mark, k),
        (XBar1, true) => join(f, f.mark.checked_sub(1)?, k),
        (X2, inv) => {
            let g = act(GenLetter::new(X0, true), f, k)?;
            let g = act(GenLetter::new(X1, inv), &g, k)?;
            act(GenLetter::new(X0, false), &g, k)
        }
    }
}

/// Parses the letter and acts; malformed letters are errors.
pub fn act_str(letter: &str, f: &MarkedForest, k: usize) -> Result<Option<MarkedForest>> {
    Ok(act(letter.parse()?, f, k))
}

fn check_budget(n: usize, k: usize, budget: u64) -> Result<()> {
    let needed: BigUint = counting::bb_count(n, k);
    if needed.to_u64().is_none_or(|c| c > budget) {
        return Err(Error::BudgetExceeded { needed: needed.to_string(), budget });
    }
    Ok(())
}

/// Every marked forest with `n` leaves and all heights `<= k`, sorted by
/// encoding. Fails fast when `|BB(n, k)|` exceeds `budget`.
pub fn enumerate_bb(n: usize, k: usize, budget: u64) -> Result<Vec<MarkedForest>> {
    enumerate_bb_with(n, k, budget, Exec::default())
}

pub fn enumerate_bb_with(n: usize, k: usize, budget: u64, exec: Exec) -> Result<Vec<MarkedForest>> {
    if n == 0 {
        return Err(Error::InvalidParameter("BB(n, k) needs n >= 1".into()));
    }
    check_budget(n, k, budget)?;
    let by_leaves: Vec<Vec<TreeShape>> = (0..=n).map(|l| if l == 0 { Vec::new() } else { trees_with(l, k) }).collect();
    // shard by the first tree
    let firsts: Vec<&TreeShape> = by_leaves.iter().flatten().collect();
    let shards = exec.map_slice(&firsts, |first| {
        let mut out = Vec::new();
        let mut prefix = vec![(*first).clone()];
        extend_forests(n - first.leaf_count(), &by_leaves, &mut prefix, &mut out);
        out
    });
    let mut all: Vec<MarkedForest> = shards.into_iter().flatten().collect();
    all.sort_by_cached_key(MarkedForest::encode);
    Ok(all)
}

fn extend_forests(
    remaining: usize,
    by_leaves: &[Vec<TreeShape>],
    prefix: &mut Vec<TreeShape>,
    out: &mut Vec<MarkedForest>,
) {
    if remaining == 0 {
        for mark in 0..prefix.len() {
            out.push(MarkedForest { trees: prefix.clone(), mark });
        }
        return;
    }
    for l in 1..=remaining {
        for t in &by_leaves[l] {
            prefix.push(t.clone());
            extend_forests(remaining - l, by_leaves, prefix, out);
            prefix.pop();
        }
    }
}

/// Marked forests whose marked tree is trivial and whose two neighbours both
/// exist and have height exactly `k` (`k >= 1`; empty for `k = 0`).
pub fn find_y0(n: usize, k: usize) -> Result<Vec<MarkedForest>> {
    find_y0_with_budget(n, k, DEFAULT_BUDGET)
}

pub fn find_y0_with_budget(n: usize, k: usize, budget: u64) -> Result<Vec<MarkedForest>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    Ok(enumerate_bb(n, k, budget)?.into_iter().filter(|f| is_y0(f, k)).collect())
}

pub fn is_y0(f: &MarkedForest, k: usize) -> bool {
    k >= 1
        && f.marked_tree().is_leaf()
        && f.mark >= 1
        && f.mark + 1 < f.trees.len()
        && f.trees[f.mark - 1].height() == k
        && f.trees[f.mark + 1].height() == k
}

/// `BB(n, k)` as an automaton: `(f, a, f')` is an edge iff `act(a, f) = f'`.
/// Every symbol of the alphabet must name one of `x0, x1, xb1, x2`.
pub fn bb_automaton(n: usize, k: usize, alphabet: &GenAlphabet) -> Result<Automaton> {
    bb_automaton_with_budget(n, k, alphabet, DEFAULT_BUDGET)
}

pub fn bb_automaton_with_budget(n: usize, k: usize, alphabet: &GenAlphabet, budget: u64) -> Result<Automaton> {
    let letters: Vec<(Letter, GenLetter)> = alphabet
        .letters()
        .filter(|l| !l.is_inverse())
        .map(|l| {
            alphabet
                .generator(l)
                .map(|(g, _)| (l, GenLetter::new(g, false)))
                .ok_or_else(|| Error::BadAlphabet(format!("symbol `{}` is not a generator", alphabet.letter_name(l))))
        })
        .collect::<Result<_>>()?;
    let forests = enumerate_bb(n, k, budget)?;
    let keys: Vec<String> = forests.iter().map(MarkedForest::encode).collect();
    let members: BTreeSet<&str> = keys.iter().map(String::as_str).collect();
    let mut targets: Vec<(usize, Letter, String)> = Vec::new();
    for (i, f) in forests.iter().enumerate() {
        for &(l, g) in &letters {
            if let Some(t) = act(g, f, k) {
                let tk = t.encode();
                debug_assert!(members.contains(tk.as_str()));
                targets.push((i, l, tk));
            }
        }
    }
    let edges: Vec<(&str, Letter, &str)> = targets.iter().map(|(i, l, t)| (keys[*i].as_str(), *l, t.as_str())).collect();
    Automaton::from_edges(alphabet.clone(), &keys, &edges)
}

/// Subgraph of `BB(n, k)` over `{x0, x1, xb1}` with `Y0` removed together
/// with the `x0^±1` edges incident to it.
pub fn trimmed_bb_automaton(n: usize, k: usize) -> Result<Automaton> {
    let alphabet = GenAlphabet::from_generators(&[Generator::X0, Generator::X1, Generator::XBar1])?;
    let y = bb_automaton(n, k, &alphabet)?;
    let keep: Vec<bool> = y
        .keys()
        .iter()
        .map(|key| !is_y0(&key.parse::<MarkedForest>().expect("forest key"), k))
        .collect();
    y.restrict(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mf(s: &str) -> MarkedForest {
        s.parse().unwrap()
    }

    fn l(s: &str) -> GenLetter {
        s.parse().unwrap()
    }

    #[test]
    fn encoding() {
        let f = mf("(..);.*;(..)");
        assert_eq!(f.mark(), 1);
        assert_eq!(f.leaf_count(), 5);
        assert_eq!(f.encode(), "(..);.*;(..)");
        assert!("(..);.".parse::<MarkedForest>().is_err());
        assert!(".*;.*".parse::<MarkedForest>().is_err());
    }

    #[test]
    fn x0_shifts() {
        assert_eq!(act(l("x0"), &mf(".;.*"), 3), Some(mf(".*;.")));
        assert_eq!(act(l("x0"), &mf(".*;."), 3), None);
        assert_eq!(act(l("x0^-1"), &mf(".;.*"), 3), None);
    }

    #[test]
    fn splits_and_joins() {
        assert_eq!(act(l("x1"), &mf(".*;(..)"), 3), None);
        assert_eq!(act(l("x1"), &mf("(.(..))*"), 3), Some(mf(".*;(..)")));
        assert_eq!(act(l("xb1"), &mf("(.(..))*"), 3), Some(mf(".;(..)*")));
        assert_eq!(act(l("x1^-1"), &mf(".*;(..)"), 2), Some(mf("(.(..))*")));
        // height cap blocks the join
        assert_eq!(act(l("x1^-1"), &mf(".*;(..)"), 1), None);
        assert_eq!(act(l("xb1^-1"), &mf(".;(..)*"), 2), Some(mf("(.(..))*")));
        assert_eq!(act(l("xb1^-1"), &mf("(..)*;."), 2), None);
        assert!(act_str("x3", &mf(".*"), 1).is_err());
    }

    #[test]
    fn x2_splits_right_neighbour() {
        assert_eq!(act(l("x2"), &mf(".*;(..)"), 2), Some(mf(".*;.;.")));
        assert_eq!(act(l("x2"), &mf(".*;."), 2), None);
        assert_eq!(act(l("x2"), &mf("(..);.*"), 2), None);
        assert_eq!(act(l("x2^-1"), &mf(".*;.;."), 2), Some(mf(".*;(..)")));
    }

    #[test]
    fn bb_small_sizes() {
        assert_eq!(enumerate_bb(4, 0, DEFAULT_BUDGET).unwrap().len(), 4);
        let bb21 = enumerate_bb(2, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(bb21.len(), 3);
        assert!(matches!(enumerate_bb(30, 5, 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn bb21_automaton() {
        let a = GenAlphabet::parse("x1,xb1").unwrap();
        let y = bb_automaton(2, 1, &a).unwrap();
        let caret = y.vertex("(..)*").unwrap();
        let x1 = a.parse_letter("x1").unwrap();
        let xb1 = a.parse_letter("xb1").unwrap();
        assert!(y.accepts(caret, x1) && y.accepts(caret, xb1));
        let left = y.vertex(".*;.").unwrap();
        let right = y.vertex(".;.*").unwrap();
        for v in [left, right] {
            assert!(!y.accepts(v, x1) && !y.accepts(v, xb1));
        }
        assert!(y.accepts(left, x1.inverse()));
        assert!(!y.accepts(left, xb1.inverse()));
        assert!(y.accepts(right, xb1.inverse()));
    }

    #[test]
    fn y0_examples() {
        assert!(find_y0(5, 0).unwrap().is_empty());
        let y0 = find_y0(5, 1).unwrap();
        assert_eq!(y0, vec![mf("(..);.*;(..)")]);
        for k in 1..=3 {
            for f in find_y0(8, k).unwrap() {
                assert!(act(l("x0"), &f, k).is_some());
                assert!(act(l("x0^-1"), &f, k).is_some());
                for s in ["x1", "xb1", "x1^-1", "xb1^-1"] {
                    assert!(act(l(s), &f, k).is_none(), "{f} accepts {s}");
                }
            }
        }
    }
}
