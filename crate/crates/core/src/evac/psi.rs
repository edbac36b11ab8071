//! The multi-valued partial map ψ obtained by reversing the used edges of a
//! scheme, and the chain-peeling that turns such a relation back into paths.
//!
//! A used edge `e = u --a--> v` contributes the ordered pair `⟨τ(e), ι(e)⟩ =
//! ⟨v, u⟩`. The index of a vertex is its number of preimages minus its number
//! of images, so the initial vertex of a used edge gains `+1` and the terminal
//! vertex `-1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cayley::Automaton;
use crate::error::{Error, Result};

use super::{EvacScheme, Step};

/// `⟨image, preimage⟩` together with the letter of the underlying edge
/// `preimage --letter--> image`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PsiPair {
    pub image: String,
    pub preimage: String,
    pub letter: String,
}

impl PsiPair {
    fn edge(&self) -> Step {
        Step::new(&self.preimage, &self.letter, &self.image)
    }
}

/// Multiset of pairs, with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiRelation {
    pub pairs: BTreeMap<PsiPair, usize>,
}

impl PsiRelation {
    pub fn insert(&mut self, pair: PsiPair, count: usize) {
        if count > 0 {
            *self.pairs.entry(pair).or_insert(0) += count;
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.pairs.values().copied().max().unwrap_or(0)
    }

    /// `#preimages - #images` for every vertex of `y`.
    pub fn index(&self, y: &Automaton) -> BTreeMap<String, i64> {
        let mut idx: BTreeMap<String, i64> = y.keys().iter().map(|k| (k.clone(), 0)).collect();
        for (p, &c) in &self.pairs {
            *idx.entry(p.preimage.clone()).or_insert(0) += c as i64;
            *idx.entry(p.image.clone()).or_insert(0) -= c as i64;
        }
        idx
    }

    /// Every pair must span an edge of `y`.
    pub fn check_edges(&self, y: &Automaton) -> Result<()> {
        let a = y.alphabet();
        for p in self.pairs.keys() {
            let spans = (|| {
                let u = y.vertex(&p.preimage)?;
                let l = a.parse_letter(&p.letter).ok()?;
                Some(y.key(y.target(u, l)?) == p.image)
            })();
            if spans != Some(true) {
                return Err(Error::InvalidRelation(format!(
                    "pair ⟨{}, {}⟩ does not span a `{}` edge",
                    p.image, p.preimage, p.letter
                )));
            }
        }
        Ok(())
    }
}

/// Pairs `⟨τ(e), ι(e)⟩` over the used edges, each with its usage count.
pub fn scheme_to_relation(s: &EvacScheme) -> PsiRelation {
    let mut rel = PsiRelation::default();
    for (step, count) in s.usage() {
        rel.insert(PsiPair { image: step.to, preimage: step.from, letter: step.letter }, count);
    }
    rel
}

/// Peels chains of `ψ` into paths ending on `∂Y`, in key order: from the
/// current vertex `w` take the least remaining pair `⟨w', w⟩`, delete it, and
/// continue from `w'`. Closed sub-walks are cut out afterwards. Requires every
/// internal vertex to have index at least 1.
pub fn relation_to_scheme(y: &Automaton, rel: &PsiRelation) -> Result<EvacScheme> {
    rel.check_edges(y)?;
    let index = rel.index(y);
    for (v, key) in y.keys().iter().enumerate() {
        if !y.is_boundary(v) && index[key] < 1 {
            return Err(Error::IndexPrecondition { vertex: key.clone(), index: index[key] });
        }
    }
    // remaining pairs by preimage
    let mut out: BTreeMap<&str, BTreeMap<&PsiPair, usize>> = BTreeMap::new();
    for (p, &c) in &rel.pairs {
        out.entry(p.preimage.as_str()).or_default().insert(p, c);
    }
    let mut paths = BTreeMap::new();
    for (v, key) in y.keys().iter().enumerate() {
        let mut walk: Vec<Step> = Vec::new();
        let mut at = v;
        while !y.is_boundary(at) {
            let here = y.key(at);
            let next = out.get_mut(here).and_then(|m| {
                let p = *m.keys().next()?;
                let c = m.get_mut(p).expect("present");
                *c -= 1;
                if *c == 0 {
                    m.remove(p);
                }
                Some(p)
            });
            let Some(p) = next else {
                return Err(Error::InvalidRelation(format!("chain from `{key}` is stuck at `{here}`")));
            };
            walk.push(p.edge());
            at = y.vertex(&p.image).expect("checked");
        }
        paths.insert(key.clone(), simplify(walk));
    }
    let k = rel.max_multiplicity().max(1) as u32;
    Ok(EvacScheme { k, paths })
}

fn simplify(walk: Vec<Step>) -> Vec<Step> {
    let mut out: Vec<Step> = Vec::new();
    for step in walk {
        match out.iter().position(|s| s.from == step.to) {
            Some(i) => out.truncate(i),
            None => out.push(step),
        }
    }
    out
}
