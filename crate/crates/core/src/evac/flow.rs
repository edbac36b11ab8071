//! Max-flow construction of evacuation schemes.
//!
//! Every vertex receives one unit from a super-source, every boundary vertex
//! drains into a super-sink without limit, and each geometric edge is an
//! undirected arc of capacity `K`. Flow on an arc is stored as a signed net
//! value, so an edge never carries flow in both directions.

use std::collections::VecDeque;

use crate::cayley::{Automaton, Letter};
use crate::error::{Error, Result};

use super::{EvacScheme, Step, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Scheme(EvacScheme),
    None(Witness),
}

impl Outcome {
    pub fn exists(&self) -> bool {
        matches!(self, Outcome::Scheme(_))
    }

    pub fn scheme(&self) -> Option<&EvacScheme> {
        match self {
            Outcome::Scheme(s) => Some(s),
            Outcome::None(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Scheme(_) => None,
            Outcome::None(w) => Some(w),
        }
    }
}

struct Edge {
    u: usize,
    letter: Letter,
    v: usize,
    // net flow from u to v, in [-cap, cap]
    flow: i64,
}

struct Network<'a> {
    y: &'a Automaton,
    cap: i64,
    boundary: Vec<bool>,
    edges: Vec<Edge>,
    // (edge index, true when leaving through `u`)
    incident: Vec<Vec<(usize, bool)>>,
    source_used: Vec<bool>,
    drained: Vec<i64>,
}

#[derive(Clone, Copy)]
enum Parent {
    Source,
    Edge(usize, bool),
}

impl<'a> Network<'a> {
    fn new(y: &'a Automaton, k: u32) -> Self {
        let n = y.len();
        let boundary: Vec<bool> = (0..n).map(|v| y.is_boundary(v)).collect();
        let edges: Vec<Edge> = y
            .geometric_edges()
            .into_iter()
            .filter(|&(u, _, v)| u != v)
            .map(|(u, letter, v)| Edge { u, letter, v, flow: 0 })
            .collect();
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            incident[e.u].push((i, true));
            incident[e.v].push((i, false));
        }
        Network { y, cap: k as i64, boundary, edges, incident, source_used: vec![false; n], drained: vec![0; n] }
    }

    fn residual(&self, e: usize, forward: bool) -> i64 {
        let f = self.edges[e].flow;
        if forward {
            self.cap - f
        } else {
            self.cap + f
        }
    }

    fn head(&self, e: usize, forward: bool) -> usize {
        if forward {
            self.edges[e].v
        } else {
            self.edges[e].u
        }
    }

    /// BFS over the residual graph from all unused source arcs. Returns the
    /// parent table and the boundary vertex reached first, if any.
    fn search(&self) -> (Vec<Option<Parent>>, Option<usize>) {
        let n = self.y.len();
        let mut parent: Vec<Option<Parent>> = vec![None; n];
        let mut queue = VecDeque::new();
        for v in 0..n {
            if !self.source_used[v] {
                parent[v] = Some(Parent::Source);
                if self.boundary[v] {
                    return (parent, Some(v));
                }
                queue.push_back(v);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &(e, forward) in &self.incident[w] {
                let t = self.head(e, forward);
                if parent[t].is_none() && self.residual(e, forward) > 0 {
                    parent[t] = Some(Parent::Edge(e, forward));
                    if self.boundary[t] {
                        return (parent, Some(t));
                    }
                    queue.push_back(t);
                }
            }
        }
        (parent, None)
    }

    /// Augments one unit at a time until no source arc can reach the sink.
    fn run(&mut self) -> Vec<bool> {
        loop {
            let (parent, hit) = self.search();
            let Some(mut t) = hit else {
                return parent.iter().map(Option::is_some).collect();
            };
            self.drained[t] += 1;
            loop {
                match parent[t].expect("on path") {
                    Parent::Source => {
                        self.source_used[t] = true;
                        break;
                    }
                    Parent::Edge(e, forward) => {
                        self.edges[e].flow += if forward { 1 } else { -1 };
                        t = if forward { self.edges[e].u } else { self.edges[e].v };
                    }
                }
            }
        }
    }

    fn value(&self) -> usize {
        self.source_used.iter().filter(|&&s| s).count()
    }

    /// Splits the flow into one path per vertex, in key order. A walk stops at
    /// the first boundary vertex; repeated vertices are cut out.
    fn decompose(&self) -> EvacScheme {
        let n = self.y.len();
        let a = self.y.alphabet();
        // remaining units per directed traversal: (edge, forward)
        let mut units: Vec<(i64, i64)> = self.edges.iter().map(|e| (e.flow.max(0), (-e.flow).max(0))).collect();
        let mut drained = self.drained.clone();
        let mut paths = std::collections::BTreeMap::new();
        for v in 0..n {
            let mut walk: Vec<(usize, Letter, usize)> = Vec::new();
            let mut at = v;
            while !(self.boundary[at] && drained[at] > 0) {
                let &(e, forward) = self.incident[at]
                    .iter()
                    .find(|&&(e, forward)| if forward { units[e].0 > 0 } else { units[e].1 > 0 })
                    .expect("flow conservation");
                let edge = &self.edges[e];
                if forward {
                    units[e].0 -= 1;
                    walk.push((edge.u, edge.letter, edge.v));
                } else {
                    units[e].1 -= 1;
                    walk.push((edge.v, edge.letter.inverse(), edge.u));
                }
                at = self.head(e, forward);
            }
            drained[at] -= 1;
            let path = simplify(truncate(walk, &self.boundary));
            paths.insert(
                self.y.key(v).to_string(),
                path.into_iter()
                    .map(|(u, l, w)| Step::new(self.y.key(u), a.letter_name(l), self.y.key(w)))
                    .collect(),
            );
        }
        EvacScheme { k: self.cap as u32, paths }
    }
}

fn truncate(walk: Vec<(usize, Letter, usize)>, boundary: &[bool]) -> Vec<(usize, Letter, usize)> {
    if walk.first().is_some_and(|&(u, _, _)| boundary[u]) {
        return Vec::new();
    }
    match walk.iter().position(|&(_, _, w)| boundary[w]) {
        Some(i) => walk[..=i].to_vec(),
        None => walk,
    }
}

/// Removes closed sub-walks so that no vertex repeats.
fn simplify(walk: Vec<(usize, Letter, usize)>) -> Vec<(usize, Letter, usize)> {
    let mut out: Vec<(usize, Letter, usize)> = Vec::new();
    for step in walk {
        match out.iter().position(|&(u, _, _)| u == step.2) {
            Some(i) => out.truncate(i),
            None => out.push(step),
        }
    }
    out
}

fn check(y: &Automaton, k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::BadCapacity);
    }
    if y.is_empty() {
        return Err(Error::EmptyAutomaton);
    }
    if y.boundary_vertices().is_empty() {
        return Err(Error::NoEvacuationTarget);
    }
    Ok(())
}

/// A pure (`K = 1`) scheme on `y`, or a witness that none exists.
pub fn solve_pure(y: &Automaton) -> Result<Outcome> {
    solve_with_constant(y, 1)
}

/// A scheme with constant `k`, or a set `Z` of internal vertices with
/// `k·|∂*Z| < |Z|`. The witness is the set of vertices reachable from the
/// source in the final residual graph.
pub fn solve_with_constant(y: &Automaton, k: u32) -> Result<Outcome> {
    check(y, k)?;
    let mut net = Network::new(y, k);
    let reachable = net.run();
    if net.value() == y.len() {
        Ok(Outcome::Scheme(net.decompose()))
    } else {
        Ok(Outcome::None(Witness::from_mask(y, &reachable)))
    }
}

/// Maximum number of vertices that can be evacuated simultaneously with edge capacity `k`.
pub fn max_flow_value(y: &Automaton, k: u32) -> Result<usize> {
    check(y, k)?;
    let mut net = Network::new(y, k);
    net.run();
    Ok(net.value())
}
