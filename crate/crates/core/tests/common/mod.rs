//! Brute-force reference for marked forests, written independently of the
//! library: trees are strings, moves are literal list surgery, and a letter
//! is accepted when the move is possible and its result still has all
//! heights `<= k`.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// All trees (as `.`/`(LR)` strings) with `leaves` leaves and height `<= k`.
pub fn trees(leaves: usize, k: usize) -> Vec<String> {
    if leaves == 1 {
        return vec![".".to_string()];
    }
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for left in 1..leaves {
        for l in trees(left, k - 1) {
            for r in trees(leaves - left, k - 1) {
                out.push(format!("({l}{r})"));
            }
        }
    }
    out
}

pub fn height(t: &str) -> usize {
    let mut depth = 0usize;
    let mut best = 0usize;
    for ch in t.chars() {
        match ch {
            '(' => {
                depth += 1;
                best = best.max(depth);
            }
            ')' => depth -= 1,
            _ => {}
        }
    }
    best
}

/// Splits `(LR)` into `L` and `R`.
pub fn children(t: &str) -> Option<(String, String)> {
    let inner = t.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i32;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 {
            return Some((inner[..=i].to_string(), inner[i + 1..].to_string()));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Forest {
    pub trees: Vec<String>,
    pub mark: usize,
}

impl Forest {
    pub fn key(&self) -> String {
        self.trees
            .iter()
            .enumerate()
            .map(|(i, t)| if i == self.mark { format!("{t}*") } else { t.clone() })
            .collect::<Vec<_>>()
            .join(";")
    }

    fn fits(&self, k: usize) -> bool {
        self.trees.iter().all(|t| height(t) <= k)
    }
}

pub fn marked_forests(n: usize, k: usize) -> Vec<Forest> {
    fn go(rem: usize, k: usize, cur: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for l in 1..=rem {
            for t in trees(l, k) {
                cur.push(t);
                go(rem - l, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut plain = Vec::new();
    go(n, k, &mut Vec::new(), &mut plain);
    let mut out = Vec::new();
    for f in plain {
        for mark in 0..f.len() {
            out.push(Forest { trees: f.clone(), mark });
        }
    }
    out
}

/// Letters as `(generator, inverse)` with generator in `x0, x1, xb1, x2`.
pub fn apply(g: &str, inverse: bool, f: &Forest, k: usize) -> Option<Forest> {
    let out = match (g, inverse) {
        ("x0", false) => Forest { trees: f.trees.clone(), mark: f.mark.checked_sub(1)? },
        ("x0", true) => {
            if f.mark + 1 >= f.trees.len() {
                return None;
            }
            Forest { trees: f.trees.clone(), mark: f.mark + 1 }
        }
        ("x1", false) | ("xb1", false) => {
            let (l, r) = children(&f.trees[f.mark])?;
            let mut trees = f.trees.clone();
            trees.splice(f.mark..=f.mark, [l, r]);
            Forest { trees, mark: if g == "x1" { f.mark } else { f.mark + 1 } }
        }
        ("x1", true) | ("xb1", true) => {
            let i = if g == "x1" { f.mark } else { f.mark.checked_sub(1)? };
            if i + 1 >= f.trees.len() {
                return None;
            }
            let mut trees = f.trees.clone();
            let joined = format!("({}{})", trees[i], trees[i + 1]);
            trees.splice(i..=i + 1, [joined]);
            Forest { trees, mark: i }
        }
        ("x2", inv) => {
            let a = apply("x0", true, f, k)?;
            let b = apply("x1", inv, &a, k)?;
            apply("x0", false, &b, k)?
        }
        _ => panic!("unknown generator {g}"),
    };
    out.fits(k).then_some(out)
}

pub fn is_y0(f: &Forest, k: usize) -> bool {
    k >= 1
        && f.trees[f.mark] == "."
        && f.mark >= 1
        && f.mark + 1 < f.trees.len()
        && height(&f.trees[f.mark - 1]) == k
        && height(&f.trees[f.mark + 1]) == k
}

/// Size, `ν` for every letter of the generator list (in `g, g^-1` order), and `|Y0|`.
pub struct Counts {
    pub size: u64,
    pub nu: BTreeMap<(String, bool), u64>,
    pub y0: u64,
}

pub fn counts(n: usize, k: usize) -> Counts {
    let all = marked_forests(n, k);
    let mut nu = BTreeMap::new();
    for g in ["x0", "x1", "xb1", "x2"] {
        for inv in [false, true] {
            let c = all.iter().filter(|f| apply(g, inv, f, k).is_none()).count() as u64;
            nu.insert((g.to_string(), inv), c);
        }
    }
    Counts { size: all.len() as u64, nu, y0: all.iter().filter(|f| is_y0(f, k)).count() as u64 }
}

/// The alphabets used across the corpus.
pub const ALPHABETS: [&str; 5] = ["x0,x1", "x1,xb1", "x0,x1,xb1", "x0,x1,x2", "x1,xb1,x0,x0"];
