//! Rooted binary trees.
//!
//! A tree is either a single dot (the trivial tree) or a caret joining a left
//! and a right subtree. The canonical text form writes a dot as `.` and a caret
//! as `(` L R `)`, so the 3-leaf left comb is `((..).)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeShape {
    Leaf,
    Caret(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    pub fn leaf() -> Self {
        TreeShape::Leaf
    }

    pub fn caret(left: TreeShape, right: TreeShape) -> Self {
        TreeShape::Caret(Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TreeShape::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TreeShape::Leaf => 1,
            TreeShape::Caret(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn caret_count(&self) -> usize {
        self.leaf_count() - 1
    }

    /// Height of a dot is 0, of a caret one more than its taller child.
    pub fn height(&self) -> usize {
        match self {
            TreeShape::Leaf => 0,
            TreeShape::Caret(l, r) => 1 + l.height().max(r.height()),
        }
    }

    /// Splits a caret into its two children.
    pub fn children(&self) -> Option<(&TreeShape, &TreeShape)> {
        match self {
            TreeShape::Leaf => None,
            TreeShape::Caret(l, r) => Some((l, r)),
        }
    }

    /// Right comb with `n` leaves: `(.(.(...)))`.
    pub fn right_comb(n: usize) -> Self {
        assert!(n >= 1, "a tree has at least one leaf");
        let mut t = TreeShape::Leaf;
        for _ in 1..n {
            t = TreeShape::caret(TreeShape::Leaf, t);
        }
        t
    }

    /// Smallest tree containing the carets of both trees (both rooted at the
    /// same point and read as sets of carets).
    pub fn union(&self, other: &TreeShape) -> TreeShape {
        match (self, other) {
            (TreeShape::Leaf, t) | (t, TreeShape::Leaf) => t.clone(),
            (TreeShape::Caret(l1, r1), TreeShape::Caret(l2, r2)) => {
                TreeShape::caret(l1.union(l2), r1.union(r2))
            }
        }
    }

    /// For `self` contained in `bigger`, the subtrees of `bigger` hanging at
    /// each leaf of `self`, left to right.
    pub fn subtrees_at_leaves(&self, bigger: &TreeShape) -> Vec<TreeShape> {
        let mut out = Vec::with_capacity(self.leaf_count());
        collect_hanging(self, bigger, &mut out);
        out
    }

    /// Replaces leaf `i` by `subs[i]`.
    pub fn graft(&self, subs: &[TreeShape]) -> TreeShape {
        debug_assert_eq!(subs.len(), self.leaf_count());
        let mut it = subs.iter();
        graft_iter(self, &mut it)
    }

    /// Leaf indices `i` such that leaves `i` and `i + 1` hang from one caret.
    pub fn exposed_carets(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut counter = 0;
        exposed_rec(self, &mut counter, &mut out);
        out
    }

    /// Removes the exposed caret whose left leaf has index `i`.
    pub fn collapse_caret(&self, i: usize) -> TreeShape {
        let mut counter = 0;
        collapse_rec(self, i, &mut counter)
    }

    pub fn encode(&self) -> String {
        let mut s = String::with_capacity(2 * self.leaf_count());
        self.write_to(&mut s);
        s
    }

    fn write_to(&self, s: &mut String) {
        match self {
            TreeShape::Leaf => s.push('.'),
            TreeShape::Caret(l, r) => {
                s.push('(');
                l.write_to(s);
                r.write_to(s);
                s.push(')');
            }
        }
    }
}

fn collect_hanging(small: &TreeShape, big: &TreeShape, out: &mut Vec<TreeShape>) {
    match (small, big) {
        (TreeShape::Leaf, b) => out.push(b.clone()),
        (TreeShape::Caret(sl, sr), TreeShape::Caret(bl, br)) => {
            collect_hanging(sl, bl, out);
            collect_hanging(sr, br, out);
        }
        (TreeShape::Caret(..), TreeShape::Leaf) => {
            panic!("subtrees_at_leaves: tree is not contained in the larger tree")
        }
    }
}

fn graft_iter<'a>(t: &TreeShape, subs: &mut impl Iterator<Item = &'a TreeShape>) -> TreeShape {
    match t {
        TreeShape::Leaf => subs.next().expect("one subtree per leaf").clone(),
        TreeShape::Caret(l, r) => {
            let l = graft_iter(l, subs);
            let r = graft_iter(r, subs);
            TreeShape::caret(l, r)
        }
    }
}

fn exposed_rec(t: &TreeShape, counter: &mut usize, out: &mut Vec<usize>) {
    match t {
        TreeShape::Leaf => *counter += 1,
        TreeShape::Caret(l, r) => {
            if l.is_leaf() && r.is_leaf() {
                out.push(*counter);
                *counter += 2;
            } else {
                exposed_rec(l, counter, out);
                exposed_rec(r, counter, out);
            }
        }
    }
}

fn collapse_rec(t: &TreeShape, i: usize, counter: &mut usize) -> TreeShape {
    match t {
        TreeShape::Leaf => {
            *counter += 1;
            TreeShape::Leaf
        }
        TreeShape::Caret(l, r) => {
            if l.is_leaf() && r.is_leaf() && *counter == i {
                *counter += 2;
                return TreeShape::Leaf;
            }
            let l = collapse_rec(l, i, counter);
            let r = collapse_rec(r, i, counter);
            TreeShape::caret(l, r)
        }
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeShape({})", self.encode())
    }
}

impl FromStr for TreeShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let t = parse_tree(bytes, &mut pos).ok_or_else(|| Error::Parse(format!("bad tree `{s}`")))?;
        if pos != bytes.len() {
            return Err(Error::Parse(format!("trailing input in tree `{s}`")));
        }
        Ok(t)
    }
}

fn parse_tree(b: &[u8], pos: &mut usize) -> Option<TreeShape> {
    match b.get(*pos)? {
        b'.' => {
            *pos += 1;
            Some(TreeShape::Leaf)
        }
        b'(' => {
            *pos += 1;
            let l = parse_tree(b, pos)?;
            let r = parse_tree(b, pos)?;
            if b.get(*pos) != Some(&b')') {
                return None;
            }
            *pos += 1;
            Some(TreeShape::caret(l, r))
        }
        _ => None,
    }
}

/// All trees with exactly `leaves` leaves and height at most `max_height`.
pub fn trees_with(leaves: usize, max_height: usize) -> Vec<TreeShape> {
    let mut memo = HashMap::new();
    trees_memo(leaves, max_height, &mut memo)
}

fn trees_memo(
    leaves: usize,
    h: usize,
    memo: &mut HashMap<(usize, usize), Vec<TreeShape>>,
) -> Vec<TreeShape> {
    if let Some(v) = memo.get(&(leaves, h)) {
        return v.clone();
    }
    let result = if leaves == 1 {
        vec![TreeShape::Leaf]
    } else if h == 0 || (h < usize::BITS as usize && leaves > (1usize << h)) {
        Vec::new()
    } else {
        let mut v = Vec::new();
        for left in 1..leaves {
            let ls = trees_memo(left, h - 1, memo);
            let rs = trees_memo(leaves - left, h - 1, memo);
            for l in &ls {
                for r in &rs {
                    v.push(TreeShape::caret(l.clone(), r.clone()));
                }
            }
        }
        v
    };
    memo.insert((leaves, h), result.clone());
    result
}
