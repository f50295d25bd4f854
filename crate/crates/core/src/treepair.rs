//! Tree-pair diagrams.
//!
//! A finite rooted binary tree is stored as the depths of its leaves, read
//! left to right. Leaf `i` at depth `d` is a standard dyadic interval of
//! length `2^-d`, and the leaves partition `[0,1]` in order. Every algorithm
//! here works on these flat sequences without recursion, so trees with very
//! long spines (high-index generators) are fine.

use std::fmt;
use std::str::FromStr;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::pl::{End, PlMap};

/// A finite binary tree, as its left-to-right leaf depths.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tree {
    depths: Vec<u32>,
}

impl Tree {
    /// The single-leaf tree.
    pub fn leaf() -> Self {
        Tree { depths: vec![0] }
    }

    /// One caret with two leaves.
    pub fn caret() -> Self {
        Tree { depths: vec![1, 1] }
    }

    pub fn from_depths(depths: Vec<u32>) -> Result<Self> {
        let mut stack: Vec<u32> = Vec::with_capacity(64);
        for &d in &depths {
            if stack == [0] {
                return Err(Error::InvalidTree("leaves after a complete tree".into()));
            }
            let mut d = d;
            while stack.last() == Some(&d) {
                if d == 0 {
                    return Err(Error::InvalidTree("leaf depths overflow the root".into()));
                }
                stack.pop();
                d -= 1;
            }
            stack.push(d);
        }
        if stack != [0] {
            return Err(Error::InvalidTree(format!("leaf depths {depths:?} do not form a tree")));
        }
        Ok(Tree { depths })
    }

    pub(crate) fn from_depths_unchecked(depths: Vec<u32>) -> Self {
        Tree { depths }
    }

    pub fn depths(&self) -> &[u32] {
        &self.depths
    }

    pub fn leaf_count(&self) -> usize {
        self.depths.len()
    }

    pub fn caret_count(&self) -> usize {
        self.depths.len() - 1
    }

    /// `out[i]` is true when leaves `i` and `i + 1` hang from one caret.
    pub fn sibling_leaves(&self) -> Vec<bool> {
        let n = self.depths.len();
        let mut out = vec![false; n.saturating_sub(1)];
        // (depth, leaf index if this entry is still a bare leaf)
        let mut stack: Vec<(u32, Option<usize>)> = Vec::with_capacity(64);
        for (i, &d) in self.depths.iter().enumerate() {
            let mut entry = (d, Some(i));
            while let Some(&(top, top_leaf)) = stack.last() {
                if top != entry.0 {
                    break;
                }
                if let (Some(l), Some(_)) = (top_leaf, entry.1) {
                    out[l] = true;
                }
                stack.pop();
                entry = (entry.0 - 1, None);
            }
            stack.push(entry);
        }
        out
    }

    /// Merges each marked pair of sibling leaves `(i, i+1)` into its parent.
    pub(crate) fn collapse(&self, marks: &[bool]) -> Tree {
        let mut depths = Vec::with_capacity(self.depths.len());
        let mut i = 0;
        while i < self.depths.len() {
            if i < marks.len() && marks[i] {
                depths.push(self.depths[i] - 1);
                i += 2;
            } else {
                depths.push(self.depths[i]);
                i += 1;
            }
        }
        Tree { depths }
    }

    /// Smallest common refinement of two trees (union of their carets).
    pub fn union(&self, other: &Tree) -> Tree {
        let mut out = Vec::with_capacity(self.depths.len().max(other.depths.len()));
        let mut a = SplitCursor::new(&self.depths);
        let mut b = SplitCursor::new(&other.depths);
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(x), Some(y)) if x == y => {
                    out.push(x);
                    a.advance();
                    b.advance();
                }
                (Some(x), Some(y)) if x > y => b.split(),
                (Some(_), Some(_)) => a.split(),
                _ => unreachable!("both trees partition [0,1]"),
            }
        }
        Tree { depths: out }
    }

    /// Given `self` refined by `target`, returns for each leaf of `self` the
    /// depths (relative to that leaf) of the `target` leaves beneath it.
    fn relative_refinement(&self, target: &Tree) -> Vec<Vec<u32>> {
        let mut t = target.depths.iter().copied().peekable();
        let mut out = Vec::with_capacity(self.depths.len());
        for &d in &self.depths {
            let mut offsets = Vec::new();
            let mut pending = vec![d];
            while let Some(front) = pending.pop() {
                let td = *t.peek().expect("target refines self");
                if td == front {
                    offsets.push(td - d);
                    t.next();
                } else {
                    debug_assert!(td > front, "target must refine self");
                    pending.extend([front + 1, front + 1]);
                }
            }
            out.push(offsets);
        }
        out
    }

    /// Preorder bits: 1 for a caret, 0 for a leaf.
    pub fn preorder_bits(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(2 * self.depths.len());
        let mut leaves = self.depths.iter().copied();
        let mut next = leaves.next();
        let mut stack = vec![0u32];
        while let Some(d) = stack.pop() {
            if next == Some(d) {
                bits.push(false);
                next = leaves.next();
            } else {
                bits.push(true);
                stack.extend([d + 1, d + 1]);
            }
        }
        bits
    }

    /// Reads one tree from the front of a preorder bit stream, returning it
    /// and the number of bits consumed.
    pub fn from_preorder(bits: &[bool]) -> Result<(Tree, usize)> {
        let mut depths = Vec::new();
        let mut stack = vec![0u32];
        let mut used = 0;
        while let Some(d) = stack.pop() {
            let bit = *bits
                .get(used)
                .ok_or_else(|| Error::InvalidTree("truncated preorder encoding".into()))?;
            used += 1;
            if bit {
                stack.extend([d + 1, d + 1]);
            } else {
                depths.push(d);
            }
        }
        Ok((Tree { depths }, used))
    }

    /// Left endpoints of the leaf intervals.
    pub fn leaf_positions(&self) -> Vec<Dyadic> {
        let mut pos = Dyadic::zero();
        let mut out = Vec::with_capacity(self.depths.len());
        for &d in &self.depths {
            let next = &pos + &Dyadic::pow2(-(d as i64));
            out.push(std::mem::replace(&mut pos, next));
        }
        out
    }

    pub(crate) fn parse_at(s: &str, offset: usize) -> Result<Tree> {
        let mut depths = Vec::new();
        // number of children completed for each open caret
        let mut open: Vec<u8> = Vec::new();
        let mut expect_tree = true;
        let mut done = false;
        for (i, c) in s.char_indices() {
            let pos = offset + i;
            if c.is_whitespace() {
                continue;
            }
            if done {
                return Err(Error::parse(pos, format!("unexpected '{c}' after complete tree")));
            }
            match (c, expect_tree) {
                ('(', true) => open.push(0),
                ('*', true) => {
                    depths.push(open.len() as u32);
                    expect_tree = false;
                    // a finished subtree either needs ',' or closes carets
                    match open.last_mut() {
                        None => done = true,
                        Some(n) => *n += 1,
                    }
                }
                (',', false) if open.last() == Some(&1) => expect_tree = true,
                (')', false) if open.last() == Some(&2) => {
                    open.pop();
                    match open.last_mut() {
                        None => done = true,
                        Some(n) => *n += 1,
                    }
                }
                _ => return Err(Error::parse(pos, format!("unexpected '{c}' in tree"))),
            }
        }
        if !done {
            return Err(Error::parse(offset + s.len(), "incomplete tree"));
        }
        Ok(Tree { depths })
    }
}

/// Walks a leaf-depth sequence, allowing the current leaf to be split into
/// its two children.
struct SplitCursor<'a> {
    rest: std::slice::Iter<'a, u32>,
    // pieces of split leaves, next piece on top
    pending: Vec<u32>,
}

impl<'a> SplitCursor<'a> {
    fn new(depths: &'a [u32]) -> Self {
        SplitCursor {
            rest: depths.iter(),
            pending: Vec::new(),
        }
    }

    fn peek(&self) -> Option<u32> {
        self.pending
            .last()
            .copied()
            .or_else(|| self.rest.clone().next().copied())
    }

    fn advance(&mut self) {
        if self.pending.pop().is_none() {
            self.rest.next();
        }
    }

    fn split(&mut self) {
        let d = self.peek().expect("split past the end");
        self.advance();
        self.pending.extend([d + 1, d + 1]);
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut open: Vec<u8> = Vec::new();
        for bit in self.preorder_bits() {
            if bit {
                f.write_str("(")?;
                open.push(0);
                continue;
            }
            f.write_str("*")?;
            while let Some(n) = open.last_mut() {
                *n += 1;
                if *n == 1 {
                    f.write_str(",")?;
                    break;
                }
                f.write_str(")")?;
                open.pop();
            }
        }
        Ok(())
    }
}

impl FromStr for Tree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Tree::parse_at(s, 0)
    }
}

/// A pair of trees with equal leaf counts; leaf `i` of the domain tree is
/// mapped affinely onto leaf `i` of the range tree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TreePair {
    domain: Tree,
    range: Tree,
}

impl TreePair {
    pub fn new(domain: Tree, range: Tree) -> Result<Self> {
        if domain.leaf_count() != range.leaf_count() {
            return Err(Error::LeafCountMismatch {
                domain: domain.leaf_count(),
                range: range.leaf_count(),
            });
        }
        Ok(TreePair { domain, range })
    }

    pub fn identity() -> Self {
        TreePair {
            domain: Tree::leaf(),
            range: Tree::leaf(),
        }
    }

    pub fn domain(&self) -> &Tree {
        &self.domain
    }

    pub fn range(&self) -> &Tree {
        &self.range
    }

    pub fn is_identity(&self) -> bool {
        self.domain.leaf_count() == 1 && self.range.leaf_count() == 1
    }

    fn common_carets(&self) -> Vec<bool> {
        let a = self.domain.sibling_leaves();
        let b = self.range.sibling_leaves();
        a.iter().zip(&b).map(|(x, y)| *x && *y).collect()
    }

    pub fn is_reduced(&self) -> bool {
        !self.common_carets().contains(&true)
    }

    /// Cancels common carets until none remain.
    ///
    /// Single left-to-right pass running the shift-reduce parse of both
    /// trees side by side: a new leaf cancels against the previous one
    /// exactly when that leaf is still bare on top of both stacks at the
    /// same depth. The merged leaf is then retried against its left
    /// neighbour.
    pub fn reduce(&self) -> TreePair {
        let n = self.domain.depths.len();
        let mut leaves: Vec<(u32, u32)> = Vec::with_capacity(n);
        let mut dom_stack: Vec<(u32, bool)> = Vec::with_capacity(64);
        let mut ran_stack: Vec<(u32, bool)> = Vec::with_capacity(64);
        for (&d, &r) in self.domain.depths.iter().zip(&self.range.depths) {
            let mut leaf = (d, r);
            while dom_stack.last() == Some(&(leaf.0, true)) && ran_stack.last() == Some(&(leaf.1, true)) {
                dom_stack.pop();
                ran_stack.pop();
                leaves.pop();
                leaf = (leaf.0 - 1, leaf.1 - 1);
            }
            leaves.push(leaf);
            shift_reduce(&mut dom_stack, leaf.0);
            shift_reduce(&mut ran_stack, leaf.1);
        }
        let (domain, range) = leaves.into_iter().unzip();
        TreePair {
            domain: Tree::from_depths_unchecked(domain),
            range: Tree::from_depths_unchecked(range),
        }
    }

    /// Cancels the single common caret at leaves `(i, i+1)`.
    pub fn cancel_caret(&self, i: usize) -> Option<TreePair> {
        let marks = self.common_carets();
        if !marks.get(i).copied().unwrap_or(false) {
            return None;
        }
        let mut one = vec![false; marks.len()];
        one[i] = true;
        Some(TreePair {
            domain: self.domain.collapse(&one),
            range: self.range.collapse(&one),
        })
    }

    /// Indices `i` where leaves `(i, i+1)` form a caret in both trees.
    pub fn cancellable_carets(&self) -> Vec<usize> {
        self.common_carets()
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect()
    }

    /// Splits leaf `i` in both trees.
    pub fn split_leaf(&self, i: usize) -> TreePair {
        let split = |t: &Tree| {
            let mut depths = t.depths.clone();
            let d = depths[i] + 1;
            depths.splice(i..=i, [d, d]);
            Tree::from_depths_unchecked(depths)
        };
        TreePair {
            domain: split(&self.domain),
            range: split(&self.range),
        }
    }

    pub fn inverse(&self) -> TreePair {
        TreePair {
            domain: self.range.clone(),
            range: self.domain.clone(),
        }
    }

    /// Reduced product `self * other`, acting as `t -> self(other(t))`.
    pub fn multiply(&self, other: &TreePair) -> TreePair {
        let middle = other.range.union(&self.domain);
        let lower = expand(&other.domain, &other.range, &middle);
        let upper = expand(&self.range, &self.domain, &middle);
        TreePair {
            domain: lower,
            range: upper,
        }
        .reduce()
    }

    pub fn log_slope(&self, end: End) -> i64 {
        let (d, r) = match end {
            End::Zero => (self.domain.depths[0], self.range.depths[0]),
            End::One => (
                *self.domain.depths.last().expect("nonempty"),
                *self.range.depths.last().expect("nonempty"),
            ),
        };
        d as i64 - r as i64
    }

    /// Preorder bits of the domain tree, then the range tree, packed
    /// most-significant bit first and zero padded.
    pub fn canonical_key(&self) -> Result<Vec<u8>> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        Ok(self.key_unchecked())
    }

    pub(crate) fn key_unchecked(&self) -> Vec<u8> {
        let bits: Vec<bool> = self
            .domain
            .preorder_bits()
            .into_iter()
            .chain(self.range.preorder_bits())
            .collect();
        let mut out = vec![0u8; bits.len().div_ceil(8)];
        for (i, b) in bits.iter().enumerate() {
            if *b {
                out[i / 8] |= 0x80 >> (i % 8);
            }
        }
        out
    }

    /// Inverse of [`TreePair::canonical_key`].
    pub fn from_key(key: &[u8]) -> Result<TreePair> {
        let bits: Vec<bool> = key
            .iter()
            .flat_map(|byte| (0..8).map(move |i| byte & (0x80 >> i) != 0))
            .collect();
        let (domain, used) = Tree::from_preorder(&bits)?;
        let (range, used2) = Tree::from_preorder(&bits[used..])?;
        if bits[used + used2..].iter().any(|b| *b) || (used + used2).div_ceil(8) != key.len() {
            return Err(Error::InvalidTree("trailing bits in key".into()));
        }
        let p = TreePair::new(domain, range)?;
        if !p.is_reduced() {
            return Err(Error::NotReduced);
        }
        Ok(p)
    }

    pub fn to_pl(&self) -> PlMap {
        let mut points: Vec<(Dyadic, Dyadic)> = self
            .domain
            .leaf_positions()
            .into_iter()
            .zip(self.range.leaf_positions())
            .collect();
        points.push((Dyadic::one(), Dyadic::one()));
        PlMap::from_points_unchecked(points)
    }

    /// The reduced tree pair of a PL map.
    pub fn from_pl(f: &PlMap) -> TreePair {
        let pts = f.breakpoints();
        let mut domain = Vec::new();
        let mut range = Vec::new();
        // standard intervals still to examine, leftmost on top
        let mut stack = vec![(Dyadic::zero(), 0u32)];
        while let Some((a, d)) = stack.pop() {
            let b = &a + &Dyadic::pow2(-(d as i64));
            // segment containing [a, b) starts at breakpoint j
            let j = pts.partition_point(|p| p.0 <= a) - 1;
            let linear = pts[j + 1].0 >= b;
            let image_depth = if linear {
                let (u0, v0) = &pts[j];
                let (u1, v1) = &pts[j + 1];
                let s = (v1 - v0).log2_ratio(&(u1 - u0)).expect("power-of-2 slope");
                let e = d as i64 - s;
                let fa = v0 + &(&a - u0).mul_pow2(s);
                (e >= 0 && fa.exponent() <= e as u64).then_some(e as u32)
            } else {
                None
            };
            match image_depth {
                Some(e) => {
                    domain.push(d);
                    range.push(e);
                }
                None => {
                    let mid = &a + &Dyadic::pow2(-(d as i64 + 1));
                    stack.push((mid, d + 1));
                    stack.push((a, d + 1));
                }
            }
        }
        TreePair {
            domain: Tree::from_depths_unchecked(domain),
            range: Tree::from_depths_unchecked(range),
        }
        .reduce()
    }

    pub(crate) fn parse_at(s: &str, offset: usize) -> Result<TreePair> {
        let (d, r) = s
            .split_once('|')
            .ok_or_else(|| Error::parse(offset, "expected 'DOMAIN|RANGE'"))?;
        let domain = Tree::parse_at(d, offset)?;
        let range = Tree::parse_at(r, offset + d.len() + 1)?;
        TreePair::new(domain, range)
    }
}

/// Pushes a bare leaf of depth `d`, merging equal-depth siblings.
fn shift_reduce(stack: &mut Vec<(u32, bool)>, d: u32) {
    let mut entry = (d, true);
    while let Some(&(top, _)) = stack.last() {
        if top != entry.0 || top == 0 {
            break;
        }
        stack.pop();
        entry = (top - 1, false);
    }
    stack.push(entry);
}

/// Expands the pair `(partner, tree)` so that `tree` becomes `target`,
/// returning the correspondingly expanded partner tree.
fn expand(partner: &Tree, tree: &Tree, target: &Tree) -> Tree {
    let refinement = tree.relative_refinement(target);
    let mut depths = Vec::with_capacity(target.leaf_count());
    for (&d, offsets) in partner.depths.iter().zip(&refinement) {
        depths.extend(offsets.iter().map(|o| d + o));
    }
    Tree::from_depths_unchecked(depths)
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.domain, self.range)
    }
}

impl FromStr for TreePair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TreePair::parse_at(s, 0)
    }
}
