//! Words in the generators `x_n`, their evaluation, normal forms, the
//! shift endomorphism and the relation checker for
//! `x_i^-1 x_n x_i = x_{n+1}` (`i < n`).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::pl::{Interval, PlMap};
use crate::treepair::{Tree, TreePair};

/// The letter `x_index^(+1 or -1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: u32, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub fn gen(index: u32) -> Self {
        Letter::new(index, false)
    }

    pub fn inv(index: u32) -> Self {
        Letter::new(index, true)
    }

    pub fn inverted(self) -> Self {
        Letter::new(self.index, !self.inverse)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "x{}^-1", self.index)
        } else {
            write!(f, "x{}", self.index)
        }
    }
}

/// A finite word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub(crate) fn parse_at(s: &str, offset: usize) -> Result<Word> {
        let mut letters = Vec::new();
        let mut rest = s;
        let mut pos = offset;
        loop {
            let trimmed = rest.trim_start();
            pos += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
            let token = &trimmed[..end];
            letters.push(parse_letter(token, pos)?);
            pos += end;
            rest = &trimmed[end..];
        }
        Ok(Word(letters))
    }
}

fn parse_letter(token: &str, pos: usize) -> Result<Letter> {
    let body = token
        .strip_prefix('x')
        .ok_or_else(|| Error::parse(pos, format!("expected a generator like 'x3', found '{token}'")))?;
    let (index, inverse) = match body.split_once('^') {
        None => (body, false),
        Some((i, "-1")) => (i, true),
        Some((i, "1")) => (i, false),
        Some(_) => {
            return Err(Error::parse(pos, format!("exponent must be 1 or -1 in '{token}'")));
        }
    };
    let index = index
        .parse::<u32>()
        .map_err(|_| Error::parse(pos + 1, format!("invalid generator index in '{token}'")))?;
    Ok(Letter { index, inverse })
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::parse_at(s, 0)
    }
}

/// The PL map of `x_n`: `x_0` has slopes 1/2, 1, 2 on `[0,1/2]`,
/// `[1/2,3/4]`, `[3/4,1]`; `x_n` is its affine copy on `[1-2^-n, 1]`.
pub fn generator(n: u32) -> PlMap {
    let x0 = PlMap::from_points_unchecked(vec![
        (Dyadic::zero(), Dyadic::zero()),
        (Dyadic::new(1, 1), Dyadic::new(1, 2)),
        (Dyadic::new(3, 2), Dyadic::new(1, 1)),
        (Dyadic::one(), Dyadic::one()),
    ]);
    if n == 0 {
        return x0;
    }
    let lo = &Dyadic::one() - &Dyadic::pow2(-(n as i64));
    let target = Interval::new(lo, Dyadic::one()).expect("valid interval");
    x0.rescale_into(&target).expect("nondegenerate")
}

/// The reduced tree pair of `x_n`, built directly.
pub fn generator_tree(n: u32) -> TreePair {
    let spine = 1..=n;
    let domain: Vec<u32> = spine.clone().chain([n + 1, n + 2, n + 2]).collect();
    let range: Vec<u32> = spine.chain([n + 2, n + 2, n + 1]).collect();
    TreePair::new(
        Tree::from_depths_unchecked(domain),
        Tree::from_depths_unchecked(range),
    )
    .expect("equal leaf counts")
}

fn letter_tree(l: Letter) -> TreePair {
    let g = generator_tree(l.index);
    if l.inverse {
        g.inverse()
    } else {
        g
    }
}

/// Evaluates a word as a reduced tree pair.
pub fn eval_word(w: &Word) -> TreePair {
    w.0.iter()
        .fold(TreePair::identity(), |acc, &l| acc.multiply(&letter_tree(l)))
}

/// Evaluates a word as a PL map.
pub fn eval_word_pl(w: &Word) -> PlMap {
    w.0.iter().fold(PlMap::identity(), |acc, &l| {
        let g = generator(l.index);
        acc.compose(&if l.inverse { g.inverse() } else { g })
    })
}

/// `x_{i_1} ... x_{i_k} * x_{j_l}^-1 ... x_{j_1}^-1` with both index
/// sequences nondecreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    pub positive: Vec<u32>,
    pub negative: Vec<u32>,
}

impl NormalForm {
    pub fn to_word(&self) -> Word {
        let pos = self.positive.iter().map(|&i| Letter::gen(i));
        let neg = self.negative.iter().rev().map(|&j| Letter::inv(j));
        Word(pos.chain(neg).collect())
    }

    /// Both parts nondecreasing, and any index present in both parts has
    /// its successor present in at least one part.
    pub fn is_reduced(&self) -> bool {
        let sorted = |v: &[u32]| v.windows(2).all(|w| w[0] <= w[1]);
        if !sorted(&self.positive) || !sorted(&self.negative) {
            return false;
        }
        self.positive.iter().all(|i| {
            !self.negative.contains(i)
                || self.positive.contains(&(i + 1))
                || self.negative.contains(&(i + 1))
        })
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive.is_empty() && self.negative.is_empty() {
            return f.write_str("1");
        }
        write!(f, "{}", self.to_word())
    }
}

/// Exponent of `x_k` for each leaf `k`, read off the tree of a positive
/// element `(right vine, tree)`.
///
/// Leaf `k` is the leftmost leaf of a maximal subtree `N`; the exponent is
/// the length of the left path from the leaf up to `N`, less one when `N`
/// lies on the right spine.
fn leaf_exponents(tree: &Tree) -> Vec<u32> {
    let one = Dyadic::one();
    tree.leaf_positions()
        .iter()
        .zip(tree.depths())
        .map(|(p, &d)| {
            let top = p.exponent() as u32;
            let climb = d - top;
            let on_spine = (p + &Dyadic::pow2(-(top as i64))) == one;
            if on_spine {
                climb.saturating_sub(1)
            } else {
                climb
            }
        })
        .collect()
}

fn expand_exponents(exps: &[u32]) -> Vec<u32> {
    exps.iter()
        .enumerate()
        .flat_map(|(k, &e)| std::iter::repeat_n(k as u32, e as usize))
        .collect()
}

/// Normal form of a reduced tree pair. The range tree gives the positive
/// part and the domain tree the negative part.
pub fn normal_form(g: &TreePair) -> NormalForm {
    let g = g.reduce();
    NormalForm {
        positive: expand_exponents(&leaf_exponents(g.range())),
        negative: expand_exponents(&leaf_exponents(g.domain())),
    }
}

pub fn words_equal(a: &Word, b: &Word) -> bool {
    eval_word(a).key_unchecked() == eval_word(b).key_unchecked()
}

/// The shift `x_i -> x_{i+1}`: the affine copy on `[1/2, 1]`.
pub fn shift(g: &TreePair) -> TreePair {
    let lift = |t: &Tree| {
        let depths = std::iter::once(1).chain(t.depths().iter().map(|d| d + 1)).collect();
        Tree::from_depths_unchecked(depths)
    };
    TreePair::new(lift(g.domain()), lift(g.range()))
        .expect("equal leaf counts")
        .reduce()
}

pub fn shift_pl(g: &PlMap) -> PlMap {
    let half = Interval::new(Dyadic::new(1, 1), Dyadic::one()).expect("valid interval");
    g.rescale_into(&half).expect("nondegenerate")
}

/// One checked instance of `x_i^-1 x_n x_i = x_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub i: u32,
    pub n: u32,
    pub pl_holds: bool,
    pub tree_holds: bool,
}

/// Checks every relation whose indices are at most `max_index`, i.e. all
/// `0 <= i < n` with `n + 1 <= max_index`, in both representations.
pub fn check_relations(max_index: u32) -> Result<Vec<RelationCheck>> {
    let mut report = Vec::new();
    for n in 1..max_index {
        for i in 0..n {
            let w = Word(vec![Letter::inv(i), Letter::gen(n), Letter::gen(i)]);
            let tree_holds = eval_word(&w) == generator_tree(n + 1);
            let pl_holds = eval_word_pl(&w) == generator(n + 1);
            if !(tree_holds && pl_holds) {
                return Err(Error::RelationFailed { i, n });
            }
            report.push(RelationCheck {
                i,
                n,
                pl_holds,
                tree_holds,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl::Subgroup;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn map(s: &str) -> PlMap {
        s.parse().unwrap()
    }

    #[test]
    fn generator_maps() {
        assert_eq!(generator(0), map("0:0; 1/2:1/4; 3/4:1/2; 1:1"));
        assert_eq!(generator(1), map("0:0; 1/2:1/2; 3/4:5/8; 7/8:3/4; 1:1"));
        assert_eq!(generator(2), map("0:0; 3/4:3/4; 7/8:13/16; 15/16:7/8; 1:1"));
        for n in 0..12 {
            assert_eq!(generator_tree(n).to_pl(), generator(n));
            assert_eq!(TreePair::from_pl(&generator(n)), generator_tree(n));
            assert!(generator_tree(n).is_reduced());
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_word(&Word::empty()), TreePair::identity());
        assert_eq!(eval_word(&w("x0^-1 x1 x0")), generator_tree(2));
        assert_eq!(eval_word_pl(&w("x0^-1 x1 x0")), generator(2));
        assert_eq!(eval_word(&w("x0 x0^-1")), TreePair::identity());
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(normal_form(&TreePair::identity()), NormalForm::default());
        let nf = normal_form(&eval_word(&w("x1 x0")));
        assert_eq!(nf.positive, vec![0, 2]);
        assert!(nf.negative.is_empty());
        assert_eq!(normal_form(&generator_tree(2)).positive, vec![2]);
        let nf = normal_form(&eval_word(&w("x3^-1 x0")));
        assert_eq!(eval_word(&nf.to_word()), eval_word(&w("x3^-1 x0")));
        assert!(nf.is_reduced());
    }

    #[test]
    fn words_equal_examples() {
        assert!(words_equal(&w("x0^-1 x1 x0"), &w("x2")));
        assert!(!words_equal(&w("x0"), &w("x1")));
        assert!(words_equal(&Word::empty(), &w("x0 x0^-1")));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&generator_tree(0)), generator_tree(1));
        assert_eq!(shift_pl(&generator(0)), generator(1));
        assert_eq!(shift(&TreePair::identity()), TreePair::identity());
        let x0 = generator_tree(0);
        let conj = x0.inverse().multiply(&shift(&x0)).multiply(&x0);
        assert_eq!(conj, generator_tree(2));
        assert!(shift_pl(&generator(0)).is_member(Subgroup::Shifted(1)));
    }

    #[test]
    fn relation_counts() {
        assert_eq!(check_relations(2).unwrap().len(), 1);
        assert_eq!(check_relations(8).unwrap().len(), 28);
        assert!(check_relations(1).unwrap().is_empty());
        assert!(check_relations(0).unwrap().is_empty());
    }

    #[test]
    fn word_syntax() {
        assert_eq!(w("x3 x3^-1").to_string(), "x3 x3^-1");
        assert_eq!(w("  x0^1  x12 ").0, vec![Letter::gen(0), Letter::gen(12)]);
        assert!(matches!("x0 y1".parse::<Word>(), Err(Error::Parse { pos: 3, .. })));
        assert!("x0^2".parse::<Word>().is_err());
        assert!("x".parse::<Word>().is_err());
    }

    #[test]
    fn large_index_generator() {
        let g = generator_tree(100_000);
        assert_eq!(g.domain().leaf_count(), 100_003);
        let h = g.multiply(&g.inverse());
        assert!(h.is_identity());
    }
}
