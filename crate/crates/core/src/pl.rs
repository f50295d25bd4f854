//! Dyadic piecewise-linear homeomorphisms of `[0,1]`.
//!
//! A [`PlMap`] is stored as its normalized breakpoint list. Normalization
//! (no two adjacent segments share a slope) makes structural equality the
//! same as equality of maps. Products follow `(f * g)(t) = f(g(t))`.

use std::fmt;
use std::str::FromStr;

use crate::dyadic::{parse_dyadic_at, Dyadic};
use crate::error::{Error, Result};

/// Which end of `[0,1]` a one-sided derivative is taken at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    /// Right derivative at 0.
    Zero,
    /// Left derivative at 1.
    One,
}

/// A closed dyadic subinterval `[lo, hi]` of `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo.is_negative() || hi > Dyadic::one() || lo > hi {
            return Err(Error::InvalidInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval {
            lo: Dyadic::zero(),
            hi: Dyadic::one(),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn len(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Subgroups of F with a membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subgroup {
    /// The whole group.
    F,
    /// `F(k) = <x_k, x_{k+1}, ...>` for `k >= 1`.
    Shifted(u32),
    /// The commutator subgroup.
    Commutator,
}

/// An increasing dyadic PL homeomorphism of `[0,1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlMap {
    points: Vec<(Dyadic, Dyadic)>,
}

impl PlMap {
    pub fn identity() -> Self {
        PlMap {
            points: vec![(Dyadic::zero(), Dyadic::zero()), (Dyadic::one(), Dyadic::one())],
        }
    }

    /// Validates and normalizes a breakpoint list.
    pub fn new(points: Vec<(Dyadic, Dyadic)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidMap("need at least the points (0,0) and (1,1)".into()));
        }
        let (first, last) = (&points[0], &points[points.len() - 1]);
        if first.0 != Dyadic::zero() || first.1 != Dyadic::zero() {
            return Err(Error::InvalidMap("first breakpoint must be 0:0".into()));
        }
        if last.0 != Dyadic::one() || last.1 != Dyadic::one() {
            return Err(Error::InvalidMap("last breakpoint must be 1:1".into()));
        }
        for (j, w) in points.windows(2).enumerate() {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::InvalidMap(format!(
                    "breakpoints {} and {} are not strictly increasing",
                    j,
                    j + 1
                )));
            }
            let du = &w[1].0 - &w[0].0;
            let dv = &w[1].1 - &w[0].1;
            if dv.log2_ratio(&du).is_none() {
                return Err(Error::InvalidMap(format!(
                    "slope on [{}, {}] is not a power of 2",
                    w[0].0, w[1].0
                )));
            }
        }
        Ok(Self::from_points_unchecked(points))
    }

    /// Normalizes a list already known to be a valid map.
    pub(crate) fn from_points_unchecked(points: Vec<(Dyadic, Dyadic)>) -> Self {
        let mut out: Vec<(Dyadic, Dyadic)> = Vec::with_capacity(points.len());
        let mut last_slope: Option<i64> = None;
        for p in points {
            if let Some(prev) = out.last() {
                let s = segment_log_slope(prev, &p);
                if last_slope == Some(s) {
                    out.pop();
                }
            }
            last_slope = out.last().map(|prev| segment_log_slope(prev, &p));
            out.push(p);
        }
        PlMap { points: out }
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2
    }

    /// `log2` of each segment's slope, in order.
    pub fn log_slopes(&self) -> Vec<i64> {
        self.points
            .windows(2)
            .map(|w| segment_log_slope(&w[0], &w[1]))
            .collect()
    }

    /// Exact image of `t`.
    pub fn eval(&self, t: &Dyadic) -> Result<Dyadic> {
        if !t.in_unit_interval() {
            return Err(Error::Domain(t.to_string()));
        }
        Ok(eval_on(&self.points, t, false))
    }

    /// Exact preimage of `t`.
    pub fn eval_inverse(&self, t: &Dyadic) -> Result<Dyadic> {
        if !t.in_unit_interval() {
            return Err(Error::Domain(t.to_string()));
        }
        Ok(eval_on(&self.points, t, true))
    }

    /// `self * g`, i.e. `t -> self(g(t))`.
    pub fn compose(&self, g: &PlMap) -> PlMap {
        let mut cuts: Vec<Dyadic> = g.points.iter().map(|(u, _)| u.clone()).collect();
        cuts.extend(self.points.iter().map(|(u, _)| eval_on(&g.points, u, true)));
        cuts.sort();
        cuts.dedup();
        let points = cuts
            .into_iter()
            .map(|t| {
                let mid = eval_on(&g.points, &t, false);
                let v = eval_on(&self.points, &mid, false);
                (t, v)
            })
            .collect();
        PlMap::from_points_unchecked(points)
    }

    pub fn inverse(&self) -> PlMap {
        PlMap {
            points: self.points.iter().map(|(u, v)| (v.clone(), u.clone())).collect(),
        }
    }

    /// `log2` of the one-sided derivative at an endpoint.
    pub fn endpoint_log_slope(&self, end: End) -> i64 {
        let n = self.points.len();
        match end {
            End::Zero => segment_log_slope(&self.points[0], &self.points[1]),
            End::One => segment_log_slope(&self.points[n - 2], &self.points[n - 1]),
        }
    }

    /// Closure of the set of moved points, or `None` for the identity.
    pub fn support(&self) -> Option<Interval> {
        let mut lo: Option<&Dyadic> = None;
        let mut hi: Option<&Dyadic> = None;
        for w in self.points.windows(2) {
            let fixed = w[0].0 == w[0].1 && w[1].0 == w[1].1;
            if !fixed {
                lo.get_or_insert(&w[0].0);
                hi = Some(&w[1].0);
            }
        }
        Some(Interval {
            lo: lo?.clone(),
            hi: hi?.clone(),
        })
    }

    /// Affine copy of `self` on `target`, identity elsewhere.
    pub fn rescale_into(&self, target: &Interval) -> Result<PlMap> {
        if target.lo == target.hi {
            return Err(Error::DegenerateInterval(target.lo.to_string()));
        }
        let len = target.len();
        let mut points = Vec::with_capacity(self.points.len() + 2);
        if !target.lo.is_zero() {
            points.push((Dyadic::zero(), Dyadic::zero()));
        }
        for (u, v) in &self.points {
            points.push((&target.lo + &(&len * u), &target.lo + &(&len * v)));
        }
        if target.hi != Dyadic::one() {
            points.push((Dyadic::one(), Dyadic::one()));
        }
        Ok(PlMap::from_points_unchecked(points))
    }

    /// Conjugation by `t -> 1 - t`.
    pub fn nu(&self) -> PlMap {
        let one = Dyadic::one();
        PlMap {
            points: self
                .points
                .iter()
                .rev()
                .map(|(u, v)| (&one - u, &one - v))
                .collect(),
        }
    }

    /// True when `self` is the identity on `[0, x]`.
    pub fn fixes_initial_segment(&self, x: &Dyadic) -> bool {
        match self.support() {
            None => true,
            Some(s) => s.lo >= *x,
        }
    }

    pub fn is_member(&self, which: Subgroup) -> bool {
        match which {
            Subgroup::F => true,
            Subgroup::Shifted(0) => true,
            Subgroup::Shifted(k) => {
                let bound = &Dyadic::one() - &Dyadic::pow2(-(k as i64));
                self.fixes_initial_segment(&bound)
            }
            Subgroup::Commutator => {
                self.endpoint_log_slope(End::Zero) == 0 && self.endpoint_log_slope(End::One) == 0
            }
        }
    }

    /// Parses `"u:v; u:v; ..."`; `offset` is used for diagnostics.
    pub(crate) fn parse_at(s: &str, offset: usize) -> Result<PlMap> {
        let mut points = Vec::new();
        let mut pos = offset;
        for item in s.split(';') {
            let here = pos;
            pos += item.len() + 1;
            if item.trim().is_empty() {
                return Err(Error::parse(here, "empty breakpoint"));
            }
            let (u, v) = item
                .split_once(':')
                .ok_or_else(|| Error::parse(here, format!("expected 'u:v', found '{}'", item.trim())))?;
            let u = parse_dyadic_at(u, here)?;
            let v = parse_dyadic_at(v, here + item.find(':').unwrap_or(0) + 1)?;
            points.push((u, v));
        }
        PlMap::new(points)
    }
}

fn segment_log_slope(a: &(Dyadic, Dyadic), b: &(Dyadic, Dyadic)) -> i64 {
    let du = &b.0 - &a.0;
    let dv = &b.1 - &a.1;
    dv.log2_ratio(&du).expect("segment slope is a power of 2")
}

/// Evaluates the map (or its inverse) given by `points` at `t`.
fn eval_on(points: &[(Dyadic, Dyadic)], t: &Dyadic, inverse: bool) -> Dyadic {
    let key = |p: &(Dyadic, Dyadic)| if inverse { p.1.clone() } else { p.0.clone() };
    let idx = points.partition_point(|p| key(p) <= *t);
    // idx >= 1 because points[0] has key 0 <= t
    let j = (idx - 1).min(points.len() - 2);
    let (a, b) = (&points[j], &points[j + 1]);
    let (u0, v0, u1, v1) = if inverse {
        (&a.1, &a.0, &b.1, &b.0)
    } else {
        (&a.0, &a.1, &b.0, &b.1)
    };
    let s = (v1 - v0).log2_ratio(&(u1 - u0)).expect("power-of-2 slope");
    v0 + &(t - u0).mul_pow2(s)
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, (u, v)) in self.points.iter().enumerate() {
            if j > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{u}:{v}")?;
        }
        Ok(())
    }
}

impl FromStr for PlMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PlMap::parse_at(s, 0)
    }
}
