//! Direct powers `F^r`, their embedding into F by a dyadic subdivision, and
//! the classification of characters of `F^r`.
//!
//! In the basis `(chi_0^(1), chi_1^(1), ..., chi_0^(r), chi_1^(r))` the
//! complement of `Sigma^m(F^r)` is the `(m-1)`-skeleton of the simplex
//! spanned by the `2r` basis classes. A class with a negative coordinate is
//! off the simplex; otherwise it lies in the open face spanned by its `k`
//! positive coordinates and belongs to `Sigma^(k-1)` but not `Sigma^k`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::characters::{parse_rationals, Character, FinitenessReport, SigmaLevel};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::pl::{End, Interval, PlMap};
use crate::Element;

/// Dyadic cut points `0 < t_1 < ... < t_{r-1} < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subdivision {
    cuts: Vec<Dyadic>,
}

impl Subdivision {
    pub fn new(cuts: Vec<Dyadic>) -> Result<Self> {
        let mut prev = Dyadic::zero();
        for t in &cuts {
            if *t <= prev {
                return Err(Error::InvalidSubdivision(format!(
                    "cut points must be strictly increasing in (0,1); got {t} after {prev}"
                )));
            }
            prev = t.clone();
        }
        if prev >= Dyadic::one() && !cuts.is_empty() {
            return Err(Error::InvalidSubdivision(format!("cut point {prev} is not below 1")));
        }
        Ok(Subdivision { cuts })
    }

    /// Cuts near `i/r` on the grid of mesh `2^-ceil(log2 r)`, rounding half up.
    pub fn uniform(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidSubdivision("r must be at least 1".into()));
        }
        let k = (r as u64).next_power_of_two().trailing_zeros() as u64;
        let grid = 1u64 << k;
        let cuts = (1..r as u64)
            .map(|i| Dyadic::new((2 * i * grid + r as u64) / (2 * r as u64), k))
            .collect();
        Subdivision::new(cuts)
    }

    pub fn r(&self) -> usize {
        self.cuts.len() + 1
    }

    pub fn cuts(&self) -> &[Dyadic] {
        &self.cuts
    }

    /// The `r` closed pieces `[t_{i-1}, t_i]`.
    pub fn pieces(&self) -> Vec<Interval> {
        let mut bounds = vec![Dyadic::zero()];
        bounds.extend(self.cuts.iter().cloned());
        bounds.push(Dyadic::one());
        bounds
            .windows(2)
            .map(|w| Interval::new(w[0].clone(), w[1].clone()).expect("ordered cuts"))
            .collect()
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Subdivision::new(Vec::new());
        }
        let mut cuts = Vec::new();
        let mut pos = 0;
        for item in s.split(',') {
            cuts.push(crate::dyadic::parse_dyadic_at(item, pos)?);
            pos += item.len() + 1;
        }
        Subdivision::new(cuts)
    }
}

/// `sum_i a_i chi_0^(i) + b_i chi_1^(i)` as `(a_1, b_1, ..., a_r, b_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductCharacter {
    coords: Vec<BigRational>,
}

impl ProductCharacter {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2 * coords.len().div_ceil(2).max(1),
                got: coords.len(),
            });
        }
        Ok(ProductCharacter { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        ProductCharacter::new(coords.iter().map(|&c| crate::characters::int(c)).collect())
    }

    /// All coordinates 1: the character whose kernel is `G_r`.
    pub fn barycenter(r: usize) -> Self {
        ProductCharacter {
            coords: vec![crate::characters::int(1); 2 * r],
        }
    }

    pub fn parse(s: &str, r: usize) -> Result<Self> {
        let coords = parse_rationals(s)?;
        if coords.len() != 2 * r {
            return Err(Error::DimensionMismatch {
                expected: 2 * r,
                got: coords.len(),
            });
        }
        ProductCharacter::new(coords)
    }

    pub fn r(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        ProductCharacter {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// The `i`-th factor as a character of F.
    pub fn factor(&self, i: usize) -> Character {
        Character::new(self.coords[2 * i].clone(), self.coords[2 * i + 1].clone())
    }

    pub fn eval<E: Element>(&self, gs: &[E]) -> Result<BigRational> {
        if gs.len() != self.r() {
            return Err(Error::DimensionMismatch {
                expected: self.r(),
                got: gs.len(),
            });
        }
        Ok(gs
            .iter()
            .enumerate()
            .map(|(i, g)| self.factor(i).eval(g))
            .fold(BigRational::zero(), |acc, v| acc + v))
    }
}

impl fmt::Display for ProductCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Position of a class of `S(F^r)` relative to the simplex skeleta.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SkeletonVerdict {
    /// In every `Sigma^m(F^r)`.
    SigmaInfinity,
    /// In `Sigma^(k-1)` but not `Sigma^k`, with `1 <= k <= 2r`.
    Face(u32),
}

impl SkeletonVerdict {
    pub fn level(self) -> SigmaLevel {
        match self {
            SkeletonVerdict::SigmaInfinity => SigmaLevel::Infinite,
            SkeletonVerdict::Face(k) => SigmaLevel::Finite(k - 1),
        }
    }
}

impl fmt::Display for SkeletonVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkeletonVerdict::SigmaInfinity => f.write_str("SIGMA_INFINITY"),
            SkeletonVerdict::Face(k) => write!(f, "IN_SIGMA{}_NOT_SIGMA{}", k - 1, k),
        }
    }
}

/// Product of the affine copies of `gs[i]` on the pieces of `sub`.
pub fn embed_product(gs: &[PlMap], sub: &Subdivision) -> Result<PlMap> {
    if gs.len() != sub.r() {
        return Err(Error::DimensionMismatch {
            expected: sub.r(),
            got: gs.len(),
        });
    }
    let mut acc = PlMap::identity();
    for (g, piece) in gs.iter().zip(sub.pieces()) {
        acc = acc.compose(&g.rescale_into(&piece)?);
    }
    Ok(acc)
}

pub fn classify_sigma_fr(chi: &ProductCharacter) -> Result<SkeletonVerdict> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    if chi.coords.iter().any(Signed::is_negative) {
        return Ok(SkeletonVerdict::SigmaInfinity);
    }
    let k = chi.coords.iter().filter(|c| c.is_positive()).count();
    Ok(SkeletonVerdict::Face(k as u32))
}

pub fn kernel_finiteness_fr(chi: &ProductCharacter) -> Result<FinitenessReport> {
    let plus = classify_sigma_fr(chi)?.level();
    let minus = classify_sigma_fr(&chi.neg())?.level();
    Ok(FinitenessReport::from_levels(plus, minus))
}

/// True when the face index is in the range `k >= 2r - 1`, where the
/// verdict rests on the skeleton description alone.
pub fn per_skeleton_statement(verdict: SkeletonVerdict, r: usize) -> bool {
    matches!(verdict, SkeletonVerdict::Face(k) if k as usize + 1 >= 2 * r)
}

/// Result of the `G_r` test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrWitness {
    pub member: bool,
    /// `log2` of the product of the derivatives in `D_r`.
    pub log2_product: i64,
    /// The one-sided log-slopes, in the order right@0, then left and right
    /// at each cut, then left@1.
    pub log_slopes: Vec<i64>,
}

/// Tests whether `f` lies in `G_r`: `f` must fix each cut, and the product
/// of its derivative at 0 (right), at 1 (left), and both one-sided
/// derivatives at every cut must equal 1.
pub fn gr_membership(f: &PlMap, sub: &Subdivision) -> Result<GrWitness> {
    for t in sub.cuts() {
        if f.eval(t)? != *t {
            return Err(Error::MovesCutPoint(t.to_string()));
        }
    }
    let pts = f.breakpoints();
    let slopes = f.log_slopes();
    let mut log_slopes = vec![f.endpoint_log_slope(End::Zero)];
    for t in sub.cuts() {
        // index of the segment starting at or containing t
        let j = pts.partition_point(|p| p.0 <= *t) - 1;
        let right = slopes[j];
        let left = if pts[j].0 == *t { slopes[j - 1] } else { slopes[j] };
        log_slopes.push(left);
        log_slopes.push(right);
    }
    log_slopes.push(f.endpoint_log_slope(End::One));
    let log2_product = log_slopes.iter().sum();
    Ok(GrWitness {
        member: log2_product == 0,
        log2_product,
        log_slopes,
    })
}
