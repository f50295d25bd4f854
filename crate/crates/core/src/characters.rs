//! Characters `a*chi_0 + b*chi_1` of F and the classification of their
//! sphere classes in the Sigma invariants.
//!
//! `chi_0(g)` and `chi_1(g)` are the base-2 logarithms of the right
//! derivative at 0 and the left derivative at 1. The classifier is a table
//! on the sign pattern of `(a, b)`: the open arc with `a, b > 0` lies in
//! Sigma^1 but not Sigma^2, the two classes `[chi_0]` and `[chi_1]` are the
//! only points outside Sigma^1, and everything else lies in every Sigma^m.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pl::End;
use crate::Element;

/// The character `a*chi_0 + b*chi_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub a: BigRational,
    pub b: BigRational,
}

impl Character {
    pub fn new(a: impl Into<BigRational>, b: impl Into<BigRational>) -> Self {
        Character {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Character::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn chi0() -> Self {
        Character::from_ints(1, 0)
    }

    pub fn chi1() -> Self {
        Character::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn neg(&self) -> Character {
        Character::new(-&self.a, -&self.b)
    }

    pub fn scale(&self, lambda: &BigRational) -> Character {
        Character::new(&self.a * lambda, &self.b * lambda)
    }

    /// Value on the element with endpoint log-slopes `(l0, l1)`.
    pub fn value_on_slopes(&self, l0: i64, l1: i64) -> BigRational {
        &self.a * BigRational::from_integer(l0.into()) + &self.b * BigRational::from_integer(l1.into())
    }

    pub fn eval<E: Element + ?Sized>(&self, g: &E) -> BigRational {
        self.value_on_slopes(g.log_slope(End::Zero), g.log_slope(End::One))
    }

    /// The image `a*Z + b*Z` is cyclic for rational coefficients, so every
    /// nonzero character of this type is discrete.
    pub fn is_discrete(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        Ok(true)
    }

    /// Positive generator of the image `a*Z + b*Z`.
    pub fn image_generator(&self) -> Result<BigRational> {
        if self.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        Ok(rational_gcd(&self.a, &self.b))
    }

    /// Action of the flip automorphism: swaps `chi_0` and `chi_1`.
    pub fn nu_action(&self) -> Character {
        Character::new(self.b.clone(), self.a.clone())
    }

    pub fn classify(&self) -> Result<SigmaVerdict> {
        classify_sigma_f(self)
    }
}

pub(crate) fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    use num_integer::Integer;
    let den = a.denom().lcm(b.denom());
    let na = a.numer() * (&den / a.denom());
    let nb = b.numer() * (&den / b.denom());
    BigRational::new(na.gcd(&nb), den)
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl FromStr for Character {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let coords = parse_rationals(s)?;
        match coords.as_slice() {
            [a, b] => Ok(Character::new(a.clone(), b.clone())),
            _ => Err(Error::DimensionMismatch {
                expected: 2,
                got: coords.len(),
            }),
        }
    }
}

/// Parses a comma-separated list of exact rationals.
pub fn parse_rationals(s: &str) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for item in s.split(',') {
        let t = item.trim();
        let lead = item.len() - item.trim_start().len();
        let v: BigRational = t
            .parse()
            .map_err(|_| Error::parse(pos + lead, format!("invalid rational '{t}'")))?;
        out.push(v);
        pos += item.len() + 1;
    }
    Ok(out)
}

/// Where a sphere class sits among the Sigma invariants of F.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SigmaVerdict {
    #[serde(rename = "NOT_IN_SIGMA1")]
    NotInSigma1,
    #[serde(rename = "SIGMA1_NOT_SIGMA2")]
    Sigma1NotSigma2,
    #[serde(rename = "SIGMA_INFINITY")]
    SigmaInfinity,
}

impl SigmaVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            SigmaVerdict::NotInSigma1 => "NOT_IN_SIGMA1",
            SigmaVerdict::Sigma1NotSigma2 => "SIGMA1_NOT_SIGMA2",
            SigmaVerdict::SigmaInfinity => "SIGMA_INFINITY",
        }
    }

    /// Largest `m` with the class in `Sigma^m`.
    pub fn level(self) -> SigmaLevel {
        match self {
            SigmaVerdict::NotInSigma1 => SigmaLevel::Finite(0),
            SigmaVerdict::Sigma1NotSigma2 => SigmaLevel::Finite(1),
            SigmaVerdict::SigmaInfinity => SigmaLevel::Infinite,
        }
    }
}

impl fmt::Display for SigmaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `sup { m : [chi] in Sigma^m }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaLevel {
    Finite(u32),
    Infinite,
}

/// Finiteness type of the kernel of a discrete character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FinitenessReport {
    /// `None` for type `F_infinity`; `Some(m)` for type `F_m` but not
    /// `FP_{m+1}`. `Some(0)` means not finitely generated.
    pub max_type: Option<u32>,
    pub discrete: bool,
}

impl FinitenessReport {
    pub fn from_levels(plus: SigmaLevel, minus: SigmaLevel) -> Self {
        let max_type = match plus.min(minus) {
            SigmaLevel::Finite(m) => Some(m),
            SigmaLevel::Infinite => None,
        };
        FinitenessReport {
            max_type,
            discrete: true,
        }
    }

    pub fn describe(&self) -> String {
        match self.max_type {
            None => "F_infinity".to_string(),
            Some(0) => "not finitely generated".to_string(),
            Some(m) => format!("F_{m}, not FP_{}", m + 1),
        }
    }
}

impl fmt::Display for FinitenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

pub fn classify_sigma_f(chi: &Character) -> Result<SigmaVerdict> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let (a, b) = (&chi.a, &chi.b);
    Ok(if a.is_negative() || b.is_negative() {
        SigmaVerdict::SigmaInfinity
    } else if a.is_zero() || b.is_zero() {
        SigmaVerdict::NotInSigma1
    } else {
        SigmaVerdict::Sigma1NotSigma2
    })
}

/// Finiteness of `ker chi`: the minimum of the levels of `[chi]` and
/// `[-chi]`.
pub fn kernel_finiteness_f(chi: &Character) -> Result<FinitenessReport> {
    if !chi.is_discrete()? {
        return Err(Error::NotDiscrete);
    }
    let plus = classify_sigma_f(chi)?.level();
    let minus = classify_sigma_f(&chi.neg())?.level();
    Ok(FinitenessReport::from_levels(plus, minus))
}

pub(crate) fn rational_json(q: &BigRational) -> serde_json::Value {
    use num_traits::ToPrimitive;
    if q.is_integer() {
        if let Some(n) = q.numer().to_i64() {
            return serde_json::Value::from(n);
        }
    }
    serde_json::Value::from(q.to_string())
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
