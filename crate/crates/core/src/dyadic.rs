//! Exact dyadic rationals `n / 2^k`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A dyadic rational `numerator / 2^exponent`, always kept normalized:
/// either `exponent == 0` or `numerator` is odd.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u64,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u64) -> Self {
        Self::normalized(numerator.into(), exponent)
    }

    fn normalized(mut numerator: BigInt, mut exponent: u64) -> Self {
        if numerator.is_zero() {
            return Dyadic {
                numerator,
                exponent: 0,
            };
        }
        if exponent > 0 {
            let twos = numerator.trailing_zeros().unwrap_or(0).min(exponent);
            if twos > 0 {
                numerator >>= twos;
                exponent -= twos;
            }
        }
        Dyadic {
            numerator,
            exponent,
        }
    }

    pub fn zero() -> Self {
        Dyadic::new(0, 0)
    }

    pub fn one() -> Self {
        Dyadic::new(1, 0)
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i64) -> Self {
        if k >= 0 {
            Dyadic::new(BigInt::one() << (k as u64), 0)
        } else {
            Dyadic::new(1, k.unsigned_abs())
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.numerator.is_positive()
    }

    /// Multiplication by `2^k`, exact for any integer `k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            let k = k as u64;
            if k <= self.exponent {
                Dyadic {
                    numerator: self.numerator.clone(),
                    exponent: self.exponent - k,
                }
            } else {
                Dyadic::normalized(&self.numerator << (k - self.exponent), 0)
            }
        } else {
            Dyadic::normalized(self.numerator.clone(), self.exponent + k.unsigned_abs())
        }
    }

    /// Writes a nonzero value as `odd * 2^k`, returning `(odd, k)`.
    fn odd_decomposition(&self) -> Option<(BigInt, i64)> {
        if self.is_zero() {
            return None;
        }
        let twos = self.numerator.trailing_zeros().unwrap_or(0);
        let odd = &self.numerator >> twos;
        Some((odd, twos as i64 - self.exponent as i64))
    }

    /// If `self / other` is a power of two `2^k`, returns `k`.
    pub fn log2_ratio(&self, other: &Dyadic) -> Option<i64> {
        let (a, ka) = self.odd_decomposition()?;
        let (b, kb) = other.odd_decomposition()?;
        (a == b).then_some(ka - kb)
    }

    /// Floor of `self * 2^k`, as an integer.
    pub fn floor_scaled(&self, k: u64) -> BigInt {
        if k >= self.exponent {
            &self.numerator << (k - self.exponent)
        } else {
            self.numerator.div_floor(&(BigInt::one() << (self.exponent - k)))
        }
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> num_rational::BigRational {
        num_rational::BigRational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator.to_f64().unwrap_or(f64::NAN) / 2f64.powi(self.exponent.min(1074) as i32)
    }

    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && *self <= Dyadic::one()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exponent.max(rhs.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &rhs.numerator << (e - rhs.exponent);
        Dyadic::normalized(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -&self.numerator,
            exponent: self.exponent,
        }
    }
}

impl std::ops::Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::normalized(&self.numerator * &rhs.numerator, self.exponent + rhs.exponent)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::new(n, 0)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else if self.exponent < 64 {
            write!(f, "{}/{}", self.numerator, 1u128 << self.exponent)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `n`, `n/d` with `d` a power of two, or `n/2^k`.
    fn from_str(s: &str) -> Result<Self> {
        parse_dyadic_at(s, 0)
    }
}

/// Parses a dyadic literal; `offset` is the byte position of `s` in the
/// enclosing input, used for diagnostics.
pub(crate) fn parse_dyadic_at(s: &str, offset: usize) -> Result<Dyadic> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    let pos = offset + lead;
    if t.is_empty() {
        return Err(Error::parse(pos, "expected a dyadic number"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let numerator: BigInt = num
        .parse()
        .map_err(|_| Error::parse(pos, format!("invalid integer '{num}'")))?;
    let exponent = match den {
        None => 0,
        Some(d) => {
            if let Some(k) = d.strip_prefix("2^") {
                k.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::parse(pos, format!("invalid exponent in '{t}'")))?
            } else {
                let d: BigInt = d
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("invalid denominator in '{t}'")))?;
                if !d.is_positive() {
                    return Err(Error::parse(pos, format!("non-positive denominator in '{t}'")));
                }
                let twos = d.trailing_zeros().unwrap_or(0);
                if (&d >> twos) != BigInt::one() {
                    // n/d may still be dyadic if the odd part of d divides n
                    let odd = &d >> twos;
                    if !(&numerator % &odd).is_zero() {
                        return Err(Error::parse(pos, format!("non-dyadic number '{t}'")));
                    }
                    return Ok(Dyadic::new(numerator / odd, twos));
                }
                twos
            }
        }
    };
    Ok(Dyadic::new(numerator, exponent))
}
