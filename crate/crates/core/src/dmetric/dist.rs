use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

/// A distance in `[0, ∞]` with exact rational finite values.
///
/// The derived order puts every finite value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtDist {
    Finite(Rational64),
    Infinite,
}

impl ExtDist {
    pub const ZERO: ExtDist = ExtDist::Finite(Rational64::new_raw(0, 1));

    pub fn int(n: i64) -> Self {
        ExtDist::Finite(Rational64::from_integer(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ExtDist::Finite(Rational64::new(p, q))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtDist::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtDist::Finite(r) if r.is_zero())
    }

    /// Strict comparison against a finite radius.
    pub fn lt(&self, eps: Rational64) -> bool {
        match self {
            ExtDist::Finite(r) => *r < eps,
            ExtDist::Infinite => false,
        }
    }
}

impl Add for ExtDist {
    type Output = ExtDist;

    fn add(self, rhs: ExtDist) -> ExtDist {
        match (self, rhs) {
            (ExtDist::Finite(a), ExtDist::Finite(b)) => ExtDist::Finite(a + b),
            _ => ExtDist::Infinite,
        }
    }
}

impl From<Rational64> for ExtDist {
    fn from(r: Rational64) -> Self {
        ExtDist::Finite(r)
    }
}

impl fmt::Display for ExtDist {
    /// Canonical text: `inf`, an integer, or a reduced `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDist::Infinite => f.write_str("inf"),
            ExtDist::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtDist::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a nonnegative rational or `inf`")]
pub struct ParseDistError(pub String);

/// Parses a nonnegative rational given as `inf`, `p/q`, or a decimal.
pub fn parse_rational(s: &str) -> Result<Rational64, ParseDistError> {
    let bad = || ParseDistError(s.to_string());
    let r = if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Rational64::new(p, q)
    } else if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 18 {
            return Err(bad());
        }
        let whole: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        if int.starts_with('-') {
            return Err(bad());
        }
        let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let num: i64 = frac.parse().map_err(|_| bad())?;
        let total = whole.checked_mul(den).and_then(|w| w.checked_add(num)).ok_or_else(bad)?;
        Rational64::new(total, den)
    } else {
        Rational64::from_integer(s.parse().map_err(|_| bad())?)
    };
    if r.is_negative() {
        return Err(bad());
    }
    Ok(r)
}

impl FromStr for ExtDist {
    type Err = ParseDistError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(ExtDist::Infinite);
        }
        parse_rational(s).map(ExtDist::Finite)
    }
}

impl PartialEq<Rational64> for ExtDist {
    fn eq(&self, other: &Rational64) -> bool {
        matches!(self, ExtDist::Finite(r) if r == other)
    }
}

impl PartialOrd<Rational64> for ExtDist {
    fn partial_cmp(&self, other: &Rational64) -> Option<Ordering> {
        Some(match self {
            ExtDist::Finite(r) => r.cmp(other),
            ExtDist::Infinite => Ordering::Greater,
        })
    }
}
