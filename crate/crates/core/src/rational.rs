//! Exact rationals and their extension by ±∞.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q` with `q > 0`, always showing the denominator.
pub fn fmt_q(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n).ok()?;
        let d = BigInt::from_str(d).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        BigInt::from_str(s).ok().map(Q::from_integer)
    }
}

/// Returns the value as an `i64` if it is an integer that fits.
pub fn as_integer(v: &Q) -> Option<i64> {
    if v.is_integer() {
        v.to_integer().to_i64()
    } else {
        None
    }
}

pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// A rational extended by −∞ and +∞. The derived order puts `NegInf`
/// below every finite value and `PosInf` above.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(Q),
    PosInf,
}

impl Ext {
    pub fn zero() -> Self {
        Ext::Fin(Q::zero())
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            Ext::Fin(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    pub fn neg(&self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
            Ext::Fin(v) => Ext::Fin(-v),
        }
    }

    /// Adds a finite rational.
    pub fn shift(&self, c: &Q) -> Ext {
        match self {
            Ext::Fin(v) => Ext::Fin(v + c),
            other => other.clone(),
        }
    }

    /// Scales by an integer; `0·(±∞)` is taken to be 0.
    pub fn scale(&self, k: i64) -> Ext {
        match self {
            Ext::Fin(v) => Ext::Fin(v * qi(k)),
            _ if k == 0 => Ext::zero(),
            Ext::PosInf if k > 0 => Ext::PosInf,
            Ext::NegInf if k < 0 => Ext::PosInf,
            _ => Ext::NegInf,
        }
    }

    /// Sign of an infinite value or of a finite rational: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            Ext::NegInf => -1,
            Ext::PosInf => 1,
            Ext::Fin(v) if v.is_positive() => 1,
            Ext::Fin(v) if v.is_negative() => -1,
            Ext::Fin(_) => 0,
        }
    }
}

impl From<Q> for Ext {
    fn from(v: Q) -> Self {
        Ext::Fin(v)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::PosInf => write!(f, "inf"),
            Ext::Fin(v) => write!(f, "{}", fmt_q(v)),
        }
    }
}

pub fn parse_ext(s: &str) -> Option<Ext> {
    match s.trim() {
        "inf" | "+inf" => Some(Ext::PosInf),
        "-inf" => Some(Ext::NegInf),
        other => parse_q(other).map(Ext::Fin),
    }
}
