//! Max-plus scalars, points of tropical projective space, tropical line
//! segments and the projective metric.
//!
//! Throughout, `⊕` is `max` and `⊙` is `+`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

/// An element of the tropical semifield: a rational or −∞.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropScalar(pub Option<Q>);

impl TropScalar {
    pub fn neg_inf() -> Self {
        TropScalar(None)
    }

    pub fn finite(v: Q) -> Self {
        TropScalar(Some(v))
    }

    pub fn zero() -> Self {
        TropScalar(Some(Q::zero()))
    }

    pub fn is_neg_inf(&self) -> bool {
        self.0.is_none()
    }

    pub fn value(&self) -> Option<&Q> {
        self.0.as_ref()
    }

    /// Tropical sum.
    pub fn oplus(&self, other: &Self) -> Self {
        std::cmp::max(self, other).clone()
    }

    /// Tropical product; −∞ is absorbing.
    pub fn otimes(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Some(a), Some(b)) => TropScalar(Some(a + b)),
            _ => TropScalar(None),
        }
    }
}

impl From<Q> for TropScalar {
    fn from(v: Q) -> Self {
        TropScalar(Some(v))
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Some(v) => write!(f, "{}", fmt_q(v)),
            None => write!(f, "-inf"),
        }
    }
}

/// A point of tropical projective space, stored in canonical form: the
/// first finite coordinate is 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: Vec<TropScalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<TropScalar>) -> Result<Self> {
        let shift = coords
            .iter()
            .find_map(|c| c.value().cloned())
            .ok_or(Error::AllNegInf)?;
        let coords = coords
            .into_iter()
            .map(|c| TropScalar(c.0.map(|v| v - &shift)))
            .collect();
        Ok(ProjPoint { coords })
    }

    pub fn from_finite(coords: &[Q]) -> Result<Self> {
        Self::new(coords.iter().cloned().map(TropScalar::finite).collect())
    }

    /// Ambient dimension `n` of 𝐓P^n.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[TropScalar] {
        &self.coords
    }

    /// Canonical finite coordinates, or `None` if some coordinate is −∞.
    pub fn finite_coords(&self) -> Option<Vec<Q>> {
        self.coords.iter().map(|c| c.value().cloned()).collect()
    }

    fn require_finite(&self) -> Result<Vec<Q>> {
        self.finite_coords().ok_or(Error::InfiniteCoordinate)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Coordinatewise `max_i (coeff_i + point_i)`.
pub fn trop_combine_points(
    coeffs: &[TropScalar],
    points: &[Vec<TropScalar>],
) -> Result<Vec<TropScalar>> {
    if coeffs.len() != points.len() {
        return Err(Error::LengthMismatch(coeffs.len(), points.len()));
    }
    if coeffs.iter().all(TropScalar::is_neg_inf) {
        return Err(Error::AllNegInf);
    }
    let width = points.first().map_or(0, Vec::len);
    if let Some(p) = points.iter().find(|p| p.len() != width) {
        return Err(Error::LengthMismatch(width, p.len()));
    }
    let mut out = vec![TropScalar::neg_inf(); width];
    for (a, p) in coeffs.iter().zip(points) {
        for (slot, x) in out.iter_mut().zip(p) {
            *slot = slot.oplus(&a.otimes(x));
        }
    }
    Ok(out)
}

pub fn proj_equal(p: &ProjPoint, q: &ProjPoint) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::LengthMismatch(p.coords.len(), q.coords.len()));
    }
    Ok(p == q)
}

/// `max_{i<j} |(x_i - y_i) - (x_j - y_j)|`, i.e. the spread of `x - y`.
pub fn proj_distance(x: &ProjPoint, y: &ProjPoint) -> Result<Q> {
    if x.dim() != y.dim() {
        return Err(Error::LengthMismatch(x.coords.len(), y.coords.len()));
    }
    let xs = x.require_finite()?;
    let ys = y.require_finite()?;
    Ok(spread(xs.iter().zip(&ys).map(|(a, b)| a - b)))
}

pub(crate) fn spread(values: impl IntoIterator<Item = Q>) -> Q {
    let mut it = values.into_iter();
    let Some(first) = it.next() else {
        return Q::zero();
    };
    let (lo, hi) = it.fold((first.clone(), first), |(lo, hi), v| {
        (std::cmp::min(lo, v.clone()), std::cmp::max(hi, v))
    });
    hi - lo
}

/// Breakpoints of the tropical line segment from `x` to `y`, in order.
///
/// The segment is traced by `λ ↦ (λ ⊙ x) ⊕ y`; its breakpoints sit at the
/// distinct values of `y_i - x_i`.
pub fn tropical_segment(x: &ProjPoint, y: &ProjPoint) -> Result<Vec<ProjPoint>> {
    if x.dim() != y.dim() {
        return Err(Error::LengthMismatch(x.coords.len(), y.coords.len()));
    }
    let xs = x.require_finite()?;
    let ys = y.require_finite()?;
    let mut lambdas: Vec<Q> = xs.iter().zip(&ys).map(|(a, b)| b - a).collect();
    lambdas.sort();
    lambdas.dedup();
    let mut out: Vec<ProjPoint> = Vec::with_capacity(lambdas.len());
    for lambda in lambdas.iter().rev() {
        let coords: Vec<Q> = xs
            .iter()
            .zip(&ys)
            .map(|(a, b)| std::cmp::max(a + lambda, b.clone()))
            .collect();
        let p = ProjPoint::from_finite(&coords)?;
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Whether `z` lies on the ordinary straight segment from `a` to `b`
/// (all finite, compared in canonical coordinates).
pub fn on_straight_segment(a: &[Q], b: &[Q], z: &[Q]) -> bool {
    let dir: Vec<Q> = b.iter().zip(a).map(|(u, v)| u - v).collect();
    let off: Vec<Q> = z.iter().zip(a).map(|(u, v)| u - v).collect();
    let Some(k) = dir.iter().position(|d| !d.is_zero()) else {
        return off.iter().all(Zero::is_zero);
    };
    let t = &off[k] / &dir[k];
    if t.is_negative() || t > Q::from_integer(1.into()) {
        return false;
    }
    dir.iter().zip(&off).all(|(d, o)| d * &t == *o)
}

/// Whether `z` lies on the tropical segment between `x` and `y`.
pub fn on_tropical_segment(x: &ProjPoint, y: &ProjPoint, z: &ProjPoint) -> Result<bool> {
    let pts = tropical_segment(x, y)?;
    let zc = z.require_finite()?;
    if pts.len() == 1 {
        return Ok(pts[0] == *z);
    }
    for w in pts.windows(2) {
        let a = w[0].require_finite()?;
        let b = w[1].require_finite()?;
        if on_straight_segment(&a, &b, &zc) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether a difference vector is a positive multiple of a zero-one vector
/// after adding a constant, i.e. it takes at most two distinct values.
pub fn is_zero_one_direction(dir: &[Q]) -> bool {
    let mut vals: Vec<&Q> = dir.iter().collect();
    vals.sort();
    vals.dedup();
    vals.len() <= 2
}
