use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::curve::{Curve, Point, Subdivision};

/// A finite integer combination of points. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    coeffs: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn point(p: Point) -> Self {
        Divisor::from_terms([(p, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Point, i64)>) -> Self {
        let mut d = Divisor::zero();
        for (p, k) in terms {
            d.add_at(p, k);
        }
        d
    }

    pub fn add_at(&mut self, p: Point, k: i64) {
        if k == 0 {
            return;
        }
        let slot = self.coeffs.entry(p).or_insert(0);
        *slot += k;
        if *slot == 0 {
            self.coeffs.retain(|_, v| *v != 0);
        }
    }

    pub fn get(&self, p: &Point) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.coeffs.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, i64)> {
        self.coeffs.iter().map(|(p, k)| (p, *k))
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&k| k > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.iter().map(|(p, c)| (p.clone(), c * k)))
    }

    /// The same divisor on a subdivided curve.
    pub fn refine(&self, sub: &Subdivision) -> Divisor {
        Divisor::from_terms(self.iter().map(|(p, k)| (sub.refine_point(p), k)))
    }

    /// Transfers a divisor on a subdivided curve back to the original.
    pub fn coarsen(&self, original: &Curve, sub: &Subdivision) -> Divisor {
        Divisor::from_terms(self.iter().map(|(p, k)| (sub.original_point(original, p), k)))
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, k) in rhs.iter() {
            out.add_at(p.clone(), k);
        }
        out
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        self + &(-rhs)
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        self.scaled(-1)
    }
}
