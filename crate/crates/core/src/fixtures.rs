//! Small curves, systems and morphisms used by the examples and tests.

use std::sync::Arc;

use crate::curve::{Curve, Length, Point};
use crate::divisor::Divisor;
use crate::harmonic::{EdgeMap, Morphism};
use crate::linear_system::GenSystem;
use crate::plfunc::PlFunction;
use crate::rational::{q, qi, Q};

/// A function given per edge by its start value and `(slope, length)` runs.
pub fn runs(curve: &Arc<Curve>, spec: &[(Q, &[(i64, Q)])]) -> PlFunction {
    PlFunction::from_runs(
        curve,
        spec.iter()
            .map(|(start, rs)| (start.clone(), rs.iter().map(|(s, l)| (*s, Length::Finite(l.clone()))).collect()))
            .collect(),
    )
    .expect("fixture function is valid")
}

/// A segment `A — B` of length 2, edge `e1`.
pub fn seg2() -> Arc<Curve> {
    Arc::new(Curve::builder().vertex("A").vertex("B").edge("e1", "A", "B", qi(2)).build().expect("valid"))
}

/// `D = (A)`, generators `{0, −t}`.
pub fn seg2_system() -> GenSystem {
    let c = seg2();
    let ramp = runs(&c, &[(qi(0), &[(-1, qi(2))])]);
    GenSystem::new(&c, Divisor::point(Point::Vertex(0)), vec![PlFunction::zero(&c), ramp]).expect("valid")
}

/// A circle of length 4: `e1: v0 → v2`, `e2: v2 → v0`, both of length 2.
/// The circle coordinate `x` is the offset on `e1`, or `2 +` the offset on `e2`.
pub fn circ4() -> Arc<Curve> {
    Arc::new(
        Curve::builder()
            .vertex("v0")
            .vertex("v2")
            .edge("e1", "v0", "v2", qi(2))
            .edge("e2", "v2", "v0", qi(2))
            .build()
            .expect("valid"),
    )
}

/// The fold `x ↦ min(x, 4 − x)` of the circle onto [`seg2`].
pub fn circ4_fold() -> Morphism {
    Morphism::new(
        &circ4(),
        &seg2(),
        vec![
            EdgeMap { target_edge: 0, start: qi(0), slope: 1 },
            EdgeMap { target_edge: 0, start: qi(2), slope: -1 },
        ],
    )
    .expect("valid")
}

/// `D = 2(v0)`, generators `{0, −min(x, 4 − x)}`.
pub fn circ4_system() -> GenSystem {
    let c = circ4();
    let g = runs(&c, &[(qi(0), &[(-1, qi(2))]), (qi(-2), &[(1, qi(2))])]);
    GenSystem::new(&c, Divisor::from_terms([(Point::Vertex(0), 2)]), vec![PlFunction::zero(&c), g]).expect("valid")
}

/// Three edges of length 1 from `u` to `v`.
pub fn theta() -> Arc<Curve> {
    Arc::new(
        Curve::builder()
            .vertex("u")
            .vertex("v")
            .edge("e1", "u", "v", qi(1))
            .edge("e2", "u", "v", qi(1))
            .edge("e3", "u", "v", qi(1))
            .build()
            .expect("valid"),
    )
}

/// Three legs of length 1/2 from the centre `o`.
pub fn star3() -> Arc<Curve> {
    Arc::new(
        Curve::builder()
            .vertex("o")
            .vertex("a")
            .vertex("b")
            .vertex("c")
            .edge("l1", "o", "a", q(1, 2))
            .edge("l2", "o", "b", q(1, 2))
            .edge("l3", "o", "c", q(1, 2))
            .build()
            .expect("valid"),
    )
}

/// Quotient of [`theta`] onto [`star3`] by the involution swapping `u`
/// and `v`: each edge folds at its midpoint onto one leg. The source is
/// refined at the midpoints.
pub fn theta_quotient() -> Morphism {
    let pieces = (0..3)
        .map(|i| {
            vec![
                (qi(0), EdgeMap { target_edge: i, start: qi(0), slope: 1 }),
                (q(1, 2), EdgeMap { target_edge: i, start: q(1, 2), slope: -1 }),
            ]
        })
        .collect();
    Morphism::from_pieces(&theta(), &star3(), pieces).expect("valid").0
}

/// `(π, φ̃)` for [`theta`]: `π` forgets the midpoints, `φ̃` is
/// [`theta_quotient`].
pub fn theta_witness() -> (Morphism, Morphism) {
    let pieces = (0..3)
        .map(|i| {
            vec![
                (qi(0), EdgeMap { target_edge: i, start: qi(0), slope: 1 }),
                (q(1, 2), EdgeMap { target_edge: i, start: q(1, 2), slope: -1 }),
            ]
        })
        .collect();
    let (phi, sub) = Morphism::from_pieces(&theta(), &star3(), pieces).expect("valid");
    let maps = sub.origin.iter().map(|(e, s)| EdgeMap { target_edge: *e, start: s.clone(), slope: 1 }).collect();
    let pi = Morphism::new(phi.source(), &theta(), maps).expect("valid");
    (pi, phi)
}

/// The degenerate system `D = (A)`, generators `{0}`, on [`seg2`].
pub fn seg2_constant_system() -> GenSystem {
    let c = seg2();
    GenSystem::new(&c, Divisor::point(Point::Vertex(0)), vec![PlFunction::zero(&c)]).expect("valid")
}

/// A circle of circumference 2 with a tail of length 1 attached at the
/// point 1/2. Circle coordinate `x`: `c1: o → a` covers `[0, 1/2]`,
/// `c2: a → o` covers `[1/2, 2]`; the tail `t1: a → tip`.
pub fn tail() -> Arc<Curve> {
    Arc::new(
        Curve::builder()
            .vertex("o")
            .vertex("a")
            .vertex("tip")
            .edge("c1", "o", "a", q(1, 2))
            .edge("c2", "a", "o", q(3, 2))
            .edge("t1", "a", "tip", qi(1))
            .build()
            .expect("valid"),
    )
}

/// `D = 2(o)` with generators `0`, `g1 = −d(0, x)` (constant `−1/2` on the
/// tail) and `gτ = −min(d(0, x), 1/2)` (`−1/2 − s` on the tail). Its image
/// is a segment of length 1 with a tail of length 1 at its midpoint, and
/// the circle point 3/2 is an indeterminacy point.
pub fn tail_system() -> GenSystem {
    let c = tail();
    let half = q(1, 2);
    let g1 = runs(
        &c,
        &[
            (qi(0), &[(-1, half.clone())]),
            (-half.clone(), &[(-1, half.clone()), (1, qi(1))]),
            (-half.clone(), &[(0, qi(1))]),
        ],
    );
    let gt = runs(
        &c,
        &[
            (qi(0), &[(-1, half.clone())]),
            (-half.clone(), &[(0, qi(1)), (1, half.clone())]),
            (-half.clone(), &[(-1, qi(1))]),
        ],
    );
    GenSystem::new(&c, Divisor::from_terms([(Point::Vertex(0), 2)]), vec![PlFunction::zero(&c), g1, gt])
        .expect("valid")
}

/// The circle point `x` of [`tail`].
pub fn tail_circle_point(x: &Q) -> Point {
    let c = tail();
    let half = q(1, 2);
    if *x <= half {
        c.point(0, &crate::rational::Ext::Fin(x.clone())).expect("on circle")
    } else {
        c.point(1, &crate::rational::Ext::Fin(x - half)).expect("on circle")
    }
}

/// The tail point at distance `s` from the circle.
pub fn tail_point(s: &Q) -> Point {
    tail().point(2, &crate::rational::Ext::Fin(s.clone())).expect("on tail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        assert_eq!(seg2_system().degree(), 1);
        assert_eq!(circ4_system().degree(), 2);
        assert_eq!(tail_system().degree(), 2);
        assert_eq!(circ4_fold().global_degree().unwrap(), 2);
        assert_eq!(theta_quotient().global_degree().unwrap(), 2);
        assert_eq!(theta().b1(), 2);
        assert!(star3().is_tree());
        let (pi, phi) = theta_witness();
        assert_eq!(pi.global_degree().unwrap(), 1);
        assert_eq!(phi.global_degree().unwrap(), 2);
    }
}
