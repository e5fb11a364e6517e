#![allow(dead_code)]

pub mod checks;

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropgon::curve::{Curve, Length, Point};
use tropgon::divisor::Divisor;
use tropgon::fixtures::*;
use tropgon::gonality::default_tree_divisor;
use tropgon::gonality::system_from_witness;
use tropgon::linear_system::GenSystem;
use tropgon::plfunc::PlFunction;
use tropgon::rational::{q, qi, Ext, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `len · j / m` for random `0 < j < m ≤ 7`.
pub fn inner_offset(rng: &mut ChaCha8Rng, len: &Q) -> Q {
    let m = rng.gen_range(2..=7);
    let j = rng.gen_range(1..m);
    len * q(j, m)
}

/// A random finite point, vertices included.
pub fn random_point(rng: &mut ChaCha8Rng, curve: &Curve) -> Point {
    let e = rng.gen_range(0..curve.edges().len());
    let off = match &curve.edge(e).length {
        Length::Finite(l) => {
            let m = rng.gen_range(1..=7);
            l * q(rng.gen_range(0..=m), m)
        }
        Length::Infinite => q(rng.gen_range(0..=20), 4),
    };
    curve.point(e, &Ext::Fin(off)).expect("on curve")
}

/// A random interior point.
pub fn random_interior(rng: &mut ChaCha8Rng, curve: &Curve) -> Point {
    let e = rng.gen_range(0..curve.edges().len());
    let off = match &curve.edge(e).length {
        Length::Finite(l) => inner_offset(rng, l),
        Length::Infinite => q(rng.gen_range(1..=20), 4),
    };
    curve.point(e, &Ext::Fin(off)).expect("on curve")
}

pub fn random_divisor(rng: &mut ChaCha8Rng, curve: &Curve) -> Divisor {
    let n = rng.gen_range(1..=4);
    Divisor::from_terms((0..n).map(|_| (random_point(rng, curve), rng.gen_range(-3..=3))))
}

/// Runs from `0` to `len` rising by `rise`, slopes in `[−3, 3]`.
fn edge_runs(rng: &mut ChaCha8Rng, len: &Q, rise: &Q) -> Vec<(i64, Length)> {
    for _ in 0..100 {
        let mut cuts: Vec<Q> = (0..rng.gen_range(0..=3)).map(|_| inner_offset(rng, len)).collect();
        cuts.sort();
        cuts.dedup();
        let mut runs = Vec::new();
        let mut at = qi(0);
        let mut value = qi(0);
        for c in &cuts {
            let s = rng.gen_range(-3..=3);
            value += qi(s) * (c - &at);
            runs.push((s, Length::Finite(c - &at)));
            at = c.clone();
        }
        // Close with two pieces meeting at t: s1 (t − at) + s2 (len − t) = rest.
        let rest = rise - &value;
        let s1: i64 = rng.gen_range(-3..=3);
        let s2: i64 = rng.gen_range(-3..=3);
        if s1 == s2 {
            if qi(s1) * (len - &at) == rest {
                runs.push((s1, Length::Finite(len - &at)));
                return runs;
            }
            continue;
        }
        let t = (&rest - qi(s2) * len + qi(s1) * &at) / qi(s1 - s2);
        if t > at && &t < len {
            runs.push((s1, Length::Finite(&t - &at)));
            runs.push((s2, Length::Finite(len - &t)));
            return runs;
        }
    }
    // |rise| ≤ 2 len, so slopes 3 and −3 always close the gap.
    let t = (rise + qi(3) * len) / qi(6);
    vec![(3, Length::Finite(t.clone())), (-3, Length::Finite(len - &t))]
}

/// A random function with integer slopes in `[−3, 3]` and rational
/// breakpoints.
pub fn random_function(rng: &mut ChaCha8Rng, curve: &Arc<Curve>) -> PlFunction {
    let min_len = curve
        .edges()
        .iter()
        .filter_map(|e| e.length.finite().cloned())
        .min()
        .unwrap_or_else(|| qi(1));
    let values: Vec<Q> = (0..curve.vertices().len())
        .map(|_| &min_len * q(rng.gen_range(-2..=2), 2))
        .collect();
    let runs = curve
        .edges()
        .iter()
        .map(|e| {
            let start = values[e.from].clone();
            let rs = match &e.length {
                Length::Finite(l) => edge_runs(rng, l, &(&values[e.to] - &values[e.from])),
                Length::Infinite => {
                    let mut rs: Vec<(i64, Length)> =
                        (0..rng.gen_range(0..=2)).map(|_| (rng.gen_range(-3..=3), Length::Finite(q(rng.gen_range(1..=4), 2)))).collect();
                    rs.push((rng.gen_range(-3..=3), Length::Infinite));
                    rs
                }
            };
            (start, rs)
        })
        .collect();
    PlFunction::from_runs(curve, runs).expect("random function is valid")
}

pub fn shuffle<T>(rng: &mut ChaCha8Rng, v: &mut [T]) {
    v.shuffle(rng);
}

/// The system `π_* φ̃^* |(centre)|` on the theta graph.
pub fn theta_system() -> GenSystem {
    let (pi, phi) = theta_witness();
    system_from_witness(&pi, &phi, &default_tree_divisor(&phi).unwrap()).unwrap()
}

/// Every rank-one system fixture.
pub fn systems() -> Vec<(&'static str, GenSystem)> {
    vec![
        ("SEG2", seg2_system()),
        ("CIRC4", circ4_system()),
        ("TAIL", tail_system()),
        ("THETA", theta_system()),
    ]
}
