//! Tropical line segments and the projective distance.

use tropgon::rational::{q, qi};
use tropgon::trop_linalg::{proj_distance, tropical_segment, ProjPoint};

fn main() -> tropgon::error::Result<()> {
    let x = ProjPoint::from_finite(&[qi(0), qi(0), qi(0)])?;
    let y = ProjPoint::from_finite(&[qi(0), qi(-1), q(-5, 2)])?;
    let pieces = tropical_segment(&x, &y)?;
    println!("segment from {x} to {y}:");
    for w in pieces.windows(2) {
        println!("  {} -> {}  (length {})", w[0], w[1], proj_distance(&w[0], &w[1])?);
    }
    println!("distance {}", proj_distance(&x, &y)?);
    Ok(())
}
