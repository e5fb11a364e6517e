//! From a rank-one system of geometric dimension one to a certified
//! finite harmonic morphism. The circle-with-tail system has an
//! indeterminacy point, so a tree is grafted there first.

use tropgon::cli::{bundle_text, certificate_text};
use tropgon::fixtures::tail_system;
use tropgon::gonality::{construct_witness, point_name, verify_witness};

fn main() -> tropgon::error::Result<()> {
    let w = construct_witness(&tail_system())?;
    for (p, m) in &w.indeterminacy {
        println!("indeterminacy at {} with multiplicity {m}", point_name(&w.curve, p));
    }
    for g in &w.grafts {
        println!("graft T_(p,{}) of length {} at {}", g.level, g.total_length(), point_name(&w.curve, &g.host));
    }
    println!("b1 {} -> {}", w.curve.b1(), w.modified.b1());
    let again = verify_witness(&w.pi, &w.phi)?;
    println!("independent check: degree {}", again.degree);
    println!();
    print!("{}", certificate_text("tail", &w));
    println!();
    print!("{}", bundle_text("tail", &w)?);
    Ok(())
}
