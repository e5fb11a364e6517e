//! Both directions of the correspondence: the quotient of the theta
//! graph by its involution gives a degree-2 system, and that system gives
//! back a degree-2 map onto a three-leg star.

use tropgon::cli::divisor_line;
use tropgon::fixtures::{seg2_system, tail_system, theta_witness, circ4_system};
use tropgon::gonality::{construct_witness, default_tree_divisor, system_from_witness, system_roundtrip, tree_signature};

fn main() -> tropgon::error::Result<()> {
    let (pi, phi) = theta_witness();
    let s = system_from_witness(&pi, &phi, &default_tree_divisor(&phi)?)?;
    println!("theta: D = {}, {} generators", divisor_line(s.curve(), s.base()), s.gens().len());
    let w = construct_witness(&s)?;
    println!(
        "recovered degree {}, tree {} (star {})",
        w.certificate.degree,
        tree_signature(&w.tree),
        tree_signature(phi.target())
    );
    for (name, s) in [("seg2", seg2_system()), ("circ4", circ4_system()), ("tail", tail_system())] {
        println!("{name}: system -> witness -> system equal: {}", system_roundtrip(&s)?);
    }
    Ok(())
}
