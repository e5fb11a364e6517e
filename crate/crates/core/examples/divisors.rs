//! Principal divisors, linear equivalence and reduced divisors on a circle.

use tropgon::cli::divisor_line;
use tropgon::curve::Point;
use tropgon::divisor::Divisor;
use tropgon::equivalence::{linearly_equivalent, reduced_divisor};
use tropgon::fixtures::{circ4, runs};
use tropgon::rational::qi;

fn main() -> tropgon::error::Result<()> {
    let c = circ4();
    // −min(x, 4 − x), capped at −1.
    let f = runs(&c, &[(qi(0), &[(-1, qi(1)), (0, qi(1))]), (qi(-1), &[(0, qi(1)), (1, qi(1))])]);
    let d = f.principal_divisor()?;
    for (p, k) in d.iter() {
        println!("{k:+} at {}", c.label(p));
    }

    let at = |x: i64| c.point(if x < 2 { 0 } else { 1 }, &qi(x % 2).into()).expect("on circle");
    let two_v0 = Divisor::from_terms([(Point::Vertex(0), 2)]);
    let split = Divisor::from_terms([(at(1), 1), (at(3), 1)]);
    match linearly_equivalent(&c, &two_v0, &split)? {
        Some(w) => println!("2(0) ~ (1) + (3): div w = {}", divisor_line(&c, &w.principal_divisor()?)),
        None => println!("not equivalent"),
    }
    let red = reduced_divisor(&c, &split)?;
    for (p, k) in red.iter() {
        println!("reduced: {k} at {}", c.label(p));
    }
    Ok(())
}
