//! The fold of a circle onto a segment: local degrees, push-forward and
//! pull-back of functions and divisors.

use tropgon::cli::divisor_line;
use tropgon::fixtures::{circ4_fold, runs, seg2};
use tropgon::rational::qi;

fn main() -> tropgon::error::Result<()> {
    let fold = circ4_fold();
    println!("degree {}", fold.global_degree()?);
    for (p, k) in fold.check_harmonic()? {
        println!("  local degree {k} at {}", fold.source().label(&p));
    }
    let f = runs(&seg2(), &[(qi(0), &[(-1, qi(1)), (0, qi(1))])]);
    let pulled = fold.pull_function(&f)?;
    println!("div f        = {}", divisor_line(fold.target(), &f.principal_divisor()?));
    println!("div pull f   = {}", divisor_line(fold.source(), &pulled.principal_divisor()?));
    println!("pull div f   = {}", divisor_line(fold.source(), &fold.pull_divisor(&f.principal_divisor()?)?));
    let pushed = fold.push_function(&pulled)?;
    println!("div push pull f = {}", divisor_line(fold.target(), &pushed.principal_divisor()?));
    Ok(())
}
