//! A linear system on the circle: the rational map, the moving divisor
//! `D_x`, the rank-one test and generator minimization.

use tropgon::cli::divisor_line;
use tropgon::fixtures::{circ4, circ4_system};
use tropgon::linear_system::GenSystem;
use tropgon::rational::{q, qi, Ext};

fn main() -> tropgon::error::Result<()> {
    let c = circ4();
    let s = circ4_system();
    for x in [qi(0), q(1, 2), qi(1), q(3, 2)] {
        let p = c.point(0, &Ext::Fin(x.clone()))?;
        println!("x = {x}: phi = {}, D_x = {}", s.phi(&p)?, divisor_line(&c, &s.divisor_at(&p)?));
    }
    let cert = s.check_rank_one()?;
    println!("rank one: {} ({} points checked)", cert.passed(), cert.checked);

    // A redundant generator is dropped.
    let mut gens = s.gens().to_vec();
    gens.push(gens[0].max(&gens[1])?);
    let bigger = GenSystem::new(&c, s.base().clone(), gens)?;
    let small = bigger.minimize()?;
    println!("{} generators minimize to {}, same semimodule: {}", bigger.gens().len(), small.gens().len(), small.same_semimodule(&s)?);
    Ok(())
}
