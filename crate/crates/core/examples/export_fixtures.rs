//! Writes the fixture curves, systems and witnesses to `data/*.trop`.
//!
//! cargo run --example export_fixtures

use std::path::Path;

use tropgon::fixtures::*;
use tropgon::format::Workspace;
use tropgon::harmonic::Morphism;
use tropgon::rational::qi;

fn main() -> tropgon::error::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut files: Vec<(&str, Workspace)> = Vec::new();

    let mut ws = Workspace::default();
    let c = ws.add_curve("seg2", seg2())?;
    c.add_system("s", &seg2_system())?;
    c.add_system("flat", &seg2_constant_system())?;
    c.add_func("f", runs(&seg2(), &[(qi(0), &[(-1, qi(1)), (0, qi(1))])]))?;
    files.push(("seg2.trop", ws));

    let mut ws = Workspace::default();
    ws.add_curve("circ4", circ4())?.add_system("s", &circ4_system())?;
    let f1 = runs(&seg2(), &[(qi(0), &[(-1, qi(1)), (0, qi(1))])]);
    let pulled = circ4_fold().pull_function(&f1)?;
    ws.curves.get_mut("circ4").expect("added").add_func("f1_pull", pulled)?;
    ws.add_curve("seg2", seg2())?.add_func("f1", f1)?;
    ws.add_map("pi", "circ4", "circ4", &Morphism::identity(&circ4()))?;
    ws.add_map("phi", "circ4", "seg2", &circ4_fold())?;
    files.push(("circ4.trop", ws));

    let mut ws = Workspace::default();
    ws.add_curve("tail", tail())?.add_system("s", &tail_system())?;
    files.push(("tail.trop", ws));

    let (pi, phi) = theta_witness();
    let mut ws = Workspace::default();
    ws.add_curve("theta", pi.target().clone())?;
    ws.add_curve("theta.mod", pi.source().clone())?;
    ws.add_curve("star3", phi.target().clone())?;
    ws.add_map("pi", "theta.mod", "theta", &pi)?;
    ws.add_map("phi", "theta.mod", "star3", &phi)?;
    files.push(("theta.trop", ws));

    std::fs::create_dir_all(&dir).map_err(|e| tropgon::error::Error::Io(e.to_string()))?;
    for (name, ws) in files {
        let path = dir.join(name);
        std::fs::write(&path, ws.print()).map_err(|e| tropgon::error::Error::Io(e.to_string()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
