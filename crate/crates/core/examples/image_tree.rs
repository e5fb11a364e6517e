//! The image of a rational map as a metric tree in tropical projective
//! space, and the map onto it.

use tropgon::fixtures::tail_system;
use tropgon::image_tree::ImageTree;

fn main() -> tropgon::error::Result<()> {
    let s = tail_system();
    let t = ImageTree::build(&s)?;
    println!("image tree (geometric dimension {}):", t.geomdim());
    for (v, c) in t.curve.vertices().iter().zip(&t.coords) {
        println!("  {} at {c}", v.id);
    }
    for e in t.curve.edges() {
        println!("  {}: {} - {}, length {}", e.id, t.curve.vertices()[e.from].id, t.curve.vertices()[e.to].id, e.length);
    }
    let refined = t.phi.source();
    for (e, m) in t.phi.maps().iter().enumerate() {
        println!("  {} -> {} slope {}", refined.edge(e).id, t.curve.edge(m.target_edge).id, m.slope);
    }
    Ok(())
}
