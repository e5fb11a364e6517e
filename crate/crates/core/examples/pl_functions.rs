//! Piecewise integral-affine functions: tropical sums and products,
//! truncation, extrema and the nonconstant locus.

use tropgon::fixtures::{runs, seg2};
use tropgon::plfunc::PlFunction;
use tropgon::rational::{qi, Ext};

fn show(name: &str, f: &PlFunction) {
    let ef = &f.edge_fns().expect("finite")[0];
    let pieces: Vec<String> = ef.pieces().iter().map(|p| format!("[{}: {} slope {}]", p.start, p.value, p.slope)).collect();
    println!("{name:>10} {}", pieces.join(" "));
}

fn main() -> tropgon::error::Result<()> {
    let c = seg2();
    let down = runs(&c, &[(qi(0), &[(-1, qi(2))])]);
    let tent = runs(&c, &[(qi(-2), &[(2, qi(1)), (-2, qi(1))])]);
    show("down", &down);
    show("tent", &tent);
    show("max", &down.max(&tent)?);
    show("sum", &down.add(&tent)?);
    show("truncated", &tent.truncate_below(&Ext::Fin(qi(-1))));
    println!("inf {} sup {}", tent.infimum(), tent.supremum());
    for iv in down.max(&tent)?.nonconstant_locus()? {
        println!("nonconstant on [{}, {}]", iv.start, iv.end);
    }
    Ok(())
}
