//! Checks shared by the acceptance target and the property tests. Each
//! returns `Err` with a description of the first violation.

use std::collections::{BTreeMap, BTreeSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropgon::curve::{Curve, Length, Point};
use tropgon::divisor::Divisor;
use tropgon::gonality::{construct_witness, indeterminacy_set, tree_signature};
use tropgon::harmonic::Morphism;
use tropgon::image_tree::ImageTree;
use tropgon::linear_system::{maximal_representation, minimize_generators, same_up_to_constants, GenSystem};
use tropgon::plfunc::PlFunction;
use tropgon::rational::{qi, Ext, Q};
use tropgon::trop_linalg::{is_zero_one_direction, on_tropical_segment, proj_distance, tropical_segment, ProjPoint};

use super::{inner_offset, random_point};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

#[allow(unused_imports)]
pub(crate) use ensure;

fn e2s<T>(r: tropgon::error::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn segment_facts(x: &ProjPoint, y: &ProjPoint) -> Check {
    let n = x.dim();
    let pts = e2s(tropical_segment(x, y))?;
    ensure!(pts.first() == Some(x) && pts.last() == Some(y), "segment endpoints differ");
    ensure!(pts.len() - 1 <= n, "{} pieces in dimension {n}", pts.len() - 1);
    for w in pts.windows(2) {
        let (a, b) = (w[0].finite_coords().unwrap(), w[1].finite_coords().unwrap());
        let d: Vec<Q> = b.iter().zip(&a).map(|(p, q)| p - q).collect();
        ensure!(is_zero_one_direction(&d), "direction {d:?} is not zero-one");
    }
    Ok(())
}

pub fn metric_axioms(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Check {
    let d = |x, y| e2s(proj_distance(x, y));
    let (ab, ba, bc, ac, aa) = (d(a, b)?, d(b, a)?, d(b, c)?, d(a, c)?, d(a, a)?);
    ensure!(aa == qi(0), "d(a, a) = {aa}");
    ensure!(ab == ba, "asymmetric");
    ensure!(ab >= qi(0), "negative distance");
    ensure!((ab == qi(0)) == (a == b), "zero distance between distinct points");
    ensure!(ac <= &ab + &bc, "triangle inequality fails");
    Ok(())
}

/// `φ_* div f = div φ_* f`.
pub fn push_commutes(phi: &Morphism, f: &PlFunction) -> Check {
    let left = e2s(phi.push_divisor(&e2s(f.principal_divisor())?))?;
    let right = e2s(e2s(phi.push_function(f))?.principal_divisor())?;
    ensure!(left == right, "push: {left:?} vs {right:?}");
    Ok(())
}

/// `φ^* div f = div φ^* f`.
pub fn pull_commutes(phi: &Morphism, f: &PlFunction) -> Check {
    let left = e2s(phi.pull_divisor(&e2s(f.principal_divisor())?))?;
    let right = e2s(e2s(phi.pull_function(f))?.principal_divisor())?;
    ensure!(left == right, "pull: {left:?} vs {right:?}");
    Ok(())
}

pub fn degree_laws(phi: &Morphism, on_target: &Divisor, on_source: &Divisor) -> Check {
    let d = e2s(phi.global_degree())?;
    let pulled = e2s(phi.pull_divisor(on_target))?;
    ensure!(pulled.degree() == d * on_target.degree(), "deg pull = {} ≠ {d}·{}", pulled.degree(), on_target.degree());
    let pushed = e2s(phi.push_divisor(on_source))?;
    ensure!(pushed.degree() == on_source.degree(), "push changes degree");
    Ok(())
}

/// Cell endpoints of the system plus a few random points.
pub fn sample_points(rng: &mut ChaCha8Rng, s: &GenSystem, extra: usize) -> Vec<Point> {
    let mut pts = s.cell_points();
    pts.retain(|p| !s.curve().is_at_infinity(p));
    for _ in 0..extra {
        pts.push(random_point(rng, s.curve()));
    }
    pts
}

/// `f ∈ L(D_x)` with `D_y = D_x + div f`.
pub fn moving_function(s: &GenSystem, x: &Point, y: &Point) -> Result<PlFunction, String> {
    let fx = e2s(s.normalized_max(x))?;
    let fy = e2s(s.normalized_max(y))?;
    e2s(fy.add(&e2s(fx.negate())?))
}

fn truncation_formula(s: &GenSystem, dx: &Divisor, f: &PlFunction, z: &Point) -> Check {
    let fz = e2s(f.evaluate(z))?;
    let t = f.truncate_below(&fz);
    let expect = dx + &e2s(t.principal_divisor())?;
    let dz = e2s(s.divisor_at(z))?;
    ensure!(dz == expect, "D_z ≠ D_x + div f_(≥f(z)) at {}", s.curve().label(z));
    Ok(())
}

/// Extremes of `f` at `y` and `x`, and the truncation formula for every
/// sample `z` whose image lies on the segment. Returns how many `z` were
/// on the segment.
pub fn lemma_base(s: &GenSystem, x: &Point, y: &Point, zs: &[Point]) -> Result<usize, String> {
    let f = moving_function(s, x, y)?;
    let (dx, dy) = (e2s(s.divisor_at(x))?, e2s(s.divisor_at(y))?);
    ensure!(dy == &dx + &e2s(f.principal_divisor())?, "D_y ≠ D_x + div f");
    ensure!(e2s(f.evaluate(y))? == f.infimum(), "minimum not at y");
    ensure!(e2s(f.evaluate(x))? == f.supremum(), "maximum not at x");
    let (px, py) = (e2s(s.phi(x))?, e2s(s.phi(y))?);
    let mut hits = 0;
    for z in zs {
        if e2s(on_tropical_segment(&px, &py, &e2s(s.phi(z))?))? {
            truncation_formula(s, &dx, &f, z)?;
            hits += 1;
        }
    }
    Ok(hits)
}

pub fn lemma_zero(s: &GenSystem, x: &Point, y: &Point) -> Check {
    let (dx, dy) = (e2s(s.divisor_at(x))?, e2s(s.divisor_at(y))?);
    ensure!(dx.get(x) >= dy.get(x), "D_x(x) = {} < D_y(x) = {}", dx.get(x), dy.get(x));
    Ok(())
}

/// The truncation formula for sample points in the nonconstant locus.
pub fn lemma_ratg(s: &GenSystem, x: &Point, y: &Point, zs: &[Point]) -> Result<usize, String> {
    let f = moving_function(s, x, y)?;
    let dx = e2s(s.divisor_at(x))?;
    let mut hits = 0;
    for z in zs {
        if e2s(f.in_nonconstant_locus(z))? {
            truncation_formula(s, &dx, &f, z)?;
            hits += 1;
        }
    }
    Ok(hits)
}

/// For `x` outside `I(Λ)` (a point of the refined curve of `tree`) and
/// each direction `h'` at `Φ(x)`: the degrees of the half-edges at `x`
/// mapping into `h'` sum to `D_x(x) − D_y(x)`, `Φ(y)` just inside `h'`.
pub fn lemma_har(s: &GenSystem, tree: &ImageTree, x: &Point) -> Check {
    let phi = &tree.phi;
    let curve = s.curve();
    let x0 = tree.refinement.original_point(curve, x);
    let dx = e2s(s.divisor_at(&x0))?;
    let image = e2s(phi.image(x))?;
    let sums: BTreeMap<(usize, bool), i64> = e2s(phi.germ_sums(x))?
        .into_iter()
        .map(|(h, k)| ((h.edge, h.forward), k))
        .collect();
    for h in tree.curve.half_edges(&image) {
        let reach = match &h.reach {
            Length::Finite(r) => r.clone(),
            Length::Infinite => qi(1),
        };
        let eps = reach / qi(3);
        let target = tree.curve.step(&image, &h, &eps);
        let fiber = e2s(phi.fiber(&target))?;
        let (y, _) = fiber.first().ok_or("empty fiber")?;
        let dy = e2s(s.divisor_at(&tree.refinement.original_point(curve, y)))?;
        let sum = sums.get(&(h.edge, h.forward)).copied().unwrap_or(0);
        ensure!(
            sum == dx.get(&x0) - dy.get(&x0),
            "at {}: degree sum {sum} vs D_x(x) − D_y(x) = {}",
            curve.label(&x0),
            dx.get(&x0) - dy.get(&x0)
        );
    }
    Ok(())
}

/// Points of a compact curve on which a PL function with knots among the
/// given ones is determined: knots and midpoints between them.
fn determining_points(curve: &Curve, fns: &[&PlFunction]) -> Vec<Point> {
    let mut out = Vec::new();
    for (e, edge) in curve.edges().iter().enumerate() {
        let len = edge.length.finite().expect("compact").clone();
        let mut ts: BTreeSet<Q> = BTreeSet::from([qi(0), len.clone()]);
        for f in fns {
            ts.extend(f.edge_fns().expect("finite")[e].knots().cloned());
        }
        let ts: Vec<Q> = ts.into_iter().collect();
        for (i, t) in ts.iter().enumerate() {
            out.push(curve.point(e, &Ext::Fin(t.clone())).unwrap());
            if let Some(u) = ts.get(i + 1) {
                out.push(curve.point(e, &Ext::Fin((t + u) / qi(2))).unwrap());
            }
        }
    }
    out
}

/// Membership of `f` in the semimodule spanned by `gens`, by trying every
/// coefficient vector with entries `f(x) − g_i(x)` for sample points `x`
/// (or −∞). Between samples `f` is affine and the candidate is convex, so
/// agreement at endpoints and midpoints is agreement everywhere.
pub fn brute_force_member(f: &PlFunction, gens: &[PlFunction]) -> bool {
    let curve = f.curve().clone();
    let mut all: Vec<&PlFunction> = gens.iter().collect();
    all.push(f);
    let pts = determining_points(&curve, &all);
    let fv: Vec<Q> = pts.iter().map(|p| f.value(p)).collect();
    let gv: Vec<Vec<Q>> = gens.iter().map(|g| pts.iter().map(|p| g.value(p)).collect()).collect();
    let cands: Vec<Vec<Option<Q>>> = gv
        .iter()
        .map(|g| {
            let set: BTreeSet<Q> = fv.iter().zip(g).map(|(a, b)| a - b).collect();
            std::iter::once(None).chain(set.into_iter().map(Some)).collect()
        })
        .collect();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let coeffs: Vec<&Option<Q>> = idx.iter().zip(&cands).map(|(i, c)| &c[*i]).collect();
        if coeffs.iter().any(|c| c.is_some()) {
            let ok = (0..pts.len()).all(|k| {
                let best = coeffs
                    .iter()
                    .zip(&gv)
                    .filter_map(|(c, g)| c.as_ref().map(|a| a + &g[k]))
                    .max()
                    .expect("some finite");
                best == fv[k]
            });
            if ok {
                return true;
            }
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return false;
            }
            idx[j] += 1;
            if idx[j] < cands[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

pub fn membership_agrees(f: &PlFunction, gens: &[PlFunction]) -> Check {
    let fast = e2s(maximal_representation(f, gens))?.1;
    let slow = brute_force_member(f, gens);
    ensure!(fast == slow, "maximal representation says {fast}, brute force says {slow}");
    Ok(())
}

/// Random interior cuts, `n` in total.
pub fn random_cuts(rng: &mut ChaCha8Rng, curve: &Curve, n: usize) -> BTreeMap<usize, BTreeSet<Q>> {
    let mut cuts: BTreeMap<usize, BTreeSet<Q>> = BTreeMap::new();
    let mut count = 0;
    while count < n {
        let e = rng.gen_range(0..curve.edges().len());
        let t = match &curve.edge(e).length {
            Length::Finite(l) => inner_offset(rng, l),
            Length::Infinite => tropgon::rational::q(rng.gen_range(1..=12), 3),
        };
        if cuts.entry(e).or_default().insert(t) {
            count += 1;
        }
    }
    cuts
}

/// Distances, principal divisors, `D_x`, degrees and witness
/// certificates are unchanged by inserting degree-two vertices.
pub fn subdivision_invariance(rng: &mut ChaCha8Rng, s: &GenSystem) -> Check {
    let curve = s.curve();
    let sub = curve.subdivide(&random_cuts(rng, curve, 10));
    let fine = &sub.refined;
    let rs = s.refine(&sub);
    ensure!(rs.degree() == s.degree(), "degree changed");
    for _ in 0..10 {
        let (x, y) = (random_point(rng, curve), random_point(rng, curve));
        let (rx, ry) = (sub.refine_point(&x), sub.refine_point(&y));
        ensure!(e2s(curve.distance(&x, &y))? == e2s(fine.distance(&rx, &ry))?, "distance changed");
        let f = super::random_function(rng, curve);
        let div = e2s(f.principal_divisor())?;
        ensure!(e2s(f.refine(&sub).principal_divisor())? == div.refine(&sub), "div changed");
        ensure!(e2s(rs.divisor_at(&rx))? == e2s(s.divisor_at(&x))?.refine(&sub), "D_x changed");
    }
    ensure!(
        e2s(rs.check_rank_one())?.passed() == e2s(s.check_rank_one())?.passed(),
        "rank certificate changed"
    );
    let (w, rw) = (e2s(construct_witness(s))?, e2s(construct_witness(&rs))?);
    ensure!(w.certificate.degree == rw.certificate.degree, "witness degree changed");
    let mut mapped: Vec<(Point, i64)> = w.indeterminacy.iter().map(|(p, m)| (sub.refine_point(p), *m)).collect();
    let mut fine_ind = rw.indeterminacy.clone();
    mapped.sort();
    fine_ind.sort();
    ensure!(mapped == fine_ind, "indeterminacy changed");
    let lengths = |w: &tropgon::gonality::Witness| {
        let mut v: Vec<(i64, Q)> = w.grafts.iter().map(|g| (g.level, g.total_length())).collect();
        v.sort();
        v
    };
    ensure!(lengths(&w) == lengths(&rw), "grafts changed");
    ensure!(tree_signature(&w.tree) == tree_signature(&rw.tree), "image tree changed");
    ensure!(w.modified.b1() == rw.modified.b1(), "genus of the modification changed");
    Ok(())
}

/// Indeterminacy points found by scanning `D_y` over the refined curve's
/// vertices.
pub fn indeterminacy_by_scan(s: &GenSystem, tree: &ImageTree) -> Result<Vec<(Point, i64)>, String> {
    let curve = s.curve();
    let mut found: BTreeMap<Point, i64> = BTreeMap::new();
    for v in 0..tree.refinement.refined.vertices().len() {
        let y = tree.refinement.original_point(curve, &Point::Vertex(v));
        let dy = e2s(s.divisor_at(&y))?;
        for (p, k) in dy.iter() {
            if k > 0 && !found.contains_key(p) {
                let dp = e2s(s.divisor_at(p))?;
                if dp != dy {
                    found.insert(p.clone(), dp.get(p));
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

pub fn indeterminacy_agrees(s: &GenSystem) -> Check {
    let tree = e2s(ImageTree::build(s))?;
    let exact = e2s(indeterminacy_set(s, &tree))?;
    let scan = indeterminacy_by_scan(s, &tree)?;
    ensure!(exact == scan, "indeterminacy {exact:?} vs scan {scan:?}");
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Idempotence, and agreement up to constants over every input order.
pub fn minimization_facts(gens: &[PlFunction]) -> Check {
    let once = e2s(minimize_generators(gens))?;
    let twice = e2s(minimize_generators(&once))?;
    ensure!(same_up_to_constants(&once, &twice), "minimizing twice changes the result");
    for (a, b) in [(gens, &once[..]), (&once[..], gens)] {
        for f in a {
            ensure!(e2s(maximal_representation(f, b))?.1, "minimization changes the semimodule");
        }
    }
    for p in permutations(gens.len()) {
        let shuffled: Vec<PlFunction> = p.iter().map(|&i| gens[i].clone()).collect();
        let m = e2s(minimize_generators(&shuffled))?;
        ensure!(same_up_to_constants(&once, &m), "order {p:?} gives {} generators, not {}", m.len(), once.len());
    }
    Ok(())
}
