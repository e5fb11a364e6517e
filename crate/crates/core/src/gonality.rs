//! From a rank-one linear system with a tree image to a finite harmonic
//! morphism from a modification of the curve onto that tree, and back.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::curve::{Curve, EdgeOrigin, GraftSpec, Length, Point};
use crate::divisor::Divisor;
use crate::equivalence::linearly_equivalent;
use crate::error::{Error, Result};
use crate::harmonic::{check_retraction, EdgeMap, Morphism};
use crate::image_tree::ImageTree;
use crate::linear_system::{tree_linear_system, GenSystem};
use crate::rational::{fmt_q, qi, Ext, Q};
use crate::trop_linalg::ProjPoint;

/// Checks rank one, then builds the image tree, which fails unless the
/// image is a tropically convex tree.
pub fn check_system(s: &GenSystem) -> Result<ImageTree> {
    let cert = s.check_rank_one()?;
    if let Some(p) = cert.failing {
        return Err(Error::RankFailure(point_name(s.curve(), &p)));
    }
    ImageTree::build(s)
}

/// The vertex id for vertices, `edge@offset` otherwise.
pub fn point_name(curve: &Curve, p: &Point) -> String {
    match p {
        Point::Vertex(v) => curve.vertices()[*v].id.clone(),
        _ => curve.label(p),
    }
}

fn finite(p: &ProjPoint) -> Vec<Q> {
    p.finite_coords().expect("finite image point")
}

/// `D_z(p)` for `z` in the image: only the generators maximizing
/// `f_i(p) − z_i` are active at `p` in `⊕ f_i / f_i(y)`, `Φ(y) = z`.
fn coefficient_over(s: &GenSystem, p: &Point, c: &[Q], z: &[Q]) -> Result<i64> {
    let gaps: Vec<Q> = c.iter().zip(z).map(|(a, b)| a - b).collect();
    let top = gaps.iter().max().expect("nonempty").clone();
    let active: Vec<usize> = (0..gaps.len()).filter(|&i| gaps[i] == top).collect();
    let mut total = s.base().get(p);
    for h in s.curve().half_edges(p) {
        let mut best = i64::MIN;
        for &i in &active {
            best = best.max(s.gens()[i].outgoing_slope(p, &h)?);
        }
        total += best;
    }
    Ok(total)
}

/// Directions of `T★` leaving `Φ(p)`, as coordinate differences.
fn germs_at(tree: &ImageTree, at: &Point) -> Vec<Vec<Q>> {
    let here = finite(&tree.coords_of(at));
    let mut out = Vec::new();
    let mut toward = |v: usize| {
        let there = finite(&tree.coords[v]);
        out.push(there.iter().zip(&here).map(|(a, b)| a - b).collect());
    };
    match at {
        Point::Vertex(v) => {
            for h in tree.curve.half_edges(at) {
                let e = tree.curve.edge(h.edge);
                toward(if e.from == *v && h.forward { e.to } else { e.from });
            }
        }
        Point::Interior { edge, .. } => {
            let e = tree.curve.edge(*edge);
            toward(e.from);
            toward(e.to);
        }
    }
    out
}

/// Indeterminacy points with `D_p(p)`: the points `p` lying in the support
/// of some `D_y ≠ D_p`. Such a `p` is in the support of `D_y` for `Φ(y)`
/// along some direction leaving `Φ(p)`, and is a vertex of the refined
/// curve or a support point of the base divisor.
pub fn indeterminacy_set(s: &GenSystem, tree: &ImageTree) -> Result<Vec<(Point, i64)>> {
    let curve = s.curve();
    let sub = &tree.refinement;
    let mut candidates: BTreeSet<Point> = (0..sub.refined.vertices().len())
        .map(|v| sub.original_point(curve, &Point::Vertex(v)))
        .collect();
    candidates.extend(s.base().support().cloned());
    let mut out = Vec::new();
    for p in candidates {
        if curve.is_at_infinity(&p) {
            continue;
        }
        let c = finite(&s.phi(&p)?);
        let at = tree
            .locate(&s.phi(&p)?)
            .ok_or_else(|| Error::CertificateFailed(format!("image of `{}` not on the tree", curve.label(&p))))?;
        let mut hit = false;
        for d in germs_at(tree, &at) {
            // A point just past Φ(p) along d.
            let low = d.iter().min().expect("nonempty").clone();
            let z: Vec<Q> = c.iter().zip(&d).map(|(a, x)| if *x == low { a.clone() } else { a + qi(1) }).collect();
            if coefficient_over(s, &p, &c, &z)? >= 1 {
                hit = true;
                break;
            }
        }
        if hit {
            out.push((p.clone(), s.self_coefficient(&p)?));
        }
    }
    Ok(out)
}

/// A tree `T_{p,n}` to be attached at `p`.
#[derive(Clone, Debug)]
pub struct Graft {
    /// Attachment point on the original curve.
    pub host: Point,
    pub level: i64,
    /// `Φ({x : D_x(p) ≥ level})` as a subtree of `T★`.
    pub tree: Curve,
    /// `Φ(p)` in `tree`.
    pub attach: Point,
    /// For each edge of `tree`: the edge of `T★` containing it and the
    /// offset where it starts.
    pub placement: Vec<(usize, Q)>,
}

impl Graft {
    pub fn total_length(&self) -> Q {
        self.tree.edges().iter().map(|e| e.length.finite().cloned().expect("compact")).sum()
    }
}

/// The nontrivial trees `T_{p,n}`, `1 ≤ n ≤ m`.
pub fn graft_trees(s: &GenSystem, tree: &ImageTree, p: &Point, m: i64) -> Result<Vec<Graft>> {
    let c = finite(&s.phi(p)?);
    let root = tree.locate(&s.phi(p)?).ok_or_else(|| Error::CertificateFailed("image point off the tree".into()))?;
    // Cut T★ where the active set can change, and at Φ(p).
    let mut cuts: BTreeMap<usize, BTreeSet<Q>> = BTreeMap::new();
    if let Point::Interior { edge, offset } = &root {
        cuts.entry(*edge).or_default().insert(offset.clone());
    }
    for (e, edge) in tree.curve.edges().iter().enumerate() {
        let (a, b) = (finite(&tree.coords[edge.from]), finite(&tree.coords[edge.to]));
        let len = edge.length.finite().expect("compact tree").clone();
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let dd = (&b[i] - &a[i]) - (&b[j] - &a[j]);
                if dd.is_zero() {
                    continue;
                }
                let t = &len * ((&c[i] - &c[j]) - (&a[i] - &a[j])) / dd;
                if t.is_positive() && t < len {
                    cuts.entry(e).or_default().insert(t);
                }
            }
        }
    }
    let sub = tree.curve.subdivide(&cuts);
    let fine = &sub.refined;
    let at = |pt: &Point| finite(&tree.coords_of(&sub.original_point(&tree.curve, pt)));
    let vertex_value: Vec<i64> = (0..fine.vertices().len())
        .map(|v| coefficient_over(s, p, &c, &at(&Point::Vertex(v))))
        .collect::<Result<_>>()?;
    let edge_value: Vec<i64> = fine
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let mid = edge.length.finite().expect("compact") / qi(2);
            coefficient_over(s, p, &c, &at(&Point::Interior { edge: e, offset: mid }))
        })
        .collect::<Result<_>>()?;
    let Point::Vertex(r) = sub.refine_point(&root) else { unreachable!("root was cut") };
    let mut out = Vec::new();
    for n in 1..=m {
        let mut seen = vec![false; fine.vertices().len()];
        let mut used: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([r]);
        seen[r] = true;
        while let Some(v) = queue.pop_front() {
            for h in fine.half_edges(&Point::Vertex(v)) {
                if edge_value[h.edge] < n || used.contains(&h.edge) {
                    continue;
                }
                used.push(h.edge);
                let e = fine.edge(h.edge);
                let w = if e.from == v && h.forward { e.to } else { e.from };
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let stray_edge = (0..fine.edges().len()).any(|e| edge_value[e] >= n && !used.contains(&e));
        let stray_vertex = (0..fine.vertices().len()).any(|v| vertex_value[v] >= n && !seen[v]);
        if stray_edge || stray_vertex {
            return Err(Error::CertificateFailed(format!(
                "T_({}, {n}) is disconnected",
                s.curve().label(p)
            )));
        }
        if used.is_empty() {
            continue;
        }
        used.sort_unstable();
        let keep: Vec<usize> = (0..seen.len()).filter(|&v| seen[v]).collect();
        let name = |v: usize| fine.vertices()[v].id.clone();
        let sub_tree = Curve::new(
            keep.iter().map(|&v| name(v)).collect(),
            used.iter()
                .map(|&e| {
                    let edge = fine.edge(e);
                    (edge.id.clone(), name(edge.from), name(edge.to), edge.length.clone())
                })
                .collect(),
        )?;
        let attach = Point::Vertex(keep.iter().position(|&v| v == r).expect("root kept"));
        let placement = used.iter().map(|&e| sub.origin[e].clone()).collect();
        out.push(Graft { host: p.clone(), level: n, tree: sub_tree, attach, placement });
    }
    Ok(out)
}

/// The outcome of checking a morphism pair `(π, φ̃)`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub degree: i64,
    /// Local degree of `φ̃` at every vertex of the modified curve.
    pub checkpoints: Vec<(Point, i64)>,
}

/// Checks that `pi` is a modification retraction and `phi` a finite
/// harmonic morphism from the same curve onto a tree.
pub fn verify_witness(pi: &Morphism, phi: &Morphism) -> Result<Certificate> {
    if pi.source() != phi.source() {
        return Err(Error::CertificateFailed("π and φ̃ have different sources".into()));
    }
    check_retraction(pi)?;
    if pi.source().b1() != pi.target().b1() {
        return Err(Error::NotRetraction("first Betti number changed".into()));
    }
    if !phi.target().is_tree() {
        return Err(Error::NotATree("target of φ̃".into()));
    }
    phi.require_finite()?;
    let checkpoints = phi.check_harmonic()?;
    let degree = phi.global_degree()?;
    Ok(Certificate { degree, checkpoints })
}

/// A modification `Γ̃ → Γ` with a finite harmonic morphism `Γ̃ → T★`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub curve: Arc<Curve>,
    pub modified: Arc<Curve>,
    pub tree: Arc<Curve>,
    pub coords: Vec<ProjPoint>,
    pub pi: Morphism,
    pub phi: Morphism,
    pub indeterminacy: Vec<(Point, i64)>,
    pub grafts: Vec<Graft>,
    pub certificate: Certificate,
}

/// Builds `(Γ̃, π, φ̃)` for a rank-one system with a tree image and
/// certifies it.
pub fn construct_witness(s: &GenSystem) -> Result<Witness> {
    let curve = s.curve().clone();
    if !curve.is_compact() {
        return Err(Error::Unsupported("harmonic morphisms from curves with unbounded edges".into()));
    }
    let first = check_system(s)?;
    let indeterminacy = indeterminacy_set(s, &first)?;
    let hosts: Vec<Point> = indeterminacy.iter().map(|(p, _)| p.clone()).collect();
    let tree = ImageTree::build_with(s, &hosts)?;
    let mut grafts = Vec::new();
    for (p, m) in &indeterminacy {
        grafts.extend(graft_trees(s, &tree, p, *m)?);
    }
    let sub = &tree.refinement;
    let refined = Arc::new(sub.refined.clone());
    let specs: Vec<GraftSpec> = grafts
        .iter()
        .map(|g| GraftSpec { host: sub.refine_point(&g.host), tree: g.tree.clone(), attach: g.attach.clone() })
        .collect();
    let grafted = refined.graft(&specs)?;
    let modified = Arc::new(grafted.curve.clone());
    let mut pi_maps = Vec::with_capacity(grafted.origin.len());
    let mut phi_maps = Vec::with_capacity(grafted.origin.len());
    for o in &grafted.origin {
        match o {
            EdgeOrigin::Host { edge, start } => {
                let (e, s0) = &sub.origin[*edge];
                pi_maps.push(EdgeMap { target_edge: *e, start: s0 + start, slope: 1 });
                let m = &tree.phi.maps()[*edge];
                debug_assert!(start.is_zero(), "hosts are vertices of the refined curve");
                phi_maps.push(m.clone());
            }
            EdgeOrigin::Graft { spec, tree_edge, start } => {
                let (e, off) = curve.positions(&grafts[*spec].host)[0].clone();
                let off = off.finite().cloned().expect("finite host");
                pi_maps.push(EdgeMap { target_edge: e, start: off, slope: 0 });
                let (te, s0) = &grafts[*spec].placement[*tree_edge];
                phi_maps.push(EdgeMap { target_edge: *te, start: s0 + start, slope: 1 });
            }
        }
    }
    let pi = Morphism::new(&modified, &curve, pi_maps)?;
    let phi = Morphism::new(&modified, &tree.curve, phi_maps)?;
    let certificate = verify_witness(&pi, &phi)?;
    if certificate.degree != s.degree() {
        return Err(Error::CertificateFailed(format!(
            "degree {} differs from deg D = {}",
            certificate.degree,
            s.degree()
        )));
    }
    for (p, m) in &indeterminacy {
        let x = grafted.host_point(&sub.refine_point(p));
        let k = phi.local_degree(&x)?;
        if k != *m {
            return Err(Error::CertificateFailed(format!(
                "local degree {k} at `{}`, expected D_p(p) = {m}",
                curve.label(p)
            )));
        }
    }
    Ok(Witness {
        curve,
        modified,
        tree: tree.curve.clone(),
        coords: tree.coords.clone(),
        pi,
        phi,
        indeterminacy,
        grafts,
        certificate,
    })
}

/// `Λ = π_* φ̃^* |D_T|` as a minimized generating system, with base
/// divisor `π_* φ̃^* D_T`. `D_T` has degree one.
pub fn system_from_witness(pi: &Morphism, phi: &Morphism, d_t: &Divisor) -> Result<GenSystem> {
    let cert = verify_witness(pi, phi)?;
    let ts = tree_linear_system(phi.target(), d_t)?;
    let base = pi.push_divisor(&phi.pull_divisor(d_t)?)?;
    let gens = ts
        .gens()
        .iter()
        .map(|g| pi.push_function(&phi.pull_function(g)?))
        .collect::<Result<Vec<_>>>()?;
    let system = GenSystem::new(pi.target(), base, gens)?.minimize()?;
    if system.degree() != cert.degree {
        return Err(Error::CertificateFailed("pushed base divisor has the wrong degree".into()));
    }
    check_system(&system)?;
    Ok(system)
}

/// `(φ̃(v₀))` for the first vertex `v₀` of the modified curve.
pub fn default_tree_divisor(phi: &Morphism) -> Result<Divisor> {
    Ok(Divisor::point(phi.image(&Point::Vertex(0))?))
}

/// Whether two systems on the same curve give the same set of divisors:
/// their bases are equivalent, `D' = D + div w`, and `{w + g'}` generates
/// the same semimodule as `{g}`.
pub fn same_system(a: &GenSystem, b: &GenSystem) -> Result<bool> {
    if a.curve() != b.curve() {
        return Ok(false);
    }
    let Some(w) = linearly_equivalent(a.curve(), a.base(), b.base())? else {
        return Ok(false);
    };
    let shifted = b.gens().iter().map(|g| g.add(&w)).collect::<Result<Vec<_>>>()?;
    GenSystem::new(a.curve(), a.base().clone(), shifted)?.same_semimodule(a)
}

/// System → witness → system.
pub fn system_roundtrip(s: &GenSystem) -> Result<bool> {
    let w = construct_witness(s)?;
    let back = system_from_witness(&w.pi, &w.phi, &default_tree_divisor(&w.phi)?)?;
    same_system(s, &back)
}

/// Witness → system → witness: same degree and isometric trees.
pub fn witness_roundtrip(pi: &Morphism, phi: &Morphism, d_t: &Divisor) -> Result<bool> {
    let degree = verify_witness(pi, phi)?.degree;
    let s = system_from_witness(pi, phi, d_t)?;
    let w = construct_witness(&s)?;
    Ok(w.certificate.degree == degree && tree_signature(phi.target()) == tree_signature(&w.tree))
}

/// A canonical string for a metric tree up to isometry, ignoring
/// degree-two vertices.
pub fn tree_signature(tree: &Curve) -> String {
    let n = tree.vertices().len();
    let valency: Vec<usize> = (0..n).map(|v| tree.incidence(v).len()).collect();
    let essential: Vec<usize> = (0..n).filter(|&v| valency[v] != 2).collect();
    if essential.is_empty() {
        return "()".into();
    }
    let other = |v: usize, e: usize| {
        let edge = tree.edge(e);
        if edge.from == v { edge.to } else { edge.from }
    };
    // Smoothed adjacency: essential vertex → (neighbour, length).
    let mut adj: BTreeMap<usize, Vec<(usize, Ext)>> = BTreeMap::new();
    for &v in &essential {
        for (e0, _) in tree.incidence(v) {
            let (mut prev, mut e) = (v, *e0);
            let mut len = Ext::zero();
            loop {
                len = match (&len, &tree.edge(e).length) {
                    (Ext::Fin(a), Length::Finite(l)) => Ext::Fin(a + l),
                    _ => Ext::PosInf,
                };
                let w = other(prev, e);
                if valency[w] != 2 {
                    adj.entry(v).or_default().push((w, len));
                    break;
                }
                let next = tree.incidence(w).iter().map(|(x, _)| *x).find(|x| *x != e).expect("valency two");
                prev = w;
                e = next;
            }
        }
    }
    fn encode(v: usize, parent: Option<usize>, adj: &BTreeMap<usize, Vec<(usize, Ext)>>) -> String {
        let mut parts: Vec<String> = adj
            .get(&v)
            .map(|ns| {
                ns.iter()
                    .filter(|(w, _)| Some(*w) != parent)
                    .map(|(w, l)| {
                        let l = match l {
                            Ext::Fin(x) => fmt_q(x),
                            _ => "inf".into(),
                        };
                        format!("{l}:{}", encode(*w, Some(v), adj))
                    })
                    .collect()
            })
            .unwrap_or_default();
        parts.sort();
        format!("({})", parts.join(","))
    }
    essential.iter().map(|&v| encode(v, None, &adj)).min().expect("nonempty")
}
