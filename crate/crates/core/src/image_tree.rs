//! The image `Φ_Λ(Γ)` of a linear system as a metric tree in tropical
//! projective space, together with `Φ_Λ` as a morphism onto it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::curve::{Curve, Length, Point, Subdivision};
use crate::error::{Error, Result};
use crate::harmonic::{EdgeMap, Morphism};
use crate::linear_system::GenSystem;
use crate::rational::{as_integer, qi, Ext, Q};
use crate::trop_linalg::{is_zero_one_direction, on_straight_segment, proj_distance, tropical_segment, ProjPoint};

#[derive(Clone, Debug)]
pub struct ImageTree {
    /// The tree `T★`, vertices `t0, t1, …` in coordinate order.
    pub curve: Arc<Curve>,
    /// Coordinates of each vertex of `T★`.
    pub coords: Vec<ProjPoint>,
    /// Refinement of `Γ` on which `Φ_Λ` maps edges onto edges or points.
    pub refinement: Subdivision,
    /// `Φ_Λ` from the refined curve to `T★`.
    pub phi: Morphism,
}

/// A straight piece of the image between two cell endpoints.
struct Segment {
    from: ProjPoint,
    to: ProjPoint,
}

fn finite(p: &ProjPoint) -> Vec<Q> {
    p.finite_coords().expect("finite image point")
}

/// Intersection of two non-parallel straight segments, if any.
fn crossing(a: &Segment, b: &Segment) -> Option<ProjPoint> {
    let (p1, q1, p2, q2) = (finite(&a.from), finite(&a.to), finite(&b.from), finite(&b.to));
    let d1: Vec<Q> = q1.iter().zip(&p1).map(|(x, y)| x - y).collect();
    let d2: Vec<Q> = q2.iter().zip(&p2).map(|(x, y)| x - y).collect();
    let r: Vec<Q> = p2.iter().zip(&p1).map(|(x, y)| x - y).collect();
    // s d1 - t d2 = r
    let n = d1.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = &d1[j] * &d2[i] - &d1[i] * &d2[j];
            if det.is_zero() {
                continue;
            }
            let s = (&d2[i] * &r[j] - &d2[j] * &r[i]) / &det;
            let t = (&d1[i] * &r[j] - &d1[j] * &r[i]) / &det;
            let ok = (0..n).all(|k| &s * &d1[k] - &t * &d2[k] == r[k]);
            let unit = |v: &Q| !v.is_negative() && *v <= qi(1);
            if ok && unit(&s) && unit(&t) {
                let pt: Vec<Q> = p1.iter().zip(&d1).map(|(p, d)| p + &s * d).collect();
                return ProjPoint::from_finite(&pt).ok();
            }
            return None;
        }
    }
    None
}

/// Drops interior points of a polyline that continue straight on.
fn merge_straight(points: Vec<ProjPoint>) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 {
            let a = finite(&out[out.len() - 2]);
            let b = finite(&out[out.len() - 1]);
            let c = finite(&p);
            if on_straight_segment(&a, &c, &b) {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

impl ImageTree {
    /// Computes `Φ_Λ(Γ)`, checks that it is a tropically convex tree, and
    /// realizes `Φ_Λ` as a morphism onto it.
    pub fn build(system: &GenSystem) -> Result<ImageTree> {
        Self::build_with(system, &[])
    }

    /// As [`ImageTree::build`], additionally making the given points
    /// vertices of the refined curve.
    pub fn build_with(system: &GenSystem, extra: &[Point]) -> Result<ImageTree> {
        let curve = system.curve();
        for (e, edge) in curve.edges().iter().enumerate() {
            if edge.length.is_infinite() {
                let tails: BTreeSet<i64> = system
                    .gens()
                    .iter()
                    .map(|f| f.edge_fns().expect("finite")[e].tail_slope())
                    .collect();
                if tails.len() > 1 {
                    return Err(Error::Unsupported(format!(
                        "image of unbounded edge `{}` is unbounded",
                        edge.id
                    )));
                }
            }
        }
        let cuts: BTreeMap<usize, BTreeSet<Q>> = system
            .gens()
            .iter()
            .flat_map(|f| {
                f.edge_fns()
                    .expect("finite")
                    .iter()
                    .enumerate()
                    .flat_map(|(e, ef)| ef.knots().map(move |t| (e, t.clone())))
                    .collect::<Vec<_>>()
            })
            .fold(BTreeMap::new(), |mut m, (e, t)| {
                m.entry(e).or_insert_with(BTreeSet::new).insert(t);
                m
            });
        // Cells: (edge, a, b) with b finite; the unbounded last cell of a
        // ray has constant image.
        let mut cells: Vec<(usize, Q, Q)> = Vec::new();
        for (e, edge) in curve.edges().iter().enumerate() {
            let mut marks: Vec<Q> = vec![Q::zero()];
            if let Some(c) = cuts.get(&e) {
                marks.extend(c.iter().filter(|t| t.is_positive()).cloned());
            }
            if let Length::Finite(l) = &edge.length {
                marks.push(l.clone());
            }
            for w in marks.windows(2) {
                cells.push((e, w[0].clone(), w[1].clone()));
            }
        }
        let phi_at = |e: usize, t: &Q| -> Result<ProjPoint> {
            let p = curve.point(e, &Ext::Fin(t.clone()))?;
            let x = system.phi(&p)?;
            x.finite_coords().ok_or(Error::InfiniteCoordinate)?;
            Ok(x)
        };
        let mut segments: Vec<Segment> = Vec::new();
        let mut cell_images: Vec<(ProjPoint, ProjPoint)> = Vec::with_capacity(cells.len());
        for (e, a, b) in &cells {
            let (pa, pb) = (phi_at(*e, a)?, phi_at(*e, b)?);
            if pa != pb {
                let d: Vec<Q> = finite(&pb).iter().zip(finite(&pa)).map(|(x, y)| x - y).collect();
                if !is_zero_one_direction(&d) {
                    return Err(Error::GeomDimTooLarge(format!(
                        "image of cell [{}, {}] on edge `{}` is not a tropical segment",
                        a,
                        b,
                        curve.edge(*e).id
                    )));
                }
                segments.push(Segment { from: pa.clone(), to: pb.clone() });
            }
            cell_images.push((pa, pb));
        }
        if segments.is_empty() {
            return Err(Error::ImageIsPoint);
        }
        let mut nodes: BTreeSet<ProjPoint> = BTreeSet::new();
        for s in &segments {
            nodes.insert(s.from.clone());
            nodes.insert(s.to.clone());
        }
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                if let Some(x) = crossing(&segments[i], &segments[j]) {
                    nodes.insert(x);
                }
            }
        }
        let nodes: Vec<ProjPoint> = nodes.into_iter().collect();
        let node_index: BTreeMap<ProjPoint, usize> =
            nodes.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let on = |s: &Segment| -> Vec<usize> {
            let (a, b) = (finite(&s.from), finite(&s.to));
            let mut hits: Vec<(Q, usize)> = nodes
                .iter()
                .enumerate()
                .filter(|(_, p)| on_straight_segment(&a, &b, &finite(p)))
                .map(|(i, p)| (proj_distance(&s.from, p).expect("finite"), i))
                .collect();
            hits.sort();
            hits.into_iter().map(|(_, i)| i).collect()
        };
        let mut pieces: BTreeSet<(usize, usize)> = BTreeSet::new();
        for s in &segments {
            for w in on(s).windows(2) {
                pieces.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        let vertex_ids: Vec<String> = (0..nodes.len()).map(|i| format!("t{i}")).collect();
        let edges: Vec<(String, String, String, Length)> = pieces
            .iter()
            .enumerate()
            .map(|(k, (i, j))| {
                let len = proj_distance(&nodes[*i], &nodes[*j]).expect("finite");
                (format!("s{k}"), vertex_ids[*i].clone(), vertex_ids[*j].clone(), Length::Finite(len))
            })
            .collect();
        let tree = Curve::new(vertex_ids, edges)?;
        if tree.b1() != 0 {
            return Err(Error::ImageHasCycle);
        }
        let tree = Arc::new(tree);
        check_convex(&tree, &nodes)?;

        // Refine Γ at cell ends and at preimages of tree vertices.
        let mut gamma_cuts = cuts.clone();
        for p in extra {
            if let Point::Interior { edge, offset } = p {
                gamma_cuts.entry(*edge).or_default().insert(offset.clone());
            }
        }
        for ((e, a, b), (pa, pb)) in cells.iter().zip(&cell_images) {
            if pa == pb {
                continue;
            }
            let stretch = proj_distance(pa, pb).expect("finite") / (b - a);
            for i in on(&Segment { from: pa.clone(), to: pb.clone() }) {
                let t = a + proj_distance(pa, &nodes[i]).expect("finite") / &stretch;
                gamma_cuts.entry(*e).or_default().insert(t);
            }
        }
        let refinement = curve.subdivide(&gamma_cuts);
        let refined = Arc::new(refinement.refined.clone());
        let mut maps = Vec::with_capacity(refined.edges().len());
        for (ne, (e, start)) in refinement.origin.iter().enumerate() {
            let pa = phi_at(*e, start)?;
            let ia = node_index[&pa];
            let contracted = |i: usize| {
                let (te, end) = tree.incidence(i)[0];
                let off = tree.end_offset(te, end).finite().cloned().expect("compact tree");
                EdgeMap { target_edge: te, start: off, slope: 0 }
            };
            let m = match &refined.edge(ne).length {
                Length::Infinite => contracted(ia),
                Length::Finite(l) => {
                    let pb = phi_at(*e, &(start + l))?;
                    if pa == pb {
                        contracted(ia)
                    } else {
                        let ib = node_index[&pb];
                        let te = pieces
                            .iter()
                            .position(|&(i, j)| (i, j) == (ia.min(ib), ia.max(ib)))
                            .expect("refined edge maps onto a tree edge");
                        let tl = tree.edge(te).length.finite().cloned().expect("finite");
                        let k = as_integer(&(&tl / l)).ok_or_else(|| {
                            Error::NonIntegralSlope(refined.edge(ne).id.clone())
                        })?;
                        if tree.edge(te).from == ia {
                            EdgeMap { target_edge: te, start: Q::zero(), slope: k }
                        } else {
                            EdgeMap { target_edge: te, start: tl, slope: -k }
                        }
                    }
                }
            };
            maps.push(m);
        }
        let phi = Morphism::new(&refined, &tree, maps)?;
        Ok(ImageTree { curve: tree, coords: nodes, refinement, phi })
    }

    /// The point of `T★` with the given coordinates.
    pub fn locate(&self, p: &ProjPoint) -> Option<Point> {
        if let Some(i) = self.coords.iter().position(|c| c == p) {
            return Some(Point::Vertex(i));
        }
        let z = p.finite_coords()?;
        for (e, edge) in self.curve.edges().iter().enumerate() {
            let (a, b) = (&self.coords[edge.from], &self.coords[edge.to]);
            if on_straight_segment(&finite(a), &finite(b), &z) {
                let off = proj_distance(a, p).ok()?;
                return self.curve.point(e, &Ext::Fin(off)).ok();
            }
        }
        None
    }

    /// Coordinates of a point of `T★`.
    pub fn coords_of(&self, p: &Point) -> ProjPoint {
        match p {
            Point::Vertex(v) => self.coords[*v].clone(),
            Point::Interior { edge, offset } => {
                let e = self.curve.edge(*edge);
                let (a, b) = (finite(&self.coords[e.from]), finite(&self.coords[e.to]));
                let len = e.length.finite().expect("compact tree");
                let t = offset / len;
                let pt: Vec<Q> = a.iter().zip(&b).map(|(x, y)| x + &t * (y - x)).collect();
                ProjPoint::from_finite(&pt).expect("finite")
            }
        }
    }

    /// Geometric dimension of the image: always 1 for a built tree.
    pub fn geomdim(&self) -> usize {
        1
    }
}

/// The tree path between every pair of leaves must be the tropical
/// segment between them; then every sub-path is one as well.
fn check_convex(tree: &Curve, coords: &[ProjPoint]) -> Result<()> {
    let n = tree.vertices().len();
    let leaves: Vec<usize> = (0..n).filter(|&v| tree.incidence(v).len() == 1).collect();
    for (k, &a) in leaves.iter().enumerate() {
        let mut parent = vec![usize::MAX; n];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &(e, _) in tree.incidence(v) {
                let edge = tree.edge(e);
                let w = if edge.from == v { edge.to } else { edge.from };
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        for &b in &leaves[k + 1..] {
            let mut path = vec![coords[b].clone()];
            let mut v = b;
            while v != a {
                v = parent[v];
                path.push(coords[v].clone());
            }
            path.reverse();
            let seg = merge_straight(tropical_segment(&coords[a], &coords[b])?);
            if merge_straight(path) != seg {
                return Err(Error::GeomDimTooLarge(format!(
                    "tropical segment between t{a} and t{b} leaves the image"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::Divisor;
    use crate::plfunc::PlFunction;

    #[test]
    fn segment_image_is_isometric() {
        let c = Arc::new(Curve::builder().vertex("A").vertex("B").edge("e1", "A", "B", qi(2)).build().unwrap());
        let ramp = PlFunction::from_runs(&c, vec![(qi(0), vec![(-1, Length::Finite(qi(2)))])]).unwrap();
        let s = GenSystem::new(&c, Divisor::point(Point::Vertex(0)), vec![PlFunction::zero(&c), ramp]).unwrap();
        let t = ImageTree::build(&s).unwrap();
        assert_eq!(t.curve.edges().len(), 1);
        assert_eq!(t.curve.edge(0).length, Length::Finite(qi(2)));
        assert_eq!(t.phi.global_degree().unwrap(), 1);
    }

    #[test]
    fn constant_system_has_point_image() {
        let c = Arc::new(Curve::builder().vertex("A").vertex("B").edge("e1", "A", "B", qi(2)).build().unwrap());
        let s = GenSystem::new(&c, Divisor::point(Point::Vertex(0)), vec![PlFunction::zero(&c)]).unwrap();
        assert!(matches!(ImageTree::build(&s), Err(Error::ImageIsPoint)));
    }
}
