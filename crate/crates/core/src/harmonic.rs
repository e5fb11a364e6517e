//! Morphisms of tropical curves: continuous maps, affine with integral
//! slope on each source edge. Harmonicity, degrees, push-forward and
//! pull-back, and the retraction of a tropical modification.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::curve::{Curve, EdgeOrigin, GraftSpec, Grafted, HalfEdge, Length, Point, Subdivision};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::plfunc::{EdgeFn, PlFunction};
use crate::rational::{as_integer, qi, Ext, Q};

/// Where one source edge goes: offset `t` lands at `start + slope * t` on
/// `target_edge`. The sign of `slope` records orientation; `|slope|` is
/// the local degree along the edge and 0 means the edge is contracted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeMap {
    pub target_edge: usize,
    pub start: Q,
    pub slope: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<Curve>,
    target: Arc<Curve>,
    maps: Vec<EdgeMap>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub is_morphism: bool,
    pub is_finite: bool,
}

/// A target half-edge at a point, identified by edge and direction.
type Germ = (usize, bool);

impl Morphism {
    pub fn new(source: &Arc<Curve>, target: &Arc<Curve>, maps: Vec<EdgeMap>) -> Result<Self> {
        if maps.len() != source.edges().len() {
            return Err(Error::LengthMismatch(source.edges().len(), maps.len()));
        }
        for (e, m) in maps.iter().enumerate() {
            let edge = source.edge(e);
            let out = || Error::ImageOutOfEdge(edge.id.clone());
            let Some(te) = target.edges().get(m.target_edge) else { return Err(out()) };
            let within = |t: &Q| !t.is_negative() && te.length.finite().is_none_or(|l| t <= l);
            if !within(&m.start) {
                return Err(out());
            }
            match &edge.length {
                Length::Finite(l) => {
                    if !within(&(&m.start + qi(m.slope) * l)) {
                        return Err(out());
                    }
                }
                Length::Infinite => {
                    if m.slope < 0 || (m.slope > 0 && !te.length.is_infinite()) {
                        return Err(out());
                    }
                }
            }
        }
        let m = Morphism { source: source.clone(), target: target.clone(), maps };
        for v in 0..source.vertices().len() {
            let mut image: Option<Point> = None;
            for &(e, end) in source.incidence(v) {
                let here = m.image_on(e, &source.end_offset(e, end));
                match &image {
                    None => image = Some(here),
                    Some(prev) if *prev != here => {
                        return Err(Error::MapDiscontinuous(source.vertices()[v].id.clone()))
                    }
                    _ => {}
                }
            }
        }
        Ok(m)
    }

    /// Builds a morphism from per-edge pieces `(offset, map)` where each
    /// piece starts at `offset` on its source edge, with `start` measured
    /// for that piece. The source is subdivided at piece boundaries.
    pub fn from_pieces(
        source: &Arc<Curve>,
        target: &Arc<Curve>,
        pieces: Vec<Vec<(Q, EdgeMap)>>,
    ) -> Result<(Morphism, Subdivision)> {
        if pieces.len() != source.edges().len() {
            return Err(Error::LengthMismatch(source.edges().len(), pieces.len()));
        }
        let mut cuts: BTreeMap<usize, BTreeSet<Q>> = BTreeMap::new();
        for (e, ps) in pieces.iter().enumerate() {
            cuts.entry(e).or_default().extend(ps.iter().skip(1).map(|(t, _)| t.clone()));
        }
        let sub = source.subdivide(&cuts);
        let mut maps = Vec::with_capacity(sub.origin.len());
        for (e, start) in &sub.origin {
            let (_, m) = pieces[*e]
                .iter()
                .rev()
                .find(|(t, _)| t <= start)
                .ok_or_else(|| Error::ImageOutOfEdge(source.edge(*e).id.clone()))?;
            maps.push(m.clone());
        }
        let refined = Arc::new(sub.refined.clone());
        Ok((Morphism::new(&refined, target, maps)?, sub))
    }

    pub fn identity(curve: &Arc<Curve>) -> Morphism {
        let maps = (0..curve.edges().len())
            .map(|e| EdgeMap { target_edge: e, start: Q::zero(), slope: 1 })
            .collect();
        Morphism { source: curve.clone(), target: curve.clone(), maps }
    }

    pub fn source(&self) -> &Arc<Curve> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Curve> {
        &self.target
    }

    pub fn maps(&self) -> &[EdgeMap] {
        &self.maps
    }

    pub fn report(&self) -> MorphismReport {
        MorphismReport { is_morphism: true, is_finite: self.is_finite() }
    }

    /// No edge is contracted.
    pub fn is_finite(&self) -> bool {
        self.maps.iter().all(|m| m.slope != 0)
    }

    /// Checks finiteness, naming a contracted edge.
    pub fn require_finite(&self) -> Result<()> {
        match self.maps.iter().position(|m| m.slope == 0) {
            None => Ok(()),
            Some(e) => Err(Error::NotFinite(self.source.edge(e).id.clone())),
        }
    }

    fn target_offset(&self, e: usize, t: &Ext) -> Ext {
        let m = &self.maps[e];
        match t {
            Ext::Fin(t) => Ext::Fin(&m.start + qi(m.slope) * t),
            _ if m.slope == 0 => Ext::Fin(m.start.clone()),
            _ => Ext::PosInf,
        }
    }

    fn image_on(&self, e: usize, t: &Ext) -> Point {
        self.target
            .point(self.maps[e].target_edge, &self.target_offset(e, t))
            .expect("validated image lies on the target edge")
    }

    pub fn image(&self, p: &Point) -> Result<Point> {
        self.source.check_point(p)?;
        let (e, t) = self
            .source
            .positions(p)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Unsupported("morphism from an edgeless curve".into()))?;
        Ok(self.image_on(e, &t))
    }

    /// The target germ of a source half-edge, or `None` if contracted.
    fn germ(&self, h: &HalfEdge) -> Option<Germ> {
        let m = &self.maps[h.edge];
        (m.slope != 0).then_some((m.target_edge, h.forward == (m.slope > 0)))
    }

    /// `deg_h(φ)`.
    pub fn half_edge_degree(&self, h: &HalfEdge) -> i64 {
        self.maps[h.edge].slope.abs()
    }

    /// For each target half-edge at `φ(x)`, the sum of `deg_h` over source
    /// half-edges at `x` mapping onto it.
    pub fn germ_sums(&self, x: &Point) -> Result<Vec<(HalfEdge, i64)>> {
        let y = self.image(x)?;
        let mut sums: Vec<(HalfEdge, i64)> =
            self.target.half_edges(&y).into_iter().map(|h| (h, 0)).collect();
        for h in self.source.half_edges(x) {
            if let Some(g) = self.germ(&h) {
                let slot = sums
                    .iter_mut()
                    .find(|(t, _)| (t.edge, t.forward) == g)
                    .expect("germ of an image half-edge");
                slot.1 += self.half_edge_degree(&h);
            }
        }
        Ok(sums)
    }

    /// `deg_x(φ)`, or an error naming two target half-edges with different
    /// sums.
    pub fn local_degree(&self, x: &Point) -> Result<i64> {
        let sums = self.germ_sums(x)?;
        let Some((first, d)) = sums.first() else { return Ok(0) };
        if let Some((second, d2)) = sums.iter().find(|(_, s)| s != d) {
            let y = self.image(x)?;
            let name = |h: &HalfEdge| {
                let dir = if h.forward { "+" } else { "-" };
                format!("{}{}", dir, self.target.edge(h.edge).id)
            };
            return Err(Error::NotHarmonic {
                point: format!("{} (image {})", self.source.label(x), self.target.label(&y)),
                first: name(first),
                first_sum: *d,
                second: name(second),
                second_sum: *d2,
            });
        }
        Ok(*d)
    }

    /// Points where harmonicity can fail: the source vertices. Interior
    /// points of an edge are harmonic because the map is affine there.
    pub fn checkpoints(&self) -> Vec<Point> {
        (0..self.source.vertices().len()).map(Point::Vertex).collect()
    }

    /// Local degrees at every checkpoint.
    pub fn check_harmonic(&self) -> Result<Vec<(Point, i64)>> {
        self.checkpoints()
            .into_iter()
            .map(|p| {
                let d = self.local_degree(&p)?;
                Ok((p, d))
            })
            .collect()
    }

    /// Offsets on target edge `te` hit by source vertices.
    fn vertex_marks(&self, te: usize) -> BTreeSet<Q> {
        let mut marks = BTreeSet::new();
        for v in 0..self.source.vertices().len() {
            let y = self.image(&Point::Vertex(v)).expect("vertex");
            for (e, off) in self.target.positions(&y) {
                if let (true, Ext::Fin(t)) = (e == te, off) {
                    marks.insert(t);
                }
            }
        }
        marks
    }

    /// A point inside target edge `te` missed by the images of source
    /// vertices.
    fn generic_offset(&self, te: usize, marks: &BTreeSet<Q>) -> Q {
        let mut all: Vec<Q> = vec![Q::zero()];
        all.extend(marks.iter().filter(|t| t.is_positive()).cloned());
        match &self.target.edge(te).length {
            Length::Finite(l) => {
                let next = all.iter().find(|t| t.is_positive()).cloned().unwrap_or_else(|| l.clone());
                next / qi(2)
            }
            Length::Infinite => all.last().expect("nonempty") + qi(1),
        }
    }

    /// Source points over a point `y` interior to target edge `te`, not
    /// the image of a source vertex, with their local degrees.
    fn generic_fiber(&self, te: usize, y: &Q) -> Vec<(Point, i64)> {
        let mut out = Vec::new();
        for (e, m) in self.maps.iter().enumerate() {
            if m.target_edge != te || m.slope == 0 {
                continue;
            }
            let t = (y - &m.start) / qi(m.slope);
            if !t.is_positive() {
                continue;
            }
            if let Length::Finite(l) = &self.source.edge(e).length {
                if &t >= l {
                    continue;
                }
            }
            out.push((Point::Interior { edge: e, offset: t }, m.slope.abs()));
        }
        out
    }

    /// Degree of a harmonic morphism: the fiber sum over a generic point
    /// of each target edge, required to agree across edges.
    pub fn global_degree(&self) -> Result<i64> {
        self.check_harmonic()?;
        let mut degree: Option<i64> = None;
        for te in 0..self.target.edges().len() {
            let marks = self.vertex_marks(te);
            let y = self.generic_offset(te, &marks);
            let d: i64 = self.generic_fiber(te, &y).iter().map(|(_, k)| k).sum();
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::CertificateFailed(format!(
                        "fiber degrees {prev} and {d} differ over target edge `{}`",
                        self.target.edge(te).id
                    )))
                }
                _ => {}
            }
        }
        Ok(degree.unwrap_or(0))
    }

    /// Source points mapping to `y` with their local degrees. Interior
    /// points of contracted edges are omitted; they have degree 0.
    pub fn fiber(&self, y: &Point) -> Result<Vec<(Point, i64)>> {
        self.target.check_point(y)?;
        let mut pts: BTreeSet<Point> = BTreeSet::new();
        for v in 0..self.source.vertices().len() {
            if self.image(&Point::Vertex(v))? == *y {
                pts.insert(Point::Vertex(v));
            }
        }
        for (te, off) in self.target.positions(y) {
            let Ext::Fin(yq) = off else { continue };
            for (e, m) in self.maps.iter().enumerate() {
                if m.target_edge != te || m.slope == 0 {
                    continue;
                }
                let t = (&yq - &m.start) / qi(m.slope);
                if t.is_negative() {
                    continue;
                }
                if let Ok(p) = self.source.point(e, &Ext::Fin(t)) {
                    pts.insert(p);
                }
            }
        }
        pts.into_iter()
            .map(|p| {
                let d = self.local_degree(&p)?;
                Ok((p, d))
            })
            .collect()
    }

    /// `φ^* f′ = f′ ∘ φ`.
    pub fn pull_function(&self, f: &PlFunction) -> Result<PlFunction> {
        if f.curve() != &self.target {
            return Err(Error::CurveMismatch);
        }
        let Some(tf) = f.edge_fns() else {
            return Ok(PlFunction::neg_infinity(&self.source));
        };
        let mut out = Vec::with_capacity(self.maps.len());
        for (e, m) in self.maps.iter().enumerate() {
            let g = &tf[m.target_edge];
            let len = &self.source.edge(e).length;
            if m.slope == 0 {
                out.push(EdgeFn::constant(g.value(&m.start)));
                continue;
            }
            let k = qi(m.slope);
            let mut ts: BTreeSet<Q> = BTreeSet::new();
            ts.insert(Q::zero());
            for knot in g.knots() {
                let t = (knot - &m.start) / &k;
                if t.is_positive() && len.finite().is_none_or(|l| &t < l) {
                    ts.insert(t);
                }
            }
            if let Length::Finite(l) = len {
                ts.insert(l.clone());
            }
            let samples: Vec<(Q, Q)> = ts
                .into_iter()
                .map(|t| {
                    let v = g.value(&(&m.start + &k * &t));
                    (t, v)
                })
                .collect();
            let tail = len.is_infinite().then(|| m.slope * g.tail_slope());
            out.push(EdgeFn::from_samples(&samples, tail).expect("composition keeps integral slopes"));
        }
        PlFunction::from_edges(&self.source, out)
    }

    /// `(φ_* f)(y) = Σ_{φ(x)=y} deg_x(φ) f(x)`.
    pub fn push_function(&self, f: &PlFunction) -> Result<PlFunction> {
        if f.curve() != &self.source {
            return Err(Error::CurveMismatch);
        }
        self.check_harmonic()?;
        if f.is_neg_infinity() {
            return Ok(PlFunction::neg_infinity(&self.target));
        }
        let at = |te: usize, y: &Q| -> Q {
            self.generic_fiber(te, y)
                .into_iter()
                .map(|(p, k)| qi(k) * f.value(&p))
                .sum()
        };
        let fns = f.edge_fns().expect("finite");
        let mut out = Vec::with_capacity(self.target.edges().len());
        for te in 0..self.target.edges().len() {
            let tlen = &self.target.edge(te).length;
            let mut marks = self.vertex_marks(te);
            for (e, m) in self.maps.iter().enumerate() {
                if m.target_edge != te || m.slope == 0 {
                    continue;
                }
                for knot in fns[e].knots() {
                    marks.insert(&m.start + qi(m.slope) * knot);
                }
            }
            marks.insert(Q::zero());
            if let Length::Finite(l) = tlen {
                marks.insert(l.clone());
            }
            let marks: Vec<Q> = marks
                .into_iter()
                .filter(|t| !t.is_negative() && tlen.finite().is_none_or(|l| t <= l))
                .collect();
            // Affine on each interval: read the line off two interior points.
            let mut lines: Vec<(Q, Q)> = Vec::new();
            let mut bounds: Vec<(Q, Q)> = marks.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
            if tlen.is_infinite() {
                let last = marks.last().expect("nonempty").clone();
                bounds.push((last.clone(), last + qi(3)));
            }
            for (a, b) in &bounds {
                let third = (b - a) / qi(3);
                let (y1, y2) = (a + &third, a + &third + &third);
                let (v1, v2) = (at(te, &y1), at(te, &y2));
                let slope = (&v2 - &v1) / &third;
                lines.push((&v1 - &slope * &third, slope));
            }
            let mut samples: Vec<(Q, Q)> = Vec::new();
            for (i, (a, b)) in bounds.iter().enumerate() {
                let (v0, s) = &lines[i];
                if i == 0 {
                    samples.push((a.clone(), v0.clone()));
                } else {
                    let (pv, ps) = &lines[i - 1];
                    let (pa, _) = &bounds[i - 1];
                    let left = pv + ps * (a - pa);
                    if &left != v0 {
                        return Err(Error::Discontinuous(self.target.edge(te).id.clone()));
                    }
                }
                if i + 1 < bounds.len() || !tlen.is_infinite() {
                    samples.push((b.clone(), v0 + s * (b - a)));
                }
            }
            let tail = match tlen {
                Length::Infinite => {
                    let s = &lines.last().expect("nonempty").1;
                    Some(as_integer(s).ok_or_else(|| Error::NonIntegralSlope(self.target.edge(te).id.clone()))?)
                }
                Length::Finite(_) => None,
            };
            out.push(EdgeFn::from_samples(&samples, tail).map_err(|reason| Error::MalformedFunction {
                edge: self.target.edge(te).id.clone(),
                reason,
            })?);
        }
        PlFunction::from_edges(&self.target, out)
    }

    /// `φ_* D = Σ D(x) φ(x)`.
    pub fn push_divisor(&self, d: &Divisor) -> Result<Divisor> {
        let mut out = Divisor::zero();
        for (p, k) in d.iter() {
            out.add_at(self.image(p)?, k);
        }
        assert_eq!(out.degree(), d.degree(), "push-forward preserves degree");
        Ok(out)
    }

    /// `φ^* D′ = Σ_x deg_x(φ) D′(φ(x)) x`.
    pub fn pull_divisor(&self, d: &Divisor) -> Result<Divisor> {
        let degree = self.global_degree()?;
        let mut out = Divisor::zero();
        for (y, k) in d.iter() {
            for (x, m) in self.fiber(y)? {
                out.add_at(x, m * k);
            }
        }
        assert_eq!(out.degree(), degree * d.degree(), "pull-back multiplies degree");
        Ok(out)
    }

    /// `ψ ∘ self`, defined when every edge image avoids vertices of the
    /// middle curve in its interior (true when the middle curve is the
    /// target of `self` and edges map into single edges).
    pub fn then(&self, psi: &Morphism) -> Result<Morphism> {
        if psi.source != self.target {
            return Err(Error::CurveMismatch);
        }
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let n = &psi.maps[m.target_edge];
                EdgeMap { target_edge: n.target_edge, start: &n.start + qi(n.slope) * &m.start, slope: n.slope * m.slope }
            })
            .collect();
        Morphism::new(&self.source, &psi.target, maps)
    }
}

/// A tropical modification: trees grafted onto finite points.
#[derive(Clone, Debug)]
pub struct Modification {
    pub original: Arc<Curve>,
    pub modified: Arc<Curve>,
    pub grafted: Grafted,
    pub specs: Vec<GraftSpec>,
}

impl Modification {
    pub fn new(original: &Arc<Curve>, specs: Vec<GraftSpec>) -> Result<Self> {
        let grafted = original.graft(&specs)?;
        Ok(Modification {
            original: original.clone(),
            modified: Arc::new(grafted.curve.clone()),
            grafted,
            specs,
        })
    }

    /// The retraction contracting every grafted tree to its host point.
    pub fn retraction(&self) -> Morphism {
        let maps = self
            .grafted
            .origin
            .iter()
            .map(|o| match o {
                EdgeOrigin::Host { edge, start } => EdgeMap { target_edge: *edge, start: start.clone(), slope: 1 },
                EdgeOrigin::Graft { spec, .. } => {
                    let (e, off) = self.original.positions(&self.specs[*spec].host)[0].clone();
                    EdgeMap { target_edge: e, start: off.finite().cloned().expect("finite host"), slope: 0 }
                }
            })
            .collect();
        Morphism::new(&self.modified, &self.original, maps).expect("retraction is continuous")
    }

    /// A point of the original curve as a point of the modified one.
    pub fn lift(&self, p: &Point) -> Point {
        self.grafted.host_point(p)
    }
}

/// Checks that `pi` behaves like a retraction: harmonic of degree one and
/// an isomorphism away from contracted edges.
pub fn check_retraction(pi: &Morphism) -> Result<()> {
    let d = pi.global_degree()?;
    if d != 1 {
        return Err(Error::NotRetraction(format!("degree {d}")));
    }
    if let Some(e) = pi.maps().iter().position(|m| m.slope.abs() > 1) {
        return Err(Error::NotRetraction(format!("edge `{}` is stretched", pi.source().edge(e).id)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn circ4() -> Arc<Curve> {
        Arc::new(
            Curve::builder()
                .vertex("v0")
                .vertex("v2")
                .edge("e1", "v0", "v2", qi(2))
                .edge("e2", "v2", "v0", qi(2))
                .build()
                .unwrap(),
        )
    }

    fn seg2() -> Arc<Curve> {
        Arc::new(Curve::builder().vertex("A").vertex("B").edge("e1", "A", "B", qi(2)).build().unwrap())
    }

    fn fold() -> Morphism {
        Morphism::new(
            &circ4(),
            &seg2(),
            vec![
                EdgeMap { target_edge: 0, start: qi(0), slope: 1 },
                EdgeMap { target_edge: 0, start: qi(2), slope: -1 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn fold_degrees() {
        let m = fold();
        assert!(m.report().is_finite);
        assert_eq!(m.local_degree(&Point::Vertex(0)).unwrap(), 2);
        assert_eq!(m.local_degree(&Point::Interior { edge: 1, offset: q(1, 2) }).unwrap(), 1);
        assert_eq!(m.global_degree().unwrap(), 2);
        assert_eq!(Morphism::identity(&seg2()).global_degree().unwrap(), 1);
    }

    #[test]
    fn fold_divisors() {
        let m = fold();
        let t1 = Point::Interior { edge: 0, offset: qi(1) };
        let pulled = m.pull_divisor(&Divisor::point(t1.clone())).unwrap();
        assert_eq!(
            pulled,
            Divisor::from_terms([(Point::Interior { edge: 0, offset: qi(1) }, 1), (Point::Interior { edge: 1, offset: qi(1) }, 1)])
        );
        assert_eq!(m.pull_divisor(&Divisor::point(Point::Vertex(0))).unwrap(), Divisor::from_terms([(Point::Vertex(0), 2)]));
        let x3 = Point::Interior { edge: 1, offset: qi(1) };
        assert_eq!(m.push_divisor(&Divisor::point(x3)).unwrap(), Divisor::point(t1));
    }

    #[test]
    fn fold_functions() {
        let m = fold();
        let s = seg2();
        let c = PlFunction::constant(m.source(), qi(3));
        assert_eq!(m.push_function(&c).unwrap(), PlFunction::constant(&s, qi(6)));
        let f1 = PlFunction::from_runs(&s, vec![(qi(0), vec![(-1, Length::Finite(qi(1))), (0, Length::Finite(qi(1)))])]).unwrap();
        let pulled = m.pull_function(&f1).unwrap();
        assert_eq!(pulled.value(&Point::Interior { edge: 1, offset: q(1, 2) }), q(-1, 1));
        assert_eq!(pulled.order_at(&Point::Vertex(0)).unwrap(), -2);
        let pushed = m.push_function(&pulled).unwrap();
        assert_eq!(pushed, f1.scale(2).unwrap());
    }

    #[test]
    fn contracted_edge_is_not_finite() {
        let s = seg2();
        let m = Morphism::new(&s, &s, vec![EdgeMap { target_edge: 0, start: qi(1), slope: 0 }]).unwrap();
        assert!(!m.is_finite());
        assert!(matches!(m.require_finite(), Err(Error::NotFinite(_))));
    }

    #[test]
    fn discontinuity_detected() {
        let r = Morphism::new(
            &circ4(),
            &seg2(),
            vec![
                EdgeMap { target_edge: 0, start: qi(0), slope: 1 },
                EdgeMap { target_edge: 0, start: qi(0), slope: 1 },
            ],
        );
        assert!(matches!(r, Err(Error::MapDiscontinuous(_))));
    }

    #[test]
    fn retraction_of_grafted_tail() {
        let c = circ4();
        let tail = Curve::builder().vertex("r").vertex("s").edge("t", "r", "s", qi(1)).build().unwrap();
        let spec = GraftSpec { host: Point::Interior { edge: 0, offset: qi(1) }, tree: tail, attach: Point::Vertex(0) };
        let md = Modification::new(&c, vec![spec]).unwrap();
        let pi = md.retraction();
        assert!(!pi.is_finite());
        assert_eq!(pi.global_degree().unwrap(), 1);
        check_retraction(&pi).unwrap();
        assert_eq!(md.modified.b1(), c.b1());
        let f = PlFunction::distance_from(&c, &Point::Vertex(0)).unwrap();
        let back = pi.push_function(&pi.pull_function(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        let ray = Arc::new(Curve::builder().vertex("a").vertex("w").ray("r", "a", "w").build().unwrap());
        let g = PlFunction::from_runs(&ray, vec![(qi(0), vec![(1, Length::Finite(qi(1))), (-2, Length::Infinite)])]).unwrap();
        let id = Morphism::identity(&ray);
        assert_eq!(id.push_function(&g).unwrap(), g);
        assert_eq!(id.pull_function(&g).unwrap(), g);
        let trivial = Modification::new(&c, vec![]).unwrap();
        assert_eq!(trivial.retraction(), Morphism::identity(&c));
    }

    #[test]
    fn non_harmonic_point_named() {
        // Segment folded onto half of a tripod: the centre sees one leg twice.
        let star = Arc::new(
            Curve::builder()
                .vertex("o")
                .vertex("a")
                .vertex("b")
                .vertex("c")
                .edge("l1", "o", "a", qi(1))
                .edge("l2", "o", "b", qi(1))
                .edge("l3", "o", "c", qi(1))
                .build()
                .unwrap(),
        );
        let seg = Arc::new(Curve::builder().vertex("x").vertex("y").edge("s", "x", "y", qi(2)).build().unwrap());
        let (m, _) = Morphism::from_pieces(
            &seg,
            &star,
            vec![vec![
                (qi(0), EdgeMap { target_edge: 0, start: qi(1), slope: -1 }),
                (qi(1), EdgeMap { target_edge: 1, start: qi(0), slope: 1 }),
            ]],
        )
        .unwrap();
        let mid = m.source().vertex_point("s.v1").unwrap();
        assert!(matches!(m.local_degree(&mid), Err(Error::NotHarmonic { .. })));
        assert!(m.global_degree().is_err());
    }
}
