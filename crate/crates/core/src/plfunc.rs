//! Rational functions on tropical curves: continuous, piecewise integral
//! affine, with finitely many pieces. Values ±∞ occur only at points at
//! infinity, except for the distinguished constant −∞.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::curve::{Curve, HalfEdge, Length, Point, Subdivision};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::rational::{as_integer, qi, Ext, Q};
use crate::trop_linalg::TropScalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub start: Q,
    pub value: Q,
    pub slope: i64,
}

impl Piece {
    fn at(&self, t: &Q) -> Q {
        &self.value + qi(self.slope) * (t - &self.start)
    }
}

/// The restriction of a function to one edge. Pieces start at increasing
/// offsets, the first at 0, and adjacent pieces have different slopes. The
/// last piece runs to the end of the edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeFn {
    pieces: Vec<Piece>,
}

impl EdgeFn {
    pub fn constant(c: Q) -> Self {
        EdgeFn { pieces: vec![Piece { start: Q::zero(), value: c, slope: 0 }] }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Builds from samples `(offset, value)` sorted by offset, starting at
    /// 0. On a bounded edge the last sample must sit at the far end; on an
    /// unbounded edge `tail` gives the slope after the last sample.
    pub fn from_samples(samples: &[(Q, Q)], tail: Option<i64>) -> std::result::Result<Self, String> {
        let Some((t0, v0)) = samples.first() else {
            return Err("no samples".into());
        };
        if !t0.is_zero() {
            return Err("first sample must be at offset 0".into());
        }
        let mut pieces: Vec<Piece> = Vec::new();
        for w in samples.windows(2) {
            let (ta, va) = &w[0];
            let (tb, vb) = &w[1];
            if tb <= ta {
                return Err("sample offsets must increase".into());
            }
            let slope = as_integer(&((vb - va) / (tb - ta))).ok_or("non-integral slope")?;
            match pieces.last() {
                Some(p) if p.slope == slope => {}
                _ => pieces.push(Piece { start: ta.clone(), value: va.clone(), slope }),
            }
        }
        if let Some(s) = tail {
            let (tl, vl) = samples.last().expect("nonempty");
            match pieces.last() {
                Some(p) if p.slope == s => {}
                _ => pieces.push(Piece { start: tl.clone(), value: vl.clone(), slope: s }),
            }
        }
        if pieces.is_empty() {
            pieces.push(Piece { start: t0.clone(), value: v0.clone(), slope: 0 });
        }
        Ok(EdgeFn { pieces })
    }

    fn index_right(&self, t: &Q) -> usize {
        self.pieces.partition_point(|p| &p.start <= t).saturating_sub(1)
    }

    pub fn value(&self, t: &Q) -> Q {
        self.pieces[self.index_right(t)].at(t)
    }

    /// Value at an offset, with `+∞` meaning the limit along an unbounded edge.
    pub fn value_ext(&self, t: &Ext) -> Ext {
        match t {
            Ext::Fin(t) => Ext::Fin(self.value(t)),
            Ext::PosInf => {
                let last = self.pieces.last().expect("nonempty");
                match last.slope.signum() {
                    1 => Ext::PosInf,
                    -1 => Ext::NegInf,
                    _ => Ext::Fin(last.value.clone()),
                }
            }
            Ext::NegInf => panic!("negative offset"),
        }
    }

    /// Slope just after offset `t`.
    pub fn slope_right(&self, t: &Q) -> i64 {
        self.pieces[self.index_right(t)].slope
    }

    /// Slope just before offset `t` (`+∞` gives the final slope).
    pub fn slope_left(&self, t: &Ext) -> i64 {
        match t {
            Ext::Fin(t) => {
                let k = self.pieces.partition_point(|p| &p.start < t).saturating_sub(1);
                self.pieces[k].slope
            }
            _ => self.pieces.last().expect("nonempty").slope,
        }
    }

    pub fn tail_slope(&self) -> i64 {
        self.pieces.last().expect("nonempty").slope
    }

    /// Interior breakpoints.
    pub fn knots(&self) -> impl Iterator<Item = &Q> {
        self.pieces.iter().skip(1).map(|p| &p.start)
    }

    fn sample_points(&self, other: &EdgeFn, len: &Length) -> Vec<Q> {
        let mut pts: BTreeSet<Q> = BTreeSet::new();
        pts.insert(Q::zero());
        pts.extend(self.knots().cloned());
        pts.extend(other.knots().cloned());
        if let Length::Finite(l) = len {
            pts.insert(l.clone());
        }
        pts.into_iter().collect()
    }

    fn map_values(&self, f: impl Fn(&Q) -> Q, slope: impl Fn(i64) -> i64) -> EdgeFn {
        EdgeFn {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { start: p.start.clone(), value: f(&p.value), slope: slope(p.slope) })
                .collect(),
        }
    }

    fn sum(&self, other: &EdgeFn, len: &Length) -> EdgeFn {
        let pts = self.sample_points(other, len);
        let samples: Vec<(Q, Q)> = pts.iter().map(|t| (t.clone(), self.value(t) + other.value(t))).collect();
        let tail = len.is_infinite().then(|| self.tail_slope() + other.tail_slope());
        EdgeFn::from_samples(&samples, tail).expect("sum of integral functions is integral")
    }

    fn max(&self, other: &EdgeFn, len: &Length) -> EdgeFn {
        let base = self.sample_points(other, len);
        let diff = |t: &Q| self.value(t) - other.value(t);
        let mut pts: BTreeSet<Q> = base.iter().cloned().collect();
        for w in base.windows(2) {
            let (d0, d1) = (diff(&w[0]), diff(&w[1]));
            if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
                let t = &w[0] - &d0 * (&w[1] - &w[0]) / (&d1 - &d0);
                pts.insert(t);
            }
        }
        let mut tail = None;
        if len.is_infinite() {
            let c = base.last().expect("nonempty").clone();
            let d = diff(&c);
            let ds = self.tail_slope() - other.tail_slope();
            if ds != 0 && d.signum() == -qi(ds.signum()) && !d.is_zero() {
                pts.insert(&c - &d / qi(ds));
            }
            let c = pts.iter().next_back().expect("nonempty").clone();
            let d = diff(&c);
            tail = Some(if d.is_positive() {
                self.tail_slope()
            } else if d.is_negative() {
                other.tail_slope()
            } else {
                self.tail_slope().max(other.tail_slope())
            });
        }
        let samples: Vec<(Q, Q)> = pts
            .into_iter()
            .map(|t| {
                let v = std::cmp::max(self.value(&t), other.value(&t));
                (t, v)
            })
            .collect();
        EdgeFn::from_samples(&samples, tail).expect("max of integral functions is integral")
    }
}

/// A closed interval on one edge, part of a non-constant locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeInterval {
    pub edge: usize,
    pub start: Q,
    pub end: Ext,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFunction {
    curve: Arc<Curve>,
    /// `None` is the constant −∞.
    edges: Option<Vec<EdgeFn>>,
}

impl PlFunction {
    pub fn constant(curve: &Arc<Curve>, c: Q) -> Self {
        let edges = curve.edges().iter().map(|_| EdgeFn::constant(c.clone())).collect();
        PlFunction { curve: curve.clone(), edges: Some(edges) }
    }

    pub fn zero(curve: &Arc<Curve>) -> Self {
        Self::constant(curve, Q::zero())
    }

    pub fn neg_infinity(curve: &Arc<Curve>) -> Self {
        PlFunction { curve: curve.clone(), edges: None }
    }

    /// Per-edge description: value at the edge start and `(slope, length)`
    /// runs whose lengths add up to the edge length (the last run may be
    /// infinite on an unbounded edge).
    pub fn from_runs(curve: &Arc<Curve>, runs: Vec<(Q, Vec<(i64, Length)>)>) -> Result<Self> {
        if runs.len() != curve.edges().len() {
            return Err(Error::LengthMismatch(curve.edges().len(), runs.len()));
        }
        let mut edges = Vec::with_capacity(runs.len());
        for (e, (start, list)) in runs.into_iter().enumerate() {
            let edge = curve.edge(e);
            let bad = |reason: &str| Error::MalformedFunction { edge: edge.id.clone(), reason: reason.into() };
            let mut samples = vec![(Q::zero(), start)];
            let mut tail = None;
            let n = list.len();
            for (k, (slope, len)) in list.into_iter().enumerate() {
                let (t, v) = samples.last().cloned().expect("nonempty");
                match len {
                    Length::Finite(l) => {
                        if !l.is_positive() {
                            return Err(bad("nonpositive piece length"));
                        }
                        samples.push((&t + &l, v + qi(slope) * l));
                    }
                    Length::Infinite => {
                        if k + 1 != n || !edge.length.is_infinite() {
                            return Err(bad("infinite piece must be last, on an unbounded edge"));
                        }
                        tail = Some(slope);
                    }
                }
            }
            let end = &samples.last().expect("nonempty").0;
            match &edge.length {
                Length::Finite(l) if end != l => return Err(bad("piece lengths do not add up to the edge length")),
                Length::Infinite if tail.is_none() => return Err(bad("unbounded edge needs a final infinite piece")),
                _ => {}
            }
            edges.push(EdgeFn::from_samples(&samples, tail).map_err(|r| bad(&r))?);
        }
        Self::from_edges(curve, edges)
    }

    /// Builds from per-edge functions, checking continuity at vertices.
    pub fn from_edges(curve: &Arc<Curve>, edges: Vec<EdgeFn>) -> Result<Self> {
        if edges.len() != curve.edges().len() {
            return Err(Error::LengthMismatch(curve.edges().len(), edges.len()));
        }
        for (v, vertex) in curve.vertices().iter().enumerate() {
            let mut value: Option<Ext> = None;
            for &(e, end) in curve.incidence(v) {
                let here = edges[e].value_ext(&curve.end_offset(e, end));
                match &value {
                    None => value = Some(here),
                    Some(prev) if *prev != here => return Err(Error::Discontinuous(vertex.id.clone())),
                    _ => {}
                }
            }
        }
        Ok(PlFunction { curve: curve.clone(), edges: Some(edges) })
    }

    /// Builds from per-edge samples; see [`EdgeFn::from_samples`].
    pub fn from_samples(curve: &Arc<Curve>, samples: Vec<(Vec<(Q, Q)>, Option<i64>)>) -> Result<Self> {
        let edges = samples
            .into_iter()
            .enumerate()
            .map(|(e, (s, tail))| {
                EdgeFn::from_samples(&s, tail).map_err(|reason| Error::MalformedFunction {
                    edge: curve.edge(e).id.clone(),
                    reason,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(curve, edges)
    }

    /// `t ↦ d(p, t)` on a curve; `p` must be a finite point.
    pub fn distance_from(curve: &Arc<Curve>, p: &Point) -> Result<Self> {
        curve.check_point(p)?;
        if curve.is_at_infinity(p) {
            return Err(Error::Unsupported("distance from a point at infinity".into()));
        }
        let dist = curve.vertex_distances(p);
        let mut out = Vec::with_capacity(curve.edges().len());
        for (e, edge) in curve.edges().iter().enumerate() {
            let du = dist[edge.from].finite().cloned().expect("finite start");
            let mut lines: Vec<(Q, i64)> = vec![(du.clone(), 1)];
            if let (Length::Finite(l), Some(dv)) = (&edge.length, dist[edge.to].finite()) {
                lines.push((dv + l, -1));
            }
            if let Point::Interior { edge: pe, offset } = p {
                if *pe == e {
                    lines.push((offset.clone(), -1));
                    lines.push((-offset, 1));
                }
            }
            let mut pts: BTreeSet<Q> = BTreeSet::new();
            pts.insert(Q::zero());
            if let Length::Finite(l) = &edge.length {
                pts.insert(l.clone());
            }
            for (i, (a, s)) in lines.iter().enumerate() {
                for (b, r) in &lines[i + 1..] {
                    if s != r {
                        let t = (b - a) / qi(s - r);
                        if t.is_positive() && edge.length.finite().is_none_or(|l| &t < l) {
                            pts.insert(t);
                        }
                    }
                }
            }
            let mut samples = Vec::with_capacity(pts.len());
            for t in pts {
                let q = curve.point(e, &Ext::Fin(t.clone()))?;
                let d = curve.distance_with(&dist, p, &q).finite().cloned().expect("finite");
                samples.push((t, d));
            }
            let tail = edge.length.is_infinite().then_some(1);
            out.push(EdgeFn::from_samples(&samples, tail).expect("distance has unit slopes"));
        }
        Self::from_edges(curve, out)
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn is_neg_infinity(&self) -> bool {
        self.edges.is_none()
    }

    pub fn edge_fns(&self) -> Option<&[EdgeFn]> {
        self.edges.as_deref()
    }

    fn finite_edges(&self) -> Result<&[EdgeFn]> {
        self.edges.as_deref().ok_or(Error::NegInfFunction)
    }

    fn same_curve(&self, other: &PlFunction) -> Result<()> {
        if Arc::ptr_eq(&self.curve, &other.curve) || self.curve == other.curve {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    pub fn evaluate(&self, p: &Point) -> Result<Ext> {
        self.curve.check_point(p)?;
        let Some(edges) = &self.edges else {
            return Ok(Ext::NegInf);
        };
        let (e, off) = self.curve.positions(p).into_iter().next().ok_or_else(|| {
            Error::Unsupported("evaluating on an edgeless curve".into())
        })?;
        Ok(edges[e].value_ext(&off))
    }

    /// Value at a finite point; panics on −∞ or infinite values.
    pub fn value(&self, p: &Point) -> Q {
        match self.evaluate(p).expect("point on curve") {
            Ext::Fin(v) => v,
            other => panic!("expected a finite value, found {other}"),
        }
    }

    /// Outgoing slope along a half-edge at `p`.
    pub fn outgoing_slope(&self, p: &Point, h: &HalfEdge) -> Result<i64> {
        let edges = self.finite_edges()?;
        let off = self
            .curve
            .offset_on(p, h.edge, h.forward)
            .ok_or_else(|| Error::PointNotOnCurve(format!("{p:?}")))?;
        let f = &edges[h.edge];
        Ok(if h.forward {
            f.slope_right(off.finite().expect("forward from a finite offset"))
        } else {
            -f.slope_left(&off)
        })
    }

    /// Sum of outgoing slopes. At a point at infinity this is minus the
    /// final slope of the incoming edge, which keeps `deg div(f) = 0`.
    pub fn order_at(&self, p: &Point) -> Result<i64> {
        self.finite_edges()?;
        self.curve.check_point(p)?;
        self.curve
            .half_edges(p)
            .iter()
            .map(|h| self.outgoing_slope(p, h))
            .sum()
    }

    /// Points where the order may be nonzero: vertices and breakpoints.
    pub fn special_points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = (0..self.curve.vertices().len()).map(Point::Vertex).collect();
        if let Some(edges) = &self.edges {
            for (e, f) in edges.iter().enumerate() {
                for t in f.knots() {
                    pts.push(self.curve.point(e, &Ext::Fin(t.clone())).expect("knot inside edge"));
                }
            }
        }
        pts
    }

    pub fn principal_divisor(&self) -> Result<Divisor> {
        self.finite_edges()?;
        let mut d = Divisor::zero();
        for p in self.special_points() {
            let k = self.order_at(&p)?;
            d.add_at(p, k);
        }
        assert_eq!(d.degree(), 0, "principal divisors have degree zero");
        Ok(d)
    }

    fn zip(&self, other: &PlFunction, op: impl Fn(&EdgeFn, &EdgeFn, &Length) -> EdgeFn) -> Result<PlFunction> {
        self.same_curve(other)?;
        let (Some(a), Some(b)) = (&self.edges, &other.edges) else {
            return Ok(PlFunction::neg_infinity(&self.curve));
        };
        let edges = a
            .iter()
            .zip(b)
            .zip(self.curve.edges())
            .map(|((f, g), e)| op(f, g, &e.length))
            .collect();
        Ok(PlFunction { curve: self.curve.clone(), edges: Some(edges) })
    }

    /// Ordinary pointwise sum; −∞ is absorbing.
    pub fn add(&self, other: &PlFunction) -> Result<PlFunction> {
        self.zip(other, |f, g, l| f.sum(g, l))
    }

    /// Pointwise max (tropical sum).
    pub fn max(&self, other: &PlFunction) -> Result<PlFunction> {
        self.same_curve(other)?;
        match (&self.edges, &other.edges) {
            (None, _) => Ok(other.clone()),
            (_, None) => Ok(self.clone()),
            _ => self.zip(other, |f, g, l| f.max(g, l)),
        }
    }

    pub fn min(&self, other: &PlFunction) -> Result<PlFunction> {
        self.negate()?.max(&other.negate()?)?.negate()
    }

    /// `-f`; not defined for the constant −∞.
    pub fn negate(&self) -> Result<PlFunction> {
        let edges = self.finite_edges()?;
        Ok(PlFunction {
            curve: self.curve.clone(),
            edges: Some(edges.iter().map(|f| f.map_values(|v| -v, |s| -s)).collect()),
        })
    }

    pub fn scale(&self, k: i64) -> Result<PlFunction> {
        let edges = self.finite_edges()?;
        if k == 0 {
            return Ok(PlFunction::zero(&self.curve));
        }
        let kq = qi(k);
        Ok(PlFunction {
            curve: self.curve.clone(),
            edges: Some(edges.iter().map(|f| f.map_values(|v| v * &kq, |s| s * k)).collect()),
        })
    }

    /// `f / k`, provided every slope stays integral.
    pub fn divide(&self, k: i64) -> Result<PlFunction> {
        let edges = self.finite_edges()?;
        assert!(k != 0, "division by zero");
        for (e, f) in edges.iter().enumerate() {
            if f.pieces().iter().any(|p| p.slope % k != 0) {
                return Err(Error::NonIntegralSlope(self.curve.edge(e).id.clone()));
            }
        }
        let kq = qi(k);
        Ok(PlFunction {
            curve: self.curve.clone(),
            edges: Some(edges.iter().map(|f| f.map_values(|v| v / &kq, |s| s / k)).collect()),
        })
    }

    /// Tropical scalar multiplication `c ⊙ f`, i.e. `f + c`.
    pub fn shift(&self, c: &Q) -> PlFunction {
        PlFunction {
            curve: self.curve.clone(),
            edges: self
                .edges
                .as_ref()
                .map(|es| es.iter().map(|f| f.map_values(|v| v + c, |s| s)).collect()),
        }
    }

    /// `max{f, a}`, with `a = +∞` giving the constant 0.
    pub fn truncate_below(&self, a: &Ext) -> PlFunction {
        match a {
            Ext::NegInf => self.clone(),
            Ext::PosInf => PlFunction::zero(&self.curve),
            Ext::Fin(c) => self
                .max(&PlFunction::constant(&self.curve, c.clone()))
                .expect("same curve"),
        }
    }

    /// Closure of the union of pieces with nonzero slope, merged per edge.
    pub fn nonconstant_locus(&self) -> Result<Vec<EdgeInterval>> {
        let edges = self.finite_edges()?;
        let mut out = Vec::new();
        for (e, f) in edges.iter().enumerate() {
            let len = self.curve.edge(e).length.as_ext();
            let ps = f.pieces();
            let mut current: Option<EdgeInterval> = None;
            for (k, p) in ps.iter().enumerate() {
                let end = ps.get(k + 1).map_or(len.clone(), |n| Ext::Fin(n.start.clone()));
                if p.slope != 0 {
                    match &mut current {
                        Some(iv) => iv.end = end,
                        None => current = Some(EdgeInterval { edge: e, start: p.start.clone(), end }),
                    }
                } else if let Some(iv) = current.take() {
                    out.push(iv);
                }
            }
            out.extend(current);
        }
        Ok(out)
    }

    pub fn in_nonconstant_locus(&self, p: &Point) -> Result<bool> {
        let locus = self.nonconstant_locus()?;
        Ok(self.curve.positions(p).iter().any(|(e, off)| {
            locus
                .iter()
                .any(|iv| iv.edge == *e && Ext::Fin(iv.start.clone()) <= *off && *off <= iv.end)
        }))
    }

    /// Infimum over the curve, including limits at infinity.
    pub fn infimum(&self) -> Ext {
        self.extreme(false)
    }

    /// Supremum over the curve, including limits at infinity.
    pub fn supremum(&self) -> Ext {
        self.extreme(true)
    }

    fn extreme(&self, upper: bool) -> Ext {
        let Some(edges) = &self.edges else {
            return Ext::NegInf;
        };
        let mut best: Option<Ext> = None;
        for (e, f) in edges.iter().enumerate() {
            let len = &self.curve.edge(e).length;
            let mut cands: Vec<Ext> = f.pieces().iter().map(|p| Ext::Fin(p.value.clone())).collect();
            cands.push(f.value_ext(&len.as_ext()));
            for c in cands {
                best = Some(match best {
                    None => c,
                    Some(b) if upper => std::cmp::max(b, c),
                    Some(b) => std::cmp::min(b, c),
                });
            }
        }
        best.unwrap_or(Ext::zero())
    }

    /// Maximum over the finite points: the finite supremum when it is
    /// attained, otherwise `None`.
    pub fn max_value(&self) -> Option<Q> {
        self.supremum().finite().cloned()
    }

    /// The same function on a subdivided curve.
    pub fn refine(&self, sub: &Subdivision) -> PlFunction {
        let curve = Arc::new(sub.refined.clone());
        self.refine_onto(&curve, sub)
    }

    pub(crate) fn refine_onto(&self, curve: &Arc<Curve>, sub: &Subdivision) -> PlFunction {
        let Some(edges) = &self.edges else {
            return PlFunction::neg_infinity(curve);
        };
        let fns = sub
            .origin
            .iter()
            .enumerate()
            .map(|(ne, (e, start))| {
                let f = &edges[*e];
                let len = &curve.edge(ne).length;
                let mut samples = vec![(Q::zero(), f.value(start))];
                for t in f.knots() {
                    if t > start && len.finite().is_none_or(|l| *t < start + l) {
                        samples.push((t - start, f.value(t)));
                    }
                }
                let tail = match len {
                    Length::Finite(l) => {
                        samples.push((l.clone(), f.value(&(start + l))));
                        None
                    }
                    Length::Infinite => Some(f.tail_slope()),
                };
                EdgeFn::from_samples(&samples, tail).expect("restriction is integral")
            })
            .collect();
        PlFunction { curve: curve.clone(), edges: Some(fns) }
    }

    /// Transfers a function on a subdivided curve back to the original.
    pub fn coarsen(&self, original: &Arc<Curve>, sub: &Subdivision) -> PlFunction {
        let Some(edges) = &self.edges else {
            return PlFunction::neg_infinity(original);
        };
        let fns = (0..original.edges().len())
            .map(|e| {
                let mut samples = Vec::new();
                let mut tail = None;
                for (ne, start) in sub.pieces(e) {
                    let f = &edges[*ne];
                    for p in f.pieces() {
                        samples.push((start + &p.start, p.value.clone()));
                    }
                    match &self.curve.edge(*ne).length {
                        Length::Finite(l) => samples.push((start + l, f.value(l))),
                        Length::Infinite => tail = Some(f.tail_slope()),
                    }
                }
                samples.dedup_by(|a, b| a.0 == b.0);
                EdgeFn::from_samples(&samples, tail).expect("concatenation is integral")
            })
            .collect();
        PlFunction { curve: original.clone(), edges: Some(fns) }
    }
}

/// `⊕_i (a_i ⊙ f_i)`.
pub fn trop_combine(coeffs: &[TropScalar], fns: &[PlFunction]) -> Result<PlFunction> {
    if coeffs.len() != fns.len() {
        return Err(Error::LengthMismatch(coeffs.len(), fns.len()));
    }
    let first = fns.first().ok_or(Error::AllNegInf)?;
    let mut acc = PlFunction::neg_infinity(first.curve());
    let mut any = false;
    for (a, f) in coeffs.iter().zip(fns) {
        first.same_curve(f)?;
        if let Some(c) = a.value() {
            any = true;
            acc = acc.max(&f.shift(c))?;
        }
    }
    if !any {
        return Err(Error::AllNegInf);
    }
    Ok(acc)
}
