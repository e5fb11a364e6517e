//! Tropical curves: metric graphs with rational edge lengths and optional
//! unbounded edges ending at points at infinity.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Ext, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(Q),
    Infinite,
}

impl Length {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Length::Finite(l) => Some(l),
            Length::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Length::Infinite)
    }

    pub fn as_ext(&self) -> Ext {
        match self {
            Length::Finite(l) => Ext::Fin(l.clone()),
            Length::Infinite => Ext::PosInf,
        }
    }
}

impl From<Q> for Length {
    fn from(v: Q) -> Self {
        Length::Finite(v)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(l) => write!(f, "{}", fmt_q(l)),
            Length::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub at_infinity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub from: usize,
    pub to: usize,
    pub length: Length,
}

/// A point of a curve. Edge offsets `0` and `length` are always stored as
/// the corresponding vertex, so equal points compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Vertex(usize),
    Interior { edge: usize, offset: Q },
}

/// A direction leaving a point along an edge. `forward` means towards
/// increasing edge offset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfEdge {
    pub edge: usize,
    pub forward: bool,
    /// Distance to the next vertex in this direction.
    pub reach: Length,
}

/// Which end of an edge meets a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    From,
    To,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveReport {
    pub b1: usize,
    pub leaf_ends: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<(usize, End)>>,
}

#[derive(Default)]
pub struct CurveBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String, Length)>,
}

impl CurveBuilder {
    pub fn vertex(mut self, id: &str) -> Self {
        self.vertices.push(id.to_string());
        self
    }

    pub fn edge(mut self, id: &str, from: &str, to: &str, length: Q) -> Self {
        self.edges
            .push((id.into(), from.into(), to.into(), Length::Finite(length)));
        self
    }

    /// An unbounded edge; `to` becomes a point at infinity.
    pub fn ray(mut self, id: &str, from: &str, to: &str) -> Self {
        self.edges
            .push((id.into(), from.into(), to.into(), Length::Infinite));
        self
    }

    pub fn build(self) -> Result<Curve> {
        Curve::new(self.vertices, self.edges)
    }
}

impl Curve {
    pub fn builder() -> CurveBuilder {
        CurveBuilder::default()
    }

    /// Builds and validates a curve: unique ids, known endpoints, positive
    /// lengths, connectivity, and valency-1 points at infinity.
    pub fn new(vertex_ids: Vec<String>, edges: Vec<(String, String, String, Length)>) -> Result<Self> {
        if vertex_ids.is_empty() {
            return Err(Error::EmptyCurve);
        }
        let mut index = BTreeMap::new();
        for (i, id) in vertex_ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        let mut edge_ids = HashSet::new();
        let mut vertices: Vec<Vertex> = vertex_ids
            .into_iter()
            .map(|id| Vertex { id, at_infinity: false })
            .collect();
        let mut built = Vec::with_capacity(edges.len());
        for (id, from, to, length) in edges {
            if !edge_ids.insert(id.clone()) {
                return Err(Error::DuplicateId(id));
            }
            let lookup = |v: &str| {
                index.get(v).copied().ok_or_else(|| Error::UnknownVertex {
                    edge: id.clone(),
                    vertex: v.to_string(),
                })
            };
            let (f, t) = (lookup(&from)?, lookup(&to)?);
            if let Length::Finite(l) = &length {
                if !l.is_positive() {
                    return Err(Error::NonPositiveLength(id));
                }
            }
            built.push(Edge { id, from: f, to: t, length });
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (e, edge) in built.iter().enumerate() {
            incidence[edge.from].push((e, End::From));
            incidence[edge.to].push((e, End::To));
        }
        for edge in &built {
            if edge.length.is_infinite() {
                if incidence[edge.to].len() != 1 {
                    return Err(Error::InfiniteEndValency(edge.id.clone()));
                }
                vertices[edge.to].at_infinity = true;
            }
        }
        for edge in &built {
            if vertices[edge.from].at_infinity {
                return Err(Error::InfiniteStart(edge.id.clone()));
            }
        }
        let curve = Curve { vertices, edges: built, incidence };
        if !curve.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(curve)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(e, _) in &self.incidence[v] {
                let edge = &self.edges[e];
                for w in [edge.from, edge.to] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn incidence(&self, v: usize) -> &[(usize, End)] {
        &self.incidence[v]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn is_compact(&self) -> bool {
        self.edges.iter().all(|e| !e.length.is_infinite())
    }

    /// First Betti number of the finite core.
    pub fn b1(&self) -> usize {
        let finite_edges = self.edges.iter().filter(|e| !e.length.is_infinite()).count();
        let finite_vertices = self.vertices.iter().filter(|v| !v.at_infinity).count();
        finite_edges + 1 - finite_vertices
    }

    /// Number of edges left over by a spanning forest; equals `b1` for a
    /// connected curve.
    pub fn b1_by_spanning_tree(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut extra = 0;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a == b {
                extra += 1;
            } else {
                parent[a] = b;
            }
        }
        extra
    }

    pub fn is_tree(&self) -> bool {
        self.b1() == 0
    }

    /// All points of valency one, including points at infinity.
    pub fn leaf_ends(&self) -> Vec<Point> {
        (0..self.vertices.len())
            .filter(|&v| self.incidence[v].len() == 1)
            .map(Point::Vertex)
            .collect()
    }

    pub fn report(&self) -> CurveReport {
        CurveReport { b1: self.b1(), leaf_ends: self.leaf_ends() }
    }

    pub fn is_at_infinity(&self, p: &Point) -> bool {
        matches!(p, Point::Vertex(v) if self.vertices[*v].at_infinity)
    }

    /// Canonical point at `offset` along edge `e`.
    pub fn point(&self, e: usize, offset: &Ext) -> Result<Point> {
        let edge = self.edges.get(e).ok_or_else(|| Error::PointNotOnCurve(format!("edge #{e}")))?;
        let bad = || Error::PointNotOnCurve(format!("{}@{}", edge.id, offset));
        match offset {
            Ext::NegInf => Err(bad()),
            Ext::PosInf => {
                if edge.length.is_infinite() {
                    Ok(Point::Vertex(edge.to))
                } else {
                    Err(bad())
                }
            }
            Ext::Fin(t) => {
                if t.is_negative() {
                    return Err(bad());
                }
                if t.is_zero() {
                    return Ok(Point::Vertex(edge.from));
                }
                match &edge.length {
                    Length::Finite(l) if t == l => Ok(Point::Vertex(edge.to)),
                    Length::Finite(l) if t > l => Err(bad()),
                    _ => Ok(Point::Interior { edge: e, offset: t.clone() }),
                }
            }
        }
    }

    pub fn point_on(&self, edge_id: &str, offset: &Ext) -> Result<Point> {
        let e = self
            .edge_index(edge_id)
            .ok_or_else(|| Error::PointNotOnCurve(format!("{edge_id}@{offset}")))?;
        self.point(e, offset)
    }

    pub fn vertex_point(&self, id: &str) -> Option<Point> {
        self.vertex_index(id).map(Point::Vertex)
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        let ok = match p {
            Point::Vertex(v) => *v < self.vertices.len(),
            Point::Interior { edge, offset } => self.edges.get(*edge).is_some_and(|e| {
                offset.is_positive()
                    && match &e.length {
                        Length::Finite(l) => offset < l,
                        Length::Infinite => true,
                    }
            }),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve(format!("{p:?}")))
        }
    }

    /// Every `(edge, offset)` description of a point.
    pub fn positions(&self, p: &Point) -> Vec<(usize, Ext)> {
        match p {
            Point::Interior { edge, offset } => vec![(*edge, Ext::Fin(offset.clone()))],
            Point::Vertex(v) => self.incidence[*v]
                .iter()
                .map(|&(e, end)| (e, self.end_offset(e, end)))
                .collect(),
        }
    }

    pub fn end_offset(&self, e: usize, end: End) -> Ext {
        match end {
            End::From => Ext::zero(),
            End::To => self.edges[e].length.as_ext(),
        }
    }

    /// Label `edge@offset` using the lexicographically smallest incident
    /// edge id for vertices.
    pub fn label(&self, p: &Point) -> String {
        let (edge, off) = self.sort_key(p);
        if edge.is_empty() {
            if let Point::Vertex(v) = p {
                return self.vertices[*v].id.clone();
            }
        }
        format!("{edge}@{off}")
    }

    /// `(edge id, offset)` used for canonical ordering in output.
    pub fn sort_key(&self, p: &Point) -> (String, Ext) {
        self.positions(p)
            .into_iter()
            .map(|(e, off)| (self.edges[e].id.clone(), off))
            .min()
            .unwrap_or((String::new(), Ext::zero()))
    }

    /// The half-edges emanating from a point; their number is its valency.
    pub fn half_edges(&self, p: &Point) -> Vec<HalfEdge> {
        match p {
            Point::Interior { edge, offset } => {
                let e = &self.edges[*edge];
                let ahead = match &e.length {
                    Length::Finite(l) => Length::Finite(l - offset),
                    Length::Infinite => Length::Infinite,
                };
                vec![
                    HalfEdge { edge: *edge, forward: true, reach: ahead },
                    HalfEdge { edge: *edge, forward: false, reach: Length::Finite(offset.clone()) },
                ]
            }
            Point::Vertex(v) => self.incidence[*v]
                .iter()
                .map(|&(e, end)| HalfEdge {
                    edge: e,
                    forward: end == End::From,
                    reach: self.edges[e].length.clone(),
                })
                .collect(),
        }
    }

    pub fn valency(&self, p: &Point) -> usize {
        self.half_edges(p).len()
    }

    /// Offset of a point along an edge it lies on, seen from the base of
    /// half-edge `h`.
    pub fn offset_on(&self, p: &Point, e: usize, forward_hint: bool) -> Option<Ext> {
        match p {
            Point::Interior { edge, offset } if *edge == e => Some(Ext::Fin(offset.clone())),
            Point::Interior { .. } => None,
            Point::Vertex(v) => {
                let edge = &self.edges[e];
                match (edge.from == *v, edge.to == *v) {
                    (true, true) => Some(if forward_hint { Ext::zero() } else { edge.length.as_ext() }),
                    (true, false) => Some(Ext::zero()),
                    (false, true) => Some(edge.length.as_ext()),
                    (false, false) => None,
                }
            }
        }
    }

    /// The point at distance `eps` from `p` along half-edge `h`; `eps` must
    /// not exceed the reach of `h`.
    pub fn step(&self, p: &Point, h: &HalfEdge, eps: &Q) -> Point {
        let base = match self.offset_on(p, h.edge, h.forward) {
            Some(Ext::Fin(t)) => t,
            Some(_) | None => panic!("half-edge does not start at point"),
        };
        let t = if h.forward { base + eps } else { base - eps };
        self.point(h.edge, &Ext::Fin(t)).expect("step stays on edge")
    }

    /// Shortest-path distances from `p` to every vertex.
    pub fn vertex_distances(&self, p: &Point) -> Vec<Ext> {
        let n = self.vertices.len();
        let mut dist = vec![Ext::PosInf; n];
        match p {
            Point::Vertex(v) => dist[*v] = Ext::zero(),
            Point::Interior { edge, offset } => {
                let e = &self.edges[*edge];
                dist[e.from] = Ext::Fin(offset.clone());
                if let Length::Finite(l) = &e.length {
                    let back = Ext::Fin(l - offset);
                    if back < dist[e.to] {
                        dist[e.to] = back;
                    }
                }
            }
        }
        if self.is_at_infinity(p) {
            return dist;
        }
        let mut done = vec![false; n];
        loop {
            let next = (0..n)
                .filter(|&v| !done[v] && dist[v].is_finite())
                .min_by(|&a, &b| dist[a].cmp(&dist[b]));
            let Some(v) = next else { break };
            done[v] = true;
            let dv = dist[v].finite().cloned().expect("finite");
            for &(e, _) in &self.incidence[v] {
                let edge = &self.edges[e];
                let Length::Finite(l) = &edge.length else { continue };
                let w = if edge.from == v { edge.to } else { edge.from };
                let cand = Ext::Fin(&dv + l);
                if cand < dist[w] {
                    dist[w] = cand;
                }
            }
        }
        dist
    }

    /// Shortest-path distance; `+∞` when exactly one argument is a point
    /// at infinity.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<Ext> {
        self.check_point(x)?;
        self.check_point(y)?;
        if x == y {
            return Ok(Ext::zero());
        }
        if self.is_at_infinity(x) || self.is_at_infinity(y) {
            return Ok(Ext::PosInf);
        }
        let dist = self.vertex_distances(x);
        Ok(self.distance_with(&dist, x, y))
    }

    pub(crate) fn distance_with(&self, dist: &[Ext], x: &Point, y: &Point) -> Ext {
        match y {
            Point::Vertex(v) => dist[*v].clone(),
            Point::Interior { edge, offset } => {
                let e = &self.edges[*edge];
                let mut best = dist[e.from].shift(offset);
                if let Length::Finite(l) = &e.length {
                    best = std::cmp::min(best, dist[e.to].shift(&(l - offset)));
                }
                if let Point::Interior { edge: xe, offset: xo } = x {
                    if xe == edge {
                        let direct: Q = (offset - xo).abs();
                        best = std::cmp::min(best, Ext::Fin(direct));
                    }
                }
                best
            }
        }
    }

    /// Inserts degree-two vertices at the given interior offsets.
    pub fn subdivide(&self, cuts: &BTreeMap<usize, BTreeSet<Q>>) -> Subdivision {
        let mut vertices: Vec<String> = self.vertices.iter().map(|v| v.id.clone()).collect();
        let mut taken: HashSet<String> = vertices.iter().cloned().collect();
        taken.extend(self.edges.iter().map(|e| e.id.clone()));
        let mut fresh = |base: String| {
            let mut id = base;
            while taken.contains(&id) {
                id.push('\'');
            }
            taken.insert(id.clone());
            id
        };
        let mut new_vertex_origin = Vec::new();
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        let mut pieces_of = Vec::with_capacity(self.edges.len());
        for (e, edge) in self.edges.iter().enumerate() {
            let inner: Vec<Q> = cuts
                .get(&e)
                .map(|s| {
                    s.iter()
                        .filter(|t| {
                            t.is_positive()
                                && edge.length.finite().is_none_or(|l| *t < l)
                        })
                        .cloned()
                        .collect()
                })
                .unwrap_or_default();
            let mut pieces = Vec::new();
            if inner.is_empty() {
                pieces.push((edges.len(), Q::zero()));
                origin.push((e, Q::zero()));
                edges.push((
                    edge.id.clone(),
                    vertices[edge.from].clone(),
                    vertices[edge.to].clone(),
                    edge.length.clone(),
                ));
                pieces_of.push(pieces);
                continue;
            }
            let mut prev_vertex = vertices[edge.from].clone();
            let mut prev_off = Q::zero();
            for (k, t) in inner.iter().enumerate() {
                let vid = fresh(format!("{}.v{}", edge.id, k + 1));
                vertices.push(vid.clone());
                new_vertex_origin.push((e, t.clone()));
                let eid = fresh(format!("{}.{}", edge.id, k));
                pieces.push((edges.len(), prev_off.clone()));
                origin.push((e, prev_off.clone()));
                edges.push((eid, prev_vertex, vid.clone(), Length::Finite(t - &prev_off)));
                prev_vertex = vid;
                prev_off = t.clone();
            }
            let eid = fresh(format!("{}.{}", edge.id, inner.len()));
            let last_len = match &edge.length {
                Length::Finite(l) => Length::Finite(l - &prev_off),
                Length::Infinite => Length::Infinite,
            };
            pieces.push((edges.len(), prev_off.clone()));
            origin.push((e, prev_off));
            edges.push((eid, prev_vertex, vertices[edge.to].clone(), last_len));
            pieces_of.push(pieces);
        }
        let refined = Curve::new(vertices, edges).expect("subdivision of a valid curve is valid");
        Subdivision {
            original_vertices: self.vertices.len(),
            new_vertex_origin,
            origin,
            pieces_of,
            refined,
        }
    }

    /// Attaches trees at finite points. The result keeps the host's edges
    /// (split where a host point is interior) followed by the tree edges.
    pub fn graft(&self, specs: &[GraftSpec]) -> Result<Grafted> {
        let mut cuts: BTreeMap<usize, BTreeSet<Q>> = BTreeMap::new();
        for spec in specs {
            self.check_point(&spec.host)?;
            if self.is_at_infinity(&spec.host) {
                return Err(Error::GraftAtInfinity);
            }
            if !spec.tree.is_tree() {
                return Err(Error::NotATree("grafted component has a cycle".into()));
            }
            spec.tree.check_point(&spec.attach)?;
            if let Point::Interior { edge, offset } = &spec.host {
                cuts.entry(*edge).or_default().insert(offset.clone());
            }
        }
        let host = self.subdivide(&cuts);
        let mut vertices: Vec<String> = host.refined.vertices.iter().map(|v| v.id.clone()).collect();
        let mut edges: Vec<(String, String, String, Length)> = host
            .refined
            .edges
            .iter()
            .map(|e| {
                (
                    e.id.clone(),
                    host.refined.vertices[e.from].id.clone(),
                    host.refined.vertices[e.to].id.clone(),
                    e.length.clone(),
                )
            })
            .collect();
        let mut origin: Vec<EdgeOrigin> = host
            .origin
            .iter()
            .map(|(e, start)| EdgeOrigin::Host { edge: *e, start: start.clone() })
            .collect();
        let mut host_points = Vec::new();
        let mut tree_vertices = Vec::new();
        for (k, spec) in specs.iter().enumerate() {
            let host_point = host.refine_point(&spec.host);
            let Point::Vertex(hv) = host_point else { unreachable!("hosts are vertices after cutting") };
            host_points.push(host_point);
            let mut tcuts: BTreeMap<usize, BTreeSet<Q>> = BTreeMap::new();
            if let Point::Interior { edge, offset } = &spec.attach {
                tcuts.entry(*edge).or_default().insert(offset.clone());
            }
            let tree = spec.tree.subdivide(&tcuts);
            let Point::Vertex(av) = tree.refine_point(&spec.attach) else { unreachable!() };
            let mut names = Vec::with_capacity(tree.refined.vertices.len());
            let mut indices = Vec::with_capacity(tree.refined.vertices.len());
            for (i, v) in tree.refined.vertices.iter().enumerate() {
                if i == av {
                    names.push(vertices[hv].clone());
                    indices.push(hv);
                } else {
                    let id = format!("g{k}.{}", v.id);
                    indices.push(vertices.len());
                    names.push(id.clone());
                    vertices.push(id);
                }
            }
            tree_vertices.push(indices);
            for (te, e) in tree.refined.edges.iter().enumerate() {
                let (orig_edge, start) = tree.origin[te].clone();
                edges.push((
                    format!("g{k}.{}", e.id),
                    names[e.from].clone(),
                    names[e.to].clone(),
                    e.length.clone(),
                ));
                origin.push(EdgeOrigin::Graft { spec: k, tree_edge: orig_edge, start });
            }
        }
        let curve = Curve::new(vertices, edges)?;
        Ok(Grafted { curve, origin, host_points, tree_vertices, host })
    }
}

/// A refinement of a curve by inserted degree-two vertices.
#[derive(Clone, Debug)]
pub struct Subdivision {
    original_vertices: usize,
    new_vertex_origin: Vec<(usize, Q)>,
    /// For each refined edge: the original edge and the offset where it starts.
    pub origin: Vec<(usize, Q)>,
    pieces_of: Vec<Vec<(usize, Q)>>,
    pub refined: Curve,
}

impl Subdivision {
    pub fn refine_point(&self, p: &Point) -> Point {
        match p {
            Point::Vertex(v) => Point::Vertex(*v),
            Point::Interior { edge, offset } => {
                let pieces = &self.pieces_of[*edge];
                let k = pieces.partition_point(|(_, s)| s <= offset) - 1;
                let (ne, start) = &pieces[k];
                self.refined
                    .point(*ne, &Ext::Fin(offset - start))
                    .expect("offset inside piece")
            }
        }
    }

    pub fn original_point(&self, original: &Curve, p: &Point) -> Point {
        match p {
            Point::Vertex(v) if *v < self.original_vertices => Point::Vertex(*v),
            Point::Vertex(v) => {
                let (e, t) = &self.new_vertex_origin[*v - self.original_vertices];
                Point::Interior { edge: *e, offset: t.clone() }
            }
            Point::Interior { edge, offset } => {
                let (e, start) = &self.origin[*edge];
                original.point(*e, &Ext::Fin(start + offset)).expect("inside original edge")
            }
        }
    }

    /// Refined edges covering an original edge, with their start offsets.
    pub fn pieces(&self, e: usize) -> &[(usize, Q)] {
        &self.pieces_of[e]
    }
}

#[derive(Clone, Debug)]
pub struct GraftSpec {
    pub host: Point,
    pub tree: Curve,
    pub attach: Point,
}

/// Where an edge of a grafted curve came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// Part of host edge `edge`, starting at `start`, same orientation.
    Host { edge: usize, start: Q },
    /// Part of edge `tree_edge` of the tree in spec `spec`.
    Graft { spec: usize, tree_edge: usize, start: Q },
}

#[derive(Clone, Debug)]
pub struct Grafted {
    pub curve: Curve,
    pub origin: Vec<EdgeOrigin>,
    /// Host point of each spec, as a vertex of the new curve.
    pub host_points: Vec<Point>,
    /// For each spec, new-curve vertex index of each (subdivided) tree vertex.
    pub tree_vertices: Vec<Vec<usize>>,
    /// Subdivision applied to the host before attaching.
    pub host: Subdivision,
}

impl Grafted {
    /// New-curve point corresponding to a point of the host curve.
    pub fn host_point(&self, p: &Point) -> Point {
        self.host.refine_point(p)
    }
}
