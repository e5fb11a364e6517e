//! Line-oriented text format for curves, points, functions, divisors,
//! systems and morphisms.
//!
//! ```text
//! curve seg2
//! vertex A
//! vertex B
//! edge e1 A B 2/1
//! point mid e1@1/1
//! func f
//! on e1 start 0/1 pieces -1:1/1 0:1/1
//! div d 1*A
//! system s base d gens f
//!
//! map id seg2 -> seg2
//! edge e1->e1@0/1 slope 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::curve::{Curve, Length, Point};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::harmonic::{EdgeMap, Morphism};
use crate::linear_system::GenSystem;
use crate::plfunc::PlFunction;
use crate::rational::{fmt_q, parse_ext, parse_q, Ext, Q};

#[derive(Clone, Debug)]
pub struct SystemRecord {
    pub base: String,
    pub gens: Vec<String>,
}

/// A curve with the objects living on it.
#[derive(Clone, Debug)]
pub struct CurveEntry {
    pub curve: Arc<Curve>,
    pub points: BTreeMap<String, Point>,
    pub funcs: BTreeMap<String, PlFunction>,
    pub divs: BTreeMap<String, Divisor>,
    pub systems: BTreeMap<String, SystemRecord>,
}

#[derive(Clone, Debug)]
pub struct MapEntry {
    pub source: String,
    pub target: String,
    pub morphism: Morphism,
}

/// Everything parsed from one or more files, by name.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub curves: BTreeMap<String, CurveEntry>,
    pub maps: BTreeMap<String, MapEntry>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn rational(line: usize, s: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| parse_err(line, format!("bad rational `{s}`")))
}

fn length(line: usize, s: &str) -> Result<Length> {
    match parse_ext(s) {
        Some(Ext::PosInf) => Ok(Length::Infinite),
        Some(Ext::Fin(v)) => Ok(Length::Finite(v)),
        _ => Err(parse_err(line, format!("bad length `{s}`"))),
    }
}

fn integer(line: usize, s: &str) -> Result<i64> {
    s.strip_prefix('+').unwrap_or(s).parse().map_err(|_| parse_err(line, format!("bad integer `{s}`")))
}

/// A curve block under construction: vertex and edge lines come first.
struct Pending {
    id: String,
    line: usize,
    vertices: Vec<String>,
    edges: Vec<(String, String, String, Length)>,
    entry: Option<CurveEntry>,
}

impl Pending {
    fn entry(&mut self) -> Result<&mut CurveEntry> {
        if self.entry.is_none() {
            let curve = Curve::new(std::mem::take(&mut self.vertices), std::mem::take(&mut self.edges))?;
            self.entry = Some(CurveEntry {
                curve: Arc::new(curve),
                points: BTreeMap::new(),
                funcs: BTreeMap::new(),
                divs: BTreeMap::new(),
                systems: BTreeMap::new(),
            });
        }
        Ok(self.entry.as_mut().expect("just built"))
    }
}

enum Block {
    None,
    Curve(Box<Pending>),
    Map { id: String, source: String, target: String, line: usize, maps: Vec<(usize, String, String, Q, i64)> },
}

/// Function lines being collected for the current `func` record.
struct PendingFunc {
    id: String,
    line: usize,
    neg_inf: bool,
    on: BTreeMap<String, (usize, Q, Vec<(i64, Length)>)>,
}

impl CurveEntry {
    /// Resolves `edge@offset`, a named point, or a vertex id.
    pub fn point(&self, s: &str) -> Result<Point> {
        if let Some((e, off)) = s.split_once('@') {
            let off = parse_ext(off).ok_or_else(|| Error::UnknownName { kind: "offset", name: off.into() })?;
            return self.curve.point_on(e, &off);
        }
        if let Some(p) = self.points.get(s) {
            return Ok(p.clone());
        }
        self.curve
            .vertex_point(s)
            .ok_or_else(|| Error::UnknownName { kind: "point", name: s.into() })
    }

    /// Text for a point: the vertex id, or `edge@offset`.
    pub fn point_text(&self, p: &Point) -> String {
        match p {
            Point::Vertex(v) => self.curve.vertices()[*v].id.clone(),
            Point::Interior { edge, offset } => format!("{}@{}", self.curve.edge(*edge).id, fmt_q(offset)),
        }
    }

    pub fn system(&self, id: &str) -> Result<GenSystem> {
        let rec = self.systems.get(id).ok_or_else(|| Error::UnknownName { kind: "system", name: id.into() })?;
        let base = self
            .divs
            .get(&rec.base)
            .ok_or_else(|| Error::UnknownName { kind: "divisor", name: rec.base.clone() })?;
        let gens = rec
            .gens
            .iter()
            .map(|g| {
                self.funcs.get(g).cloned().ok_or_else(|| Error::UnknownName { kind: "function", name: g.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        GenSystem::new(&self.curve, base.clone(), gens)
    }
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace> {
        let mut ws = Workspace::default();
        let mut block = Block::None;
        let mut func: Option<PendingFunc> = None;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let w: Vec<&str> = t.split_whitespace().collect();
            if w[0] == "on" {
                let Some(f) = func.as_mut() else {
                    return Err(parse_err(line, "`on` outside a function"));
                };
                if w.len() < 6 || w[2] != "start" || w[4] != "pieces" {
                    return Err(parse_err(line, "expected `on <edge> start <val> pieces <slope>:<len>...`"));
                }
                let start = rational(line, w[3])?;
                let runs = w[5..]
                    .iter()
                    .map(|r| {
                        let (s, l) = r.split_once(':').ok_or_else(|| parse_err(line, format!("bad piece `{r}`")))?;
                        Ok((integer(line, s)?, length(line, l)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if f.on.insert(w[1].to_string(), (line, start, runs)).is_some() {
                    return Err(parse_err(line, format!("edge `{}` given twice", w[1])));
                }
                continue;
            }
            if let Some(f) = func.take() {
                let Block::Curve(p) = &mut block else { unreachable!("functions live in curve blocks") };
                finish_func(p.entry()?, f)?;
            }
            match w[0] {
                "curve" => {
                    expect_len(line, &w, 2)?;
                    ws.close(std::mem::replace(&mut block, Block::None))?;
                    block = Block::Curve(Box::new(Pending {
                        id: w[1].into(),
                        line,
                        vertices: Vec::new(),
                        edges: Vec::new(),
                        entry: None,
                    }));
                }
                "map" => {
                    if w.len() != 5 || w[3] != "->" {
                        return Err(parse_err(line, "expected `map <id> <source> -> <target>`"));
                    }
                    ws.close(std::mem::replace(&mut block, Block::None))?;
                    block = Block::Map {
                        id: w[1].into(),
                        source: w[2].into(),
                        target: w[4].into(),
                        line,
                        maps: Vec::new(),
                    };
                }
                "vertex" | "edge" | "point" | "func" | "div" | "system" => {
                    if let Block::Map { maps, .. } = &mut block {
                        if w[0] != "edge" {
                            return Err(parse_err(line, format!("`{}` inside a map", w[0])));
                        }
                        maps.push(map_line(line, &w)?);
                        continue;
                    }
                    let Block::Curve(p) = &mut block else {
                        return Err(parse_err(line, format!("`{}` before any `curve`", w[0])));
                    };
                    match w[0] {
                        "vertex" | "edge" if p.entry.is_some() => {
                            return Err(parse_err(line, "vertices and edges must come first in a curve"));
                        }
                        "vertex" => {
                            expect_len(line, &w, 2)?;
                            p.vertices.push(w[1].into());
                        }
                        "edge" => {
                            expect_len(line, &w, 5)?;
                            p.edges.push((w[1].into(), w[2].into(), w[3].into(), length(line, w[4])?));
                        }
                        "point" => {
                            expect_len(line, &w, 3)?;
                            let e = p.entry()?;
                            let pt = e.point(w[2])?;
                            unique(e.points.insert(w[1].into(), pt).is_none(), w[1])?;
                        }
                        "func" => {
                            if !(w.len() == 2 || (w.len() == 3 && w[2] == "-inf")) {
                                return Err(parse_err(line, "expected `func <id>` or `func <id> -inf`"));
                            }
                            p.entry()?;
                            func = Some(PendingFunc { id: w[1].into(), line, neg_inf: w.len() == 3, on: BTreeMap::new() });
                        }
                        "div" => {
                            if w.len() < 2 {
                                return Err(parse_err(line, "expected `div <id> <coef>*<point>...`"));
                            }
                            let e = p.entry()?;
                            let mut d = Divisor::zero();
                            for term in &w[2..] {
                                let (c, pt) = term
                                    .split_once('*')
                                    .ok_or_else(|| parse_err(line, format!("bad divisor term `{term}`")))?;
                                d.add_at(e.point(pt)?, integer(line, c)?);
                            }
                            unique(e.divs.insert(w[1].into(), d).is_none(), w[1])?;
                        }
                        _ => {
                            if w.len() < 6 || w[2] != "base" || w[4] != "gens" {
                                return Err(parse_err(line, "expected `system <id> base <div> gens <func>...`"));
                            }
                            let rec = SystemRecord { base: w[3].into(), gens: w[5..].iter().map(|s| s.to_string()).collect() };
                            let e = p.entry()?;
                            unique(e.systems.insert(w[1].into(), rec).is_none(), w[1])?;
                        }
                    }
                }
                other => return Err(parse_err(line, format!("unknown record `{other}`"))),
            }
        }
        if let Some(f) = func.take() {
            let Block::Curve(p) = &mut block else { unreachable!() };
            finish_func(p.entry()?, f)?;
        }
        ws.close(block)?;
        for entry in ws.curves.values() {
            for sid in entry.systems.keys() {
                entry.system(sid)?;
            }
        }
        ws.check_unique_names()?;
        Ok(ws)
    }

    /// Parses and merges several files.
    pub fn load<P: AsRef<Path>>(paths: &[P]) -> Result<Workspace> {
        let mut ws = Workspace::default();
        for path in paths {
            let path = path.as_ref();
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let part = Workspace::parse(&text)?;
            ws.merge(part)?;
        }
        ws.check_unique_names()?;
        Ok(ws)
    }

    pub fn merge(&mut self, other: Workspace) -> Result<()> {
        for (id, c) in other.curves {
            unique(!self.curves.contains_key(&id), &id)?;
            self.curves.insert(id, c);
        }
        for (id, m) in other.maps {
            unique(!self.maps.contains_key(&id), &id)?;
            let source = self.curve(&m.source)?.clone();
            let target = self.curve(&m.target)?.clone();
            let morphism = Morphism::new(&source, &target, m.morphism.maps().to_vec())?;
            self.maps.insert(id, MapEntry { morphism, ..m });
        }
        Ok(())
    }

    fn close(&mut self, block: Block) -> Result<()> {
        match block {
            Block::None => Ok(()),
            Block::Curve(mut p) => {
                p.entry()?;
                unique(!self.curves.contains_key(&p.id), &p.id).map_err(|e| relocate(e, p.line))?;
                self.curves.insert(p.id.clone(), p.entry.take().expect("built"));
                Ok(())
            }
            Block::Map { id, source, target, line, maps } => {
                unique(!self.maps.contains_key(&id), &id)?;
                let src = self.curve(&source).map_err(|e| relocate(e, line))?.clone();
                let tgt = self.curve(&target).map_err(|e| relocate(e, line))?.clone();
                let mut by_edge: Vec<Option<EdgeMap>> = vec![None; src.edges().len()];
                for (l, se, te, start, slope) in maps {
                    let e = src.edge_index(&se).ok_or(Error::UnknownName { kind: "edge", name: se.clone() })?;
                    let target_edge = tgt.edge_index(&te).ok_or(Error::UnknownName { kind: "edge", name: te })?;
                    if by_edge[e].replace(EdgeMap { target_edge, start, slope }).is_some() {
                        return Err(parse_err(l, format!("edge `{se}` mapped twice")));
                    }
                }
                let maps = by_edge
                    .into_iter()
                    .enumerate()
                    .map(|(e, m)| m.ok_or_else(|| parse_err(line, format!("edge `{}` not mapped", src.edge(e).id))))
                    .collect::<Result<Vec<_>>>()?;
                let morphism = Morphism::new(&src, &tgt, maps)?;
                self.maps.insert(id, MapEntry { source, target, morphism });
                Ok(())
            }
        }
    }

    fn check_unique_names(&self) -> Result<()> {
        for kind in 0..4 {
            let mut seen = std::collections::BTreeSet::new();
            for c in self.curves.values() {
                let names: Vec<&String> = match kind {
                    0 => c.points.keys().collect(),
                    1 => c.funcs.keys().collect(),
                    2 => c.divs.keys().collect(),
                    _ => c.systems.keys().collect(),
                };
                for n in names {
                    unique(seen.insert(n.clone()), n)?;
                }
            }
        }
        Ok(())
    }

    pub fn curve(&self, id: &str) -> Result<&Arc<Curve>> {
        self.curves
            .get(id)
            .map(|c| &c.curve)
            .ok_or_else(|| Error::UnknownName { kind: "curve", name: id.into() })
    }

    fn find<'a, T>(
        &'a self,
        kind: &'static str,
        id: &str,
        pick: impl Fn(&'a CurveEntry) -> Option<T>,
    ) -> Result<(&'a str, T)> {
        self.curves
            .iter()
            .find_map(|(cid, c)| pick(c).map(|v| (cid.as_str(), v)))
            .ok_or_else(|| Error::UnknownName { kind, name: id.into() })
    }

    /// A function and the id of its curve.
    pub fn func(&self, id: &str) -> Result<(&str, &PlFunction)> {
        self.find("function", id, |c| c.funcs.get(id))
    }

    pub fn divisor(&self, id: &str) -> Result<(&str, &Divisor)> {
        self.find("divisor", id, |c| c.divs.get(id))
    }

    pub fn system(&self, id: &str) -> Result<(&str, GenSystem)> {
        let (cid, _) = self.find("system", id, |c| c.systems.get(id))?;
        Ok((cid, self.curves[cid].system(id)?))
    }

    pub fn morphism(&self, id: &str) -> Result<&MapEntry> {
        self.maps.get(id).ok_or_else(|| Error::UnknownName { kind: "map", name: id.into() })
    }

    /// Resolves a point on a named curve.
    pub fn point(&self, curve: &str, s: &str) -> Result<Point> {
        self.curves
            .get(curve)
            .ok_or_else(|| Error::UnknownName { kind: "curve", name: curve.into() })?
            .point(s)
    }

    pub fn add_curve(&mut self, id: &str, curve: Arc<Curve>) -> Result<&mut CurveEntry> {
        unique(!self.curves.contains_key(id), id)?;
        Ok(self.curves.entry(id.into()).or_insert(CurveEntry {
            curve,
            points: BTreeMap::new(),
            funcs: BTreeMap::new(),
            divs: BTreeMap::new(),
            systems: BTreeMap::new(),
        }))
    }

    /// Adds a morphism between curves already in the workspace.
    pub fn add_map(&mut self, id: &str, source: &str, target: &str, m: &Morphism) -> Result<()> {
        unique(!self.maps.contains_key(id), id)?;
        let morphism = Morphism::new(self.curve(source)?, self.curve(target)?, m.maps().to_vec())?;
        self.maps.insert(id.into(), MapEntry { source: source.into(), target: target.into(), morphism });
        Ok(())
    }

    /// Canonical text.
    pub fn print(&self) -> String {
        let mut out = String::new();
        let mut blocks: Vec<String> = Vec::new();
        for (id, c) in &self.curves {
            blocks.push(print_curve(id, c));
        }
        for (id, m) in &self.maps {
            blocks.push(print_map(id, m));
        }
        for (k, b) in blocks.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            out.push_str(b);
        }
        out
    }
}

impl CurveEntry {
    pub fn add_func(&mut self, id: &str, f: PlFunction) -> Result<()> {
        unique(self.funcs.insert(id.into(), f).is_none(), id)
    }

    pub fn add_div(&mut self, id: &str, d: Divisor) -> Result<()> {
        unique(self.divs.insert(id.into(), d).is_none(), id)
    }

    /// Adds a system together with its base divisor `<id>.D` and
    /// generators `<id>.g0, <id>.g1, …`.
    pub fn add_system(&mut self, id: &str, s: &GenSystem) -> Result<()> {
        let base = format!("{id}.D");
        self.add_div(&base, s.base().clone())?;
        let mut gens = Vec::new();
        for (i, g) in s.gens().iter().enumerate() {
            let name = format!("{id}.g{i}");
            self.add_func(&name, g.clone())?;
            gens.push(name);
        }
        unique(self.systems.insert(id.into(), SystemRecord { base, gens }).is_none(), id)
    }

    /// `c*point` terms sorted by `(edge id, offset)`.
    pub fn divisor_text(&self, d: &Divisor) -> String {
        let mut terms: Vec<((String, Ext), String)> = d
            .iter()
            .map(|(p, c)| (self.curve.sort_key(p), format!("{c}*{}", self.point_text(p))))
            .collect();
        terms.sort();
        terms.into_iter().map(|(_, t)| t).collect::<Vec<_>>().join(" ")
    }
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::DuplicateId(id) => Error::DuplicateId(format!("{id} (line {line})")),
        other => other,
    }
}

fn unique(ok: bool, id: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::DuplicateId(id.into()))
    }
}

fn expect_len(line: usize, w: &[&str], n: usize) -> Result<()> {
    if w.len() == n {
        Ok(())
    } else {
        Err(parse_err(line, format!("`{}` takes {} fields, found {}", w[0], n - 1, w.len() - 1)))
    }
}

/// `edge <src>-><tgt>@<off> slope <k>`
fn map_line(line: usize, w: &[&str]) -> Result<(usize, String, String, Q, i64)> {
    if w.len() != 4 || w[2] != "slope" {
        return Err(parse_err(line, "expected `edge <src>-><tgt>@<off> slope <k>`"));
    }
    let (src, rest) = w[1].split_once("->").ok_or_else(|| parse_err(line, "missing `->`"))?;
    let (tgt, off) = rest.split_once('@').ok_or_else(|| parse_err(line, "missing `@`"))?;
    Ok((line, src.into(), tgt.into(), rational(line, off)?, integer(line, w[3])?))
}

fn finish_func(entry: &mut CurveEntry, f: PendingFunc) -> Result<()> {
    let curve = entry.curve.clone();
    let value = if f.neg_inf {
        if !f.on.is_empty() {
            return Err(parse_err(f.line, format!("function `{}` is -inf but has edge lines", f.id)));
        }
        PlFunction::neg_infinity(&curve)
    } else {
        let mut on = f.on;
        let mut runs = Vec::with_capacity(curve.edges().len());
        for e in curve.edges() {
            let (_, start, rs) = on
                .remove(&e.id)
                .ok_or_else(|| parse_err(f.line, format!("function `{}` has no line for edge `{}`", f.id, e.id)))?;
            runs.push((start, rs));
        }
        if let Some((name, (line, ..))) = on.into_iter().next() {
            return Err(Error::UnknownName { kind: "edge", name: format!("{name} (line {line})") });
        }
        PlFunction::from_runs(&curve, runs)?
    };
    unique(entry.funcs.insert(f.id.clone(), value).is_none(), &f.id)
}

fn print_curve(id: &str, c: &CurveEntry) -> String {
    let mut s = String::new();
    let curve = &c.curve;
    writeln!(s, "curve {id}").unwrap();
    for v in curve.vertices() {
        writeln!(s, "vertex {}", v.id).unwrap();
    }
    for e in curve.edges() {
        let len = match &e.length {
            Length::Finite(l) => fmt_q(l),
            Length::Infinite => "inf".into(),
        };
        writeln!(s, "edge {} {} {} {len}", e.id, curve.vertices()[e.from].id, curve.vertices()[e.to].id).unwrap();
    }
    for (pid, p) in &c.points {
        writeln!(s, "point {pid} {}", c.point_text(p)).unwrap();
    }
    for (fid, f) in &c.funcs {
        match f.edge_fns() {
            None => writeln!(s, "func {fid} -inf").unwrap(),
            Some(efs) => {
                writeln!(s, "func {fid}").unwrap();
                for (e, ef) in efs.iter().enumerate() {
                    let pieces = ef.pieces();
                    let runs: Vec<String> = pieces
                        .iter()
                        .enumerate()
                        .map(|(k, p)| {
                            let len = match pieces.get(k + 1) {
                                Some(next) => fmt_q(&(&next.start - &p.start)),
                                None => match &curve.edge(e).length {
                                    Length::Finite(l) => fmt_q(&(l - &p.start)),
                                    Length::Infinite => "inf".into(),
                                },
                            };
                            format!("{}:{len}", p.slope)
                        })
                        .collect();
                    writeln!(
                        s,
                        "on {} start {} pieces {}",
                        curve.edge(e).id,
                        fmt_q(&pieces[0].value),
                        runs.join(" ")
                    )
                    .unwrap();
                }
            }
        }
    }
    for (did, d) in &c.divs {
        let terms = c.divisor_text(d);
        if terms.is_empty() {
            writeln!(s, "div {did}").unwrap();
        } else {
            writeln!(s, "div {did} {terms}").unwrap();
        }
    }
    for (sid, r) in &c.systems {
        writeln!(s, "system {sid} base {} gens {}", r.base, r.gens.join(" ")).unwrap();
    }
    s
}

fn print_map(id: &str, m: &MapEntry) -> String {
    let mut s = String::new();
    writeln!(s, "map {id} {} -> {}", m.source, m.target).unwrap();
    let (src, tgt) = (m.morphism.source(), m.morphism.target());
    for (e, em) in m.morphism.maps().iter().enumerate() {
        writeln!(
            s,
            "edge {}->{}@{} slope {}",
            src.edge(e).id,
            tgt.edge(em.target_edge).id,
            fmt_q(&em.start),
            em.slope
        )
        .unwrap();
    }
    s
}
