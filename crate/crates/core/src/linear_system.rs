//! Finitely generated linear systems `Λ`, given by a base divisor `D` and
//! generators `f_0, …, f_n` of `L_Λ(D)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::curve::{Curve, Length, Point, Subdivision};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::plfunc::{trop_combine, PlFunction};
use crate::rational::{qi, Ext, Q};
use crate::trop_linalg::{ProjPoint, TropScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSystem {
    curve: Arc<Curve>,
    base: Divisor,
    gens: Vec<PlFunction>,
}

impl GenSystem {
    /// Checks that every generator lies in `L(D)`.
    pub fn new(curve: &Arc<Curve>, base: Divisor, gens: Vec<PlFunction>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for (p, _) in base.iter() {
            curve.check_point(p)?;
        }
        for (i, f) in gens.iter().enumerate() {
            if f.curve() != curve {
                return Err(Error::CurveMismatch);
            }
            if f.is_neg_infinity() || !(&base + &f.principal_divisor()?).is_effective() {
                return Err(Error::NotInLinearSystem(i));
            }
        }
        Ok(GenSystem { curve: curve.clone(), base, gens })
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn base(&self) -> &Divisor {
        &self.base
    }

    pub fn gens(&self) -> &[PlFunction] {
        &self.gens
    }

    pub fn degree(&self) -> i64 {
        self.base.degree()
    }

    /// Number of generators minus one; the algebraic dimension once the
    /// generators are minimal.
    pub fn algdim(&self) -> usize {
        self.gens.len() - 1
    }

    /// The same system on a subdivided curve.
    pub fn refine(&self, sub: &Subdivision) -> GenSystem {
        let curve = Arc::new(sub.refined.clone());
        GenSystem {
            base: self.base.refine(sub),
            gens: self.gens.iter().map(|f| f.refine_onto(&curve, sub)).collect(),
            curve,
        }
    }

    /// Homogeneous coordinates of `Φ_Λ(x)`, not normalized. At a point at
    /// infinity these are the projective limit along the unbounded edge.
    pub fn phi_coords(&self, x: &Point) -> Result<Vec<TropScalar>> {
        self.curve.check_point(x)?;
        if !self.curve.is_at_infinity(x) {
            return Ok(self.gens.iter().map(|f| TropScalar::finite(f.value(x))).collect());
        }
        let Point::Vertex(v) = x else { unreachable!() };
        let (e, _) = self.curve.incidence(*v)[0];
        let tails: Vec<(i64, &Q)> = self
            .gens
            .iter()
            .map(|f| {
                let last = f.edge_fns().expect("finite generator")[e].pieces().last().expect("nonempty");
                (last.slope, &last.start)
            })
            .collect();
        let top = tails.iter().map(|(s, _)| *s).max().expect("nonempty");
        let t0 = tails.iter().map(|(_, t)| *t).max().expect("nonempty").clone();
        Ok(self
            .gens
            .iter()
            .zip(&tails)
            .map(|(f, (s, _))| {
                if *s == top {
                    TropScalar::finite(f.edge_fns().expect("finite")[e].value(&t0))
                } else {
                    TropScalar::neg_inf()
                }
            })
            .collect())
    }

    /// `Φ_Λ(x) = (f_0(x) : … : f_n(x))`.
    pub fn phi(&self, x: &Point) -> Result<ProjPoint> {
        ProjPoint::new(self.phi_coords(x)?).map_err(|_| Error::PhiUndefined(self.curve.label(x)))
    }

    /// `⊕_i f_i / f_i(x)`, the function whose divisor moves `D` to `D_x`.
    pub fn normalized_max(&self, x: &Point) -> Result<PlFunction> {
        let coeffs: Vec<TropScalar> = self
            .phi_coords(x)?
            .into_iter()
            .map(|c| TropScalar(c.0.map(|v| -v)))
            .collect();
        trop_combine(&coeffs, &self.gens).map_err(|_| Error::PhiUndefined(self.curve.label(x)))
    }

    /// `D_x = D + div(⊕_i f_i / f_i(x))`.
    pub fn divisor_at(&self, x: &Point) -> Result<Divisor> {
        Ok(&self.base + &self.normalized_max(x)?.principal_divisor()?)
    }

    /// `D_x(x)`, computed from outgoing slopes: every generator is
    /// maximal at `x` in `⊕_i f_i / f_i(x)`.
    pub fn self_coefficient(&self, x: &Point) -> Result<i64> {
        if self.curve.is_at_infinity(x) {
            return Ok(self.divisor_at(x)?.get(x));
        }
        let mut total = self.base.get(x);
        for h in self.curve.half_edges(x) {
            let mut best = i64::MIN;
            for f in &self.gens {
                best = best.max(f.outgoing_slope(x, &h)?);
            }
            total += best;
        }
        Ok(total)
    }

    /// Coefficients `a_i = inf (f − f_i)`, so that `⊕ a_i ⊙ f_i ≤ f`, and
    /// whether equality holds.
    pub fn maximal_representation(&self, f: &PlFunction) -> Result<(Vec<TropScalar>, bool)> {
        maximal_representation(f, &self.gens)
    }

    /// Drops generators expressible through the others, then shifts each
    /// survivor so that its maximum is 0.
    pub fn minimize(&self) -> Result<GenSystem> {
        let gens = minimize_generators(&self.gens)?;
        Ok(GenSystem { curve: self.curve.clone(), base: self.base.clone(), gens })
    }

    /// Whether two systems generate the same semimodule.
    pub fn same_semimodule(&self, other: &GenSystem) -> Result<bool> {
        for f in other.gens() {
            if !self.maximal_representation(f)?.1 {
                return Ok(false);
            }
        }
        for f in self.gens() {
            if !other.maximal_representation(f)?.1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Edge cuts at every generator breakpoint and every support point of
    /// the base divisor.
    pub fn cell_cuts(&self) -> BTreeMap<usize, BTreeSet<Q>> {
        let mut cuts: BTreeMap<usize, BTreeSet<Q>> = BTreeMap::new();
        for f in &self.gens {
            for (e, ef) in f.edge_fns().expect("finite generator").iter().enumerate() {
                cuts.entry(e).or_default().extend(ef.knots().cloned());
            }
        }
        for (p, _) in self.base.iter() {
            if let Point::Interior { edge, offset } = p {
                cuts.entry(*edge).or_default().insert(offset.clone());
            }
        }
        cuts
    }

    /// All cell endpoints followed by one interior point of each cell.
    pub fn cell_points(&self) -> Vec<Point> {
        cell_points(&self.curve, &self.cell_cuts())
    }

    /// Checks `D_x(x) ≥ 1` for every `x`. The value is constant on each
    /// open cell, so endpoints and one interior point per cell suffice.
    pub fn check_rank_one(&self) -> Result<RankCertificate> {
        let points = self.cell_points();
        for (k, x) in points.iter().enumerate() {
            if self.self_coefficient(x)? < 1 {
                return Ok(RankCertificate { checked: k + 1, failing: Some(x.clone()) });
            }
        }
        Ok(RankCertificate { checked: points.len(), failing: None })
    }
}

/// Outcome of the rank-one test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub checked: usize,
    pub failing: Option<Point>,
}

impl RankCertificate {
    pub fn passed(&self) -> bool {
        self.failing.is_none()
    }
}

/// Vertices, then cut points, then one interior point per cell.
pub fn cell_points(curve: &Curve, cuts: &BTreeMap<usize, BTreeSet<Q>>) -> Vec<Point> {
    let mut points: Vec<Point> = (0..curve.vertices().len()).map(Point::Vertex).collect();
    let mut interior = Vec::new();
    for (e, edge) in curve.edges().iter().enumerate() {
        let mut marks: Vec<Q> = vec![Q::zero()];
        if let Some(c) = cuts.get(&e) {
            marks.extend(c.iter().filter(|t| **t > Q::zero() && edge.length.finite().is_none_or(|l| *t < l)).cloned());
        }
        for t in &marks[1..] {
            points.push(Point::Interior { edge: e, offset: t.clone() });
        }
        let mut ends = marks[1..].to_vec();
        match &edge.length {
            Length::Finite(l) => ends.push(l.clone()),
            Length::Infinite => ends.push(marks.last().expect("nonempty") + Q::one() + Q::one()),
        }
        for (a, b) in marks.iter().zip(&ends) {
            let mid = (a + b) / qi(2);
            interior.push(Point::Interior { edge: e, offset: mid });
        }
    }
    points.extend(interior);
    points
}

/// `a_i = inf_x (f(x) − f_i(x))` and whether `⊕ a_i ⊙ f_i = f`.
pub fn maximal_representation(f: &PlFunction, gens: &[PlFunction]) -> Result<(Vec<TropScalar>, bool)> {
    if f.is_neg_infinity() {
        return Err(Error::NegInfFunction);
    }
    let mut coeffs = Vec::with_capacity(gens.len());
    for g in gens {
        let diff = f.add(&g.negate()?)?;
        coeffs.push(match diff.infimum() {
            Ext::Fin(v) => TropScalar::finite(v),
            _ => TropScalar::neg_inf(),
        });
    }
    let equal = match trop_combine(&coeffs, gens) {
        Ok(g) => &g == f,
        Err(Error::AllNegInf) => false,
        Err(e) => return Err(e),
    };
    Ok((coeffs, equal))
}

/// Shifts a function so that its supremum is 0 (or its value at vertex 0
/// when the supremum is infinite).
pub fn normalize(f: &PlFunction) -> PlFunction {
    let top = match f.supremum() {
        Ext::Fin(v) => v,
        _ => f.value(&Point::Vertex(0)),
    };
    f.shift(&-top)
}

/// Drops, in order, every generator representable by the remaining ones.
pub fn minimize_generators(gens: &[PlFunction]) -> Result<Vec<PlFunction>> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut keep: Vec<PlFunction> = gens.to_vec();
    let mut i = 0;
    while i < keep.len() {
        if keep.len() > 1 {
            let others: Vec<PlFunction> =
                keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            if maximal_representation(&keep[i], &others)?.1 {
                keep.remove(i);
                continue;
            }
        }
        i += 1;
    }
    Ok(keep.iter().map(normalize).collect())
}

/// Equality of generator lists up to order and additive constants.
pub fn same_up_to_constants(a: &[PlFunction], b: &[PlFunction]) -> bool {
    let key = |v: &[PlFunction]| {
        let mut n: Vec<String> = v.iter().map(|f| format!("{:?}", normalize(f).edge_fns())).collect();
        n.sort();
        n
    };
    a.len() == b.len() && key(a) == key(b)
}

/// `−d(proj_{[x0,y]}(t), x0)` on a tree.
pub fn path_function(tree: &Arc<Curve>, x0: &Point, y: &Point) -> Result<PlFunction> {
    let dx = PlFunction::distance_from(tree, x0)?;
    let dy = PlFunction::distance_from(tree, y)?;
    let dxy = tree.distance(x0, y)?.finite().cloned().expect("finite points");
    // (d_x0 + d(x0,y) − d_y) / 2 is the distance from x0 to the projection.
    dx.add(&dy.negate()?)?.shift(&dxy).divide(2)?.negate()
}

/// A generating set of the complete linear system `|D|` for a divisor of
/// degree one on a compact tree.
pub fn tree_linear_system(tree: &Arc<Curve>, d: &Divisor) -> Result<GenSystem> {
    if !tree.is_tree() {
        return Err(Error::NotATree("target has a cycle".into()));
    }
    if !tree.is_compact() {
        return Err(Error::Unsupported("linear systems on trees with unbounded edges".into()));
    }
    if d.degree() != 1 {
        return Err(Error::WrongDegree { expected: 1, found: d.degree() });
    }
    let x0 = d
        .iter()
        .find(|(_, k)| *k > 0)
        .map(|(p, _)| p.clone())
        .expect("positive degree has a positive term");
    // (x0) = D + div w
    let mut w = PlFunction::zero(tree);
    for (y, c) in d.iter() {
        w = w.add(&path_function(tree, &x0, y)?.scale(-c)?)?;
    }
    let mut gens = vec![w.clone()];
    for y in tree.leaf_ends() {
        gens.push(path_function(tree, &x0, &y)?.add(&w)?);
    }
    GenSystem::new(tree, d.clone(), gens)?.minimize()
}
