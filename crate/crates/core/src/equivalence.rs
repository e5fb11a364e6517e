//! Linear equivalence of divisors.
//!
//! A degree-zero divisor `E` is principal iff the Laplace equation
//! `div f = E` on a model graph containing `supp E` has a solution with
//! integral slopes. Reduced divisors give a normal form for the class.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::curve::{Curve, Length, Point};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::plfunc::PlFunction;
use crate::rational::{as_integer, lcm_denominators, qi, Q};

/// Largest discretized model on which reduced divisors are computed.
pub const MAX_MODEL_NODES: usize = 200_000;

/// Cuts every edge at the interior support points of `d`.
fn support_cuts(d: &Divisor) -> BTreeMap<usize, BTreeSet<Q>> {
    let mut cuts: BTreeMap<usize, BTreeSet<Q>> = BTreeMap::new();
    for (p, _) in d.iter() {
        if let Point::Interior { edge, offset } = p {
            cuts.entry(*edge).or_default().insert(offset.clone());
        }
    }
    cuts
}

/// Solves `A x = b` for a square nonsingular matrix.
fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Vec<Q> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("reduced Laplacian is nonsingular");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Q::one() / &a[col][col];
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    (0..n).map(|i| &b[i] / &a[i][i]).collect()
}

/// A function `f` with `div f = e`, if one exists. Unique up to an
/// additive constant; the returned one vanishes at vertex 0 (or at the
/// start of the first edge when vertex 0 is at infinity).
pub fn principal_witness(curve: &Arc<Curve>, e: &Divisor) -> Result<Option<PlFunction>> {
    for (p, _) in e.iter() {
        curve.check_point(p)?;
    }
    if e.degree() != 0 {
        return Ok(None);
    }
    let sub = curve.subdivide(&support_cuts(e));
    let model = &sub.refined;
    let target = e.refine(&sub);
    let finite: Vec<usize> = (0..model.vertices().len())
        .filter(|&v| !model.vertices()[v].at_infinity)
        .collect();
    let mut slot = vec![usize::MAX; model.vertices().len()];
    for (i, &v) in finite.iter().enumerate() {
        slot[v] = i;
    }
    let n = finite.len();
    // Row i: sum over finite edges of (f(w) - f(v)) / l = E(v) - sum of ray slopes.
    let mut lap = vec![vec![Q::zero(); n]; n];
    let mut rhs: Vec<Q> = finite.iter().map(|&v| qi(target.get(&Point::Vertex(v)))).collect();
    for edge in model.edges() {
        match &edge.length {
            Length::Finite(l) => {
                if edge.from == edge.to {
                    continue;
                }
                let w = Q::one() / l;
                let (a, b) = (slot[edge.from], slot[edge.to]);
                lap[a][a] -= &w;
                lap[b][b] -= &w;
                lap[a][b] += &w;
                lap[b][a] += &w;
            }
            Length::Infinite => {
                let slope = -target.get(&Point::Vertex(edge.to));
                rhs[slot[edge.from]] -= qi(slope);
            }
        }
    }
    let values = if n == 1 {
        vec![Q::zero()]
    } else {
        let reduced: Vec<Vec<Q>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
        let mut v = vec![Q::zero()];
        v.extend(solve(reduced, rhs[1..].to_vec()));
        v
    };
    let mut samples = Vec::with_capacity(model.edges().len());
    for edge in model.edges() {
        let fu = values[slot[edge.from]].clone();
        match &edge.length {
            Length::Finite(l) => {
                let fv = values[slot[edge.to]].clone();
                if as_integer(&((&fv - &fu) / l)).is_none() {
                    return Ok(None);
                }
                samples.push((vec![(Q::zero(), fu), (l.clone(), fv)], None));
            }
            Length::Infinite => {
                samples.push((vec![(Q::zero(), fu)], Some(-target.get(&Point::Vertex(edge.to)))));
            }
        }
    }
    let refined_curve = Arc::new(model.clone());
    let f = PlFunction::from_samples(&refined_curve, samples)?.coarsen(curve, &sub);
    debug_assert_eq!(&f.principal_divisor()?, e);
    Ok(Some(f))
}

/// Whether `d ~ d2`; the witness `w` satisfies `d2 = d + div w`.
pub fn linearly_equivalent(curve: &Arc<Curve>, d: &Divisor, d2: &Divisor) -> Result<Option<PlFunction>> {
    principal_witness(curve, &(d2 - d))
}

/// Base point used for reduced divisors: start of the edge with the
/// smallest id.
pub fn base_point(curve: &Curve) -> Point {
    let e = (0..curve.edges().len())
        .min_by(|&a, &b| curve.edge(a).id.cmp(&curve.edge(b).id))
        .map(|e| curve.edge(e).from)
        .unwrap_or(0);
    Point::Vertex(e)
}

/// A finite multigraph with unit edges discretizing a curve.
struct Lattice {
    adj: Vec<Vec<usize>>,
    /// Curve point of each node.
    points: Vec<Point>,
}

/// The `q`-reduced divisor linearly equivalent to `d`, with `q` the
/// [`base_point`]. Unbounded edges are contracted to their finite end
/// first, since every point of a ray is equivalent to its base.
pub fn reduced_divisor(curve: &Arc<Curve>, d: &Divisor) -> Result<Divisor> {
    for (p, _) in d.iter() {
        curve.check_point(p)?;
    }
    let ray_base = |p: &Point| -> Point {
        match p {
            Point::Vertex(v) if curve.vertices()[*v].at_infinity => {
                let (e, _) = curve.incidence(*v)[0];
                Point::Vertex(curve.edge(e).from)
            }
            Point::Interior { edge, .. } if curve.edge(*edge).length.is_infinite() => {
                Point::Vertex(curve.edge(*edge).from)
            }
            _ => p.clone(),
        }
    };
    let d = Divisor::from_terms(d.iter().map(|(p, k)| (ray_base(p), k)));
    let lengths = curve.edges().iter().filter_map(|e| e.length.finite());
    let offsets: Vec<Q> = d
        .iter()
        .filter_map(|(p, _)| match p {
            Point::Interior { offset, .. } => Some(offset.clone()),
            _ => None,
        })
        .collect();
    let denom = lcm_denominators(lengths.chain(offsets.iter()));
    let delta = Q::new(1.into(), denom);
    let lattice = build_lattice(curve, &delta)?;
    let node_of: BTreeMap<Point, usize> =
        lattice.points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut chips = vec![0i64; lattice.points.len()];
    for (p, k) in d.iter() {
        chips[node_of[p]] += k;
    }
    let Point::Vertex(qv) = base_point(curve) else { unreachable!() };
    let root = node_of[&Point::Vertex(qv)];
    make_effective_away(&lattice.adj, root, &mut chips);
    burn_until_reduced(&lattice.adj, root, &mut chips);
    Ok(Divisor::from_terms(
        chips.iter().enumerate().filter(|(_, k)| **k != 0).map(|(i, k)| (lattice.points[i].clone(), *k)),
    ))
}

fn build_lattice(curve: &Curve, delta: &Q) -> Result<Lattice> {
    let mut points: Vec<Point> = Vec::new();
    let mut vnode = vec![usize::MAX; curve.vertices().len()];
    for (v, vx) in curve.vertices().iter().enumerate() {
        if !vx.at_infinity {
            vnode[v] = points.len();
            points.push(Point::Vertex(v));
        }
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (e, edge) in curve.edges().iter().enumerate() {
        let Length::Finite(l) = &edge.length else { continue };
        let m = (l / delta).to_integer().to_usize().unwrap_or(usize::MAX);
        if points.len().saturating_add(m) > MAX_MODEL_NODES {
            return Err(Error::Unsupported(format!(
                "discretized model exceeds {MAX_MODEL_NODES} nodes"
            )));
        }
        let mut prev = vnode[edge.from];
        for k in 1..m {
            let node = points.len();
            points.push(Point::Interior { edge: e, offset: delta * qi(k as i64) });
            edges.push((prev, node));
            prev = node;
        }
        edges.push((prev, vnode[edge.to]));
    }
    let mut adj = vec![Vec::new(); points.len()];
    for (a, b) in edges {
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    Ok(Lattice { adj, points })
}

/// Fires sets closer to `root` until every node other than `root` holds
/// a nonnegative number of chips.
fn make_effective_away(adj: &[Vec<usize>], root: usize, chips: &mut [i64]) {
    let n = adj.len();
    let mut level = vec![usize::MAX; n];
    level[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if level[w] == usize::MAX {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let max_level = level.iter().copied().max().unwrap_or(0);
    for k in (1..=max_level).rev() {
        loop {
            // Each node at level k receives at least one chip per firing.
            let need = (0..n)
                .filter(|&v| level[v] == k && chips[v] < 0)
                .map(|v| -chips[v])
                .max();
            let Some(times) = need else { break };
            for v in 0..n {
                if level[v] >= k {
                    continue;
                }
                for &w in &adj[v] {
                    if level[w] >= k {
                        chips[v] -= times;
                        chips[w] += times;
                    }
                }
            }
        }
    }
}

/// Dhar's burning algorithm: fire the unburnt set until everything burns.
fn burn_until_reduced(adj: &[Vec<usize>], root: usize, chips: &mut [i64]) {
    let n = adj.len();
    loop {
        let mut burnt = vec![false; n];
        let mut heat = vec![0i64; n];
        burnt[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if burnt[w] {
                    continue;
                }
                heat[w] += 1;
                if heat[w] > chips[w] {
                    burnt[w] = true;
                    stack.push(w);
                }
            }
        }
        if burnt.iter().all(|&b| b) {
            return;
        }
        let out: Vec<i64> = (0..n)
            .map(|v| if burnt[v] { 0 } else { adj[v].iter().filter(|&&w| burnt[w]).count() as i64 })
            .collect();
        let times = (0..n)
            .filter(|&v| !burnt[v] && out[v] > 0)
            .map(|v| Integer::div_floor(&chips[v], &out[v]))
            .min()
            .unwrap_or(1)
            .max(1);
        for v in 0..n {
            if burnt[v] {
                continue;
            }
            for &w in &adj[v] {
                if burnt[w] {
                    chips[v] -= times;
                    chips[w] += times;
                }
            }
        }
    }
}

/// Whether `d ~ d2`, decided by comparing reduced divisors.
pub fn equivalent_by_reduction(curve: &Arc<Curve>, d: &Divisor, d2: &Divisor) -> Result<bool> {
    if d.degree() != d2.degree() {
        return Ok(false);
    }
    Ok(reduced_divisor(curve, d)? == reduced_divisor(curve, d2)?)
}

/// Checks that a witness really relates two divisors.
pub fn check_witness(d: &Divisor, d2: &Divisor, w: &PlFunction) -> Result<bool> {
    Ok(&(d + &w.principal_divisor()?) == d2)
}
