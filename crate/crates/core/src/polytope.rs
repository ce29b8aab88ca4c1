//! The edge polytope `P_G = conv{e_i + e_j : {i,j} in E(G)}`.
//!
//! Facets are computed in a coordinate chart of the affine span: the
//! coordinates at pivot columns of the vertex difference matrix are kept,
//! the rest are affine functions of them. Inside the chart the polytope is
//! full-dimensional and its facets are the extreme rays of the cone
//! `{(a, c) : a.y + c >= 0 for every vertex y}`, found by the double
//! description method in exact integer arithmetic.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::linalg::{self, primitive, primitive_from_rational, rref, Q};

/// Where a facet inequality came from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// `x_i >= 0` at a regular (non-bipartite) or ordinary (bipartite) vertex.
    Coordinate(usize),
    /// `sum_{N(T)} x >= sum_T x` for a fundamental independent set `T`.
    Fundamental { t: Vec<usize>, neighbors: Vec<usize> },
    /// `sum_W x >= sum_U x` where `W, U` split the component left after
    /// removing an acceptable `T` and its neighbours.
    Acceptable { w: Vec<usize>, u: Vec<usize> },
    /// Computed from the vertex set by the hull algorithm.
    Hull,
}

fn fmt_set(f: &mut fmt::Formatter<'_>, s: &[usize]) -> fmt::Result {
    write!(f, "{{")?;
    for (k, v) in s.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{}", v + 1)?;
    }
    write!(f, "}}")
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Coordinate(i) => write!(f, "coordinate({})", i + 1),
            Provenance::Fundamental { t, neighbors } => {
                write!(f, "fundamental(")?;
                fmt_set(f, t)?;
                write!(f, ",")?;
                fmt_set(f, neighbors)?;
                write!(f, ")")
            }
            Provenance::Acceptable { w, u } => {
                write!(f, "acceptable(")?;
                fmt_set(f, w)?;
                write!(f, ",")?;
                fmt_set(f, u)?;
                write!(f, ")")
            }
            Provenance::Hull => write!(f, "hull"),
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `normal . x >= offset`, valid on `P_G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetInequality {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub provenance: Provenance,
}

impl FacetInequality {
    /// Value of `normal . x - q * offset`; non-negative on `qP`.
    pub fn slack(&self, x: &[i64], q: i64) -> i64 {
        linalg::dot(&self.normal, x) - q * self.offset
    }
}

/// `coefficients . x = rhs` on `P_G` (scaled by `q` on `qP`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HullEquation {
    pub coefficients: Vec<i64>,
    pub rhs: i64,
}

/// Where a lattice point sits relative to a dilation `qP`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// Coordinates for the affine span: `kept` coordinates are free, each
/// dropped coordinate `j` equals `constant + sum_k coeff[k] * x_kept[k]`.
#[derive(Clone, Debug)]
struct Chart {
    kept: Vec<usize>,
    dropped: Vec<(usize, Q, Vec<Q>)>,
}

impl Chart {
    fn new(d: usize, equations: &[HullEquation], kept: Vec<usize>) -> Chart {
        let dropped_idx: Vec<usize> = (0..d).filter(|c| !kept.contains(c)).collect();
        // columns ordered dropped, kept, rhs so the pivots land on dropped
        let order: Vec<usize> = dropped_idx.iter().chain(&kept).copied().collect();
        let mut m: Vec<Vec<Q>> = equations
            .iter()
            .map(|e| {
                let mut row: Vec<Q> = order.iter().map(|&c| Q::from_integer(e.coefficients[c] as i128)).collect();
                row.push(Q::from_integer(e.rhs as i128));
                row
            })
            .collect();
        let pivots = rref(&mut m);
        debug_assert_eq!(pivots, (0..dropped_idx.len()).collect::<Vec<_>>());
        let nd = dropped_idx.len();
        let dropped = dropped_idx
            .iter()
            .enumerate()
            .map(|(r, &j)| {
                let coeff = (0..kept.len()).map(|k| -m[r][nd + k]).collect();
                (j, m[r][nd + kept.len()], coeff)
            })
            .collect();
        Chart { kept, dropped }
    }

    fn project(&self, x: &[i64]) -> Vec<i64> {
        self.kept.iter().map(|&k| x[k]).collect()
    }

    /// Rewrites `a . x >= b` in chart coordinates and returns the primitive
    /// integer vector `(a', b')`; equal outputs mean equal halfspaces of the
    /// affine span.
    fn reduce(&self, normal: &[i64], offset: i64) -> Vec<i64> {
        let mut a: Vec<Q> = self.kept.iter().map(|&k| Q::from_integer(normal[k] as i128)).collect();
        let mut b = Q::from_integer(offset as i128);
        for (j, constant, coeff) in &self.dropped {
            let w = Q::from_integer(normal[*j] as i128);
            if w.is_zero() {
                continue;
            }
            for (ak, ck) in a.iter_mut().zip(coeff) {
                *ak += w * ck;
            }
            b -= w * constant;
        }
        a.push(b);
        primitive_from_rational(&a)
    }
}

#[derive(Clone, Debug)]
pub struct EdgePolytope {
    d: usize,
    vertices: Vec<Vec<i64>>,
    dim: usize,
    hull_equations: Vec<HullEquation>,
    bipartite_left: Option<Vec<usize>>,
    chart: Chart,
    facets: Vec<FacetInequality>,
}

/// Affine equations of the span of `P_G` for a connected graph: the
/// coordinate sum is 2, and for bipartite graphs the left side sums to 1.
fn span_equations(g: &Graph) -> (Vec<HullEquation>, Option<Vec<usize>>) {
    let d = g.d();
    let mut eqs = vec![HullEquation { coefficients: vec![1; d], rhs: 2 }];
    let left = g.is_bipartite().map(|b| b.left);
    if let Some(left) = &left {
        let mut c = vec![0; d];
        for &v in left {
            c[v] = 1;
        }
        eqs.push(HullEquation { coefficients: c, rhs: 1 });
    }
    (eqs, left)
}

fn edge_vertex(d: usize, (a, b): (usize, usize)) -> Vec<i64> {
    let mut v = vec![0; d];
    v[a] = 1;
    v[b] = 1;
    v
}

impl EdgePolytope {
    /// Builds `P_G` with its dimension, span equations and hull facets.
    pub fn new(g: &Graph) -> Result<Self> {
        let mut p = EdgePolytope::without_facets(g)?;
        p.facets = hull_facets(&p)?;
        Ok(p)
    }

    fn without_facets(g: &Graph) -> Result<Self> {
        if g.edge_count() == 0 {
            return Err(Error::NoEdges);
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let d = g.d();
        let vertices: Vec<Vec<i64>> = g.edges().iter().map(|&e| edge_vertex(d, e)).collect();
        let diffs: Vec<Vec<i64>> =
            vertices[1..].iter().map(|v| v.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect()).collect();
        let mut m = linalg::to_rational(&diffs);
        let kept = if diffs.is_empty() { Vec::new() } else { rref(&mut m) };
        let dim = kept.len();
        let (hull_equations, bipartite_left) = span_equations(g);
        if dim + hull_equations.len() != d {
            return Err(Error::Internal(format!(
                "rank dimension {dim} disagrees with {} span equations in R^{d}",
                hull_equations.len()
            )));
        }
        for v in &vertices {
            for e in &hull_equations {
                if linalg::dot(&e.coefficients, v) != e.rhs {
                    return Err(Error::Internal("vertex off its span equation".into()));
                }
            }
        }
        let chart = Chart::new(d, &hull_equations, kept);
        Ok(EdgePolytope { d, vertices, dim, hull_equations, bipartite_left, chart, facets: Vec::new() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Vertex vectors, one per edge, in edge order.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hull_equations(&self) -> &[HullEquation] {
        &self.hull_equations
    }

    /// Left side of the bipartition, for bipartite graphs.
    pub fn bipartite_left(&self) -> Option<&[usize]> {
        self.bipartite_left.as_deref()
    }

    /// Hull facets, lexicographic by normal.
    pub fn facets(&self) -> &[FacetInequality] {
        &self.facets
    }

    /// Canonical key of the halfspace `normal . x >= offset` within the
    /// affine span.
    pub fn halfspace_key(&self, normal: &[i64], offset: i64) -> Vec<i64> {
        self.chart.reduce(normal, offset)
    }

    /// Set of canonical halfspace keys of `ineqs`.
    pub fn halfspace_set(&self, ineqs: &[FacetInequality]) -> BTreeSet<Vec<i64>> {
        ineqs.iter().map(|f| self.halfspace_key(&f.normal, f.offset)).collect()
    }

    /// Classifies `point` against `qP`.
    pub fn contains(&self, q: u32, point: &[i64]) -> Result<Location> {
        if point.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: point.len() });
        }
        let q = q as i64;
        for e in &self.hull_equations {
            if linalg::dot(&e.coefficients, point) != q * e.rhs {
                return Ok(Location::Outside);
            }
        }
        let mut strict = true;
        for f in &self.facets {
            match f.slack(point, q).cmp(&0) {
                Ordering::Less => return Ok(Location::Outside),
                Ordering::Equal => strict = false,
                Ordering::Greater => {}
            }
        }
        Ok(if strict { Location::Interior } else { Location::Boundary })
    }
}

/// Facets of `conv(p.vertices)` within its affine span.
pub fn facets(p: &EdgePolytope) -> Vec<FacetInequality> {
    p.facets.clone()
}

fn hull_facets(p: &EdgePolytope) -> Result<Vec<FacetInequality>> {
    if p.dim == 0 {
        return Ok(Vec::new());
    }
    let points: Vec<Vec<i64>> = p.vertices.iter().map(|v| p.chart.project(v)).collect();
    let rays = double_description(&points, p.dim)?;
    let mut out: Vec<FacetInequality> = rays
        .into_iter()
        .map(|r| {
            let mut normal = vec![0; p.d];
            for (k, &c) in p.chart.kept.iter().enumerate() {
                normal[c] = r[k];
            }
            FacetInequality { normal, offset: -r[p.dim], provenance: Provenance::Hull }
        })
        .collect();
    out.sort_by(|a, b| a.normal.cmp(&b.normal).then(a.offset.cmp(&b.offset)));
    Ok(out)
}

struct Ray {
    v: Vec<i64>,
    zeros: u128,
}

/// Extreme rays `(a, c)` of `{z : (y_k, 1) . z >= 0}` for points `y_k`
/// affinely spanning `R^dim`, i.e. the facets `a . y >= -c` of their hull.
fn double_description(points: &[Vec<i64>], dim: usize) -> Result<Vec<Vec<i64>>> {
    if points.len() > 128 {
        return Err(Error::TooLarge(format!("{} polytope vertices (max 128)", points.len())));
    }
    let rows: Vec<Vec<i64>> = points
        .iter()
        .map(|y| {
            let mut r = y.clone();
            r.push(1);
            r
        })
        .collect();
    let n = dim + 1;

    // greedy basis of n independent rows
    let mut basis: Vec<usize> = Vec::with_capacity(n);
    for k in 0..rows.len() {
        let mut trial: Vec<Vec<i64>> = basis.iter().map(|&b| rows[b].clone()).collect();
        trial.push(rows[k].clone());
        if linalg::rank(&trial) == trial.len() {
            basis.push(k);
            if basis.len() == n {
                break;
            }
        }
    }
    if basis.len() != n {
        return Err(Error::Internal("vertices do not span the chart".into()));
    }

    let mut rays: Vec<Ray> = Vec::with_capacity(n);
    for (i, &bi) in basis.iter().enumerate() {
        let others: Vec<Vec<i64>> =
            basis.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &b)| rows[b].clone()).collect();
        let mut v = linalg::kernel(&others, n).pop().expect("kernel of a corank-one matrix");
        if linalg::dot(&rows[bi], &v) < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let zeros = basis.iter().enumerate().filter(|&(j, _)| j != i).fold(0u128, |z, (_, &b)| z | 1 << b);
        rays.push(Ray { v, zeros });
    }

    for (k, row) in rows.iter().enumerate() {
        if basis.contains(&k) {
            continue;
        }
        let vals: Vec<i64> = rays.iter().map(|r| linalg::dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros & rays[q].zeros;
                if (common.count_ones() as usize) + 2 < n {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|r| r == p || r == q || common & !rays[r].zeros != 0);
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (vals[p] as i128, -(vals[q] as i128));
                let combined: Vec<i128> =
                    rays[p].v.iter().zip(&rays[q].v).map(|(&a, &b)| vp * b as i128 + vq * a as i128).collect();
                next.push(Ray { v: primitive(&combined), zeros: common | 1 << k });
            }
        }
        for (i, r) in rays.into_iter().enumerate() {
            match vals[i].cmp(&0) {
                Ordering::Greater => next.push(r),
                Ordering::Equal => next.push(Ray { v: r.v, zeros: r.zeros | 1 << k }),
                Ordering::Less => {}
            }
        }
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.v).filter(|v| v[..dim].iter().any(|&x| x != 0)).collect())
}

/// Facet inequalities predicted from the graph structure: coordinate facets
/// at regular/ordinary vertices and the independent-set facets of
/// fundamental/acceptable sets. Duplicated halfspaces are listed once.
pub fn predicted_facets(g: &Graph) -> Result<Vec<FacetInequality>> {
    let p = EdgePolytope::without_facets(g)?;
    if p.dim == 0 {
        return Ok(Vec::new());
    }
    let d = g.d();
    let all = g.vertex_mask();
    let mut out = Vec::new();
    let coordinate = |i: usize| {
        let mut normal = vec![0; d];
        normal[i] = 1;
        FacetInequality { normal, offset: 0, provenance: Provenance::Coordinate(i) }
    };
    let signed = |plus: u64, minus: u64| {
        let mut normal = vec![0; d];
        bits(plus).for_each(|v| normal[v] = 1);
        bits(minus).for_each(|v| normal[v] = -1);
        normal
    };
    let neighbors_of = |t: u64| bits(t).fold(0u64, |m, v| m | g.neighbor_mask(v));
    // the bipartite graph induced by T: vertex set T + N(T), edges between them
    let induced_bipartite_connected = |t: u64, nt: u64| {
        let mut comp = 1u64 << t.trailing_zeros();
        loop {
            let grow = bits(comp).fold(comp, |m, v| {
                let side = if t >> v & 1 == 1 { nt } else { t };
                m | (g.neighbor_mask(v) & side)
            });
            if grow == comp {
                return comp == t | nt;
            }
            comp = grow;
        }
    };

    match p.bipartite_left.clone() {
        None => {
            for i in 0..d {
                let rest = all & !(1 << i);
                if g.components_within(rest).iter().all(|&c| !g.induced_is_bipartite(c)) {
                    out.push(coordinate(i));
                }
            }
            for t in 1..=all {
                if !is_independent(g, t) {
                    continue;
                }
                let nt = neighbors_of(t);
                if !induced_bipartite_connected(t, nt) {
                    continue;
                }
                let rest = all & !(t | nt);
                if g.components_within(rest).iter().all(|&c| !g.induced_is_bipartite(c)) {
                    out.push(FacetInequality {
                        normal: signed(nt, t),
                        offset: 0,
                        provenance: Provenance::Fundamental { t: bits(t).collect(), neighbors: bits(nt).collect() },
                    });
                }
            }
        }
        Some(left) => {
            for i in 0..d {
                if g.components_within(all & !(1 << i)).len() == 1 {
                    out.push(coordinate(i));
                }
            }
            let left_mask = left.iter().fold(0u64, |m, &v| m | 1 << v);
            let right_mask = all & !left_mask;
            for t in subsets(left_mask) {
                let nt = neighbors_of(t);
                if !induced_bipartite_connected(t, nt) {
                    continue;
                }
                let rest = all & !(t | nt);
                let comps = g.components_within(rest);
                let has_edge = bits(rest).any(|v| g.neighbor_mask(v) & rest != 0);
                if comps.len() == 1 && has_edge {
                    let (w, u) = (left_mask & !t, right_mask & !nt);
                    out.push(FacetInequality {
                        normal: signed(w, u),
                        offset: 0,
                        provenance: Provenance::Acceptable { w: bits(w).collect(), u: bits(u).collect() },
                    });
                }
            }
        }
    }

    let mut seen = BTreeSet::new();
    out.retain(|f| seen.insert(p.halfspace_key(&f.normal, f.offset)));
    Ok(out)
}

fn is_independent(g: &Graph, t: u64) -> bool {
    bits(t).all(|v| g.neighbor_mask(v) & t == 0)
}

/// Non-empty subsets of `mask`.
fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut s = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = s;
        if s == 0 {
            return None;
        }
        s = (s - 1) & mask;
        if s == 0 {
            done = true;
        }
        Some(cur)
    })
}

/// Convenience: build `P_G`.
pub fn edge_polytope(g: &Graph) -> Result<EdgePolytope> {
    EdgePolytope::new(g)
}
