//! Lattice points of dilations of `P_G`, the integer decomposition property,
//! the Hilbert function of `K[G]`, and the h*-vector.
//!
//! Two independent routes produce point sets: the geometric one walks the
//! integer vectors on the scaled span equations and filters them through the
//! hull facets; the algebraic one takes `q`-fold sums of edge vectors. They
//! coincide for every `q` exactly when `P_G` has the integer decomposition
//! property.

use std::ops::ControlFlow;

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching;
use crate::normality;
use crate::polytope::{EdgePolytope, Location};

/// Points are packed eight bits per coordinate for hashing.
const MAX_PACKED_DIM: usize = 16;
const MAX_PACKED_Q: u32 = 255;

pub type Point = Vec<i64>;

fn pack(x: &[i64]) -> u128 {
    x.iter().enumerate().fold(0u128, |k, (i, &v)| k | (v as u128) << (8 * i))
}

fn unpack(key: u128, d: usize) -> Point {
    (0..d).map(|i| (key >> (8 * i) & 0xff) as i64).collect()
}

fn check_packable(d: usize, q: u32) -> Result<()> {
    if d > MAX_PACKED_DIM || q > MAX_PACKED_Q {
        return Err(Error::TooLarge(format!(
            "lattice enumeration supports d <= {MAX_PACKED_DIM} and q <= {MAX_PACKED_Q} (got d = {d}, q = {q})"
        )));
    }
    Ok(())
}

/// Walks the lattice points of `qP` coordinate by coordinate.
///
/// Every coordinate belongs to one sum group (all coordinates summing to
/// `2q`, or the two bipartition sides each summing to `q`). A branch is cut
/// as soon as some facet can no longer be satisfied: the best the unassigned
/// coordinates can add to `a . x` is the remaining group sum times the
/// largest positive coefficient left in that group.
struct Walker {
    d: usize,
    q: i32,
    facets: usize,
    groups: usize,
    group: Vec<usize>,
    last_in_group: Vec<bool>,
    /// `coef[k * facets + f]`: coefficient of coordinate `k` in facet `f`.
    coef: Vec<i32>,
    bounds: Vec<i32>,
    /// `best[(k * groups + g) * facets + f]`: largest positive coefficient of
    /// facet `f` among coordinates `k..d` of group `g`.
    best: Vec<i32>,
}

impl Walker {
    fn new(p: &EdgePolytope, q: u32) -> Self {
        let d = p.d();
        let (group, groups) = match p.bipartite_left() {
            Some(left) => ((0..d).map(|v| usize::from(!left.contains(&v))).collect::<Vec<_>>(), 2),
            None => (vec![0; d], 1),
        };
        let last_in_group = (0..d).map(|k| !(k + 1..d).any(|j| group[j] == group[k])).collect();
        let facets = p.facets().len();
        let mut coef = vec![0i32; d * facets];
        for (f, ineq) in p.facets().iter().enumerate() {
            for k in 0..d {
                coef[k * facets + f] = ineq.normal[k] as i32;
            }
        }
        let bounds = p.facets().iter().map(|f| (f.offset * q as i64) as i32).collect();
        let mut best = vec![0i32; (d + 1) * groups * facets];
        for k in (0..d).rev() {
            let (head, tail) = best.split_at_mut((k + 1) * groups * facets);
            let row = &mut head[k * groups * facets..];
            row.copy_from_slice(&tail[..groups * facets]);
            let g = group[k];
            for f in 0..facets {
                let slot = &mut row[g * facets + f];
                *slot = (*slot).max(coef[k * facets + f]);
            }
        }
        Walker { d, q: q as i32, facets, groups, group, last_in_group, coef, bounds, best }
    }

    fn walk<F>(&self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[i64], Location) -> ControlFlow<()>,
    {
        let mut x = vec![0i64; self.d];
        let mut remaining = if self.groups == 1 { vec![2 * self.q] } else { vec![self.q, self.q] };
        let mut partial = vec![0i32; self.facets];
        self.step(0, &mut x, &mut remaining, &mut partial, visit)
    }

    fn feasible(&self, k: usize, remaining: &[i32], partial: &[i32]) -> bool {
        let nf = self.facets;
        let base = k * self.groups * nf;
        if self.groups == 1 {
            let (r, best) = (remaining[0], &self.best[base..base + nf]);
            partial.iter().zip(best).zip(&self.bounds).all(|((&v, &b), &lim)| v + r * b >= lim)
        } else {
            let (b0, b1) = (&self.best[base..base + nf], &self.best[base + nf..base + 2 * nf]);
            let (r0, r1) = (remaining[0], remaining[1]);
            (0..nf).all(|f| partial[f] + r0 * b0[f] + r1 * b1[f] >= self.bounds[f])
        }
    }

    fn step<F>(&self, k: usize, x: &mut [i64], remaining: &mut [i32], partial: &mut [i32], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[i64], Location) -> ControlFlow<()>,
    {
        if k == self.d {
            let mut strict = true;
            for (&v, &lim) in partial.iter().zip(&self.bounds) {
                if v < lim {
                    return ControlFlow::Continue(());
                }
                strict &= v > lim;
            }
            return visit(x, if strict { Location::Interior } else { Location::Boundary });
        }
        let g = self.group[k];
        let (lo, hi) = if self.last_in_group[k] { (remaining[g], remaining[g]) } else { (0, remaining[g].min(self.q)) };
        if lo > self.q {
            return ControlFlow::Continue(());
        }
        let nf = self.facets;
        let col = &self.coef[k * nf..(k + 1) * nf];
        for v in lo..=hi {
            x[k] = v as i64;
            remaining[g] -= v;
            if v > 0 {
                partial.iter_mut().zip(col).for_each(|(p, &c)| *p += c * v);
            }
            let flow = if self.feasible(k + 1, remaining, partial) {
                self.step(k + 1, x, remaining, partial, visit)
            } else {
                ControlFlow::Continue(())
            };
            if v > 0 {
                partial.iter_mut().zip(col).for_each(|(p, &c)| *p -= c * v);
            }
            remaining[g] += v;
            flow?;
        }
        x[k] = 0;
        ControlFlow::Continue(())
    }
}

/// Lattice-point machinery bound to one graph and its edge polytope.
#[derive(Clone, Debug)]
pub struct Dilations<'g> {
    g: &'g Graph,
    p: EdgePolytope,
}

impl<'g> Dilations<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        let p = EdgePolytope::new(g)?;
        check_packable(g.d(), 0)?;
        Ok(Dilations { g, p })
    }

    pub fn from_polytope(g: &'g Graph, p: EdgePolytope) -> Result<Self> {
        check_packable(g.d(), 0)?;
        Ok(Dilations { g, p })
    }

    pub fn polytope(&self) -> &EdgePolytope {
        &self.p
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    /// Visits every lattice point of `qP` with its location; stops early on
    /// `Break`.
    pub fn for_each_point<F>(&self, q: u32, mut visit: F) -> Result<()>
    where
        F: FnMut(&[i64], Location) -> ControlFlow<()>,
    {
        check_packable(self.g.d(), q)?;
        if q == 0 {
            let origin = vec![0; self.g.d()];
            let _ = visit(&origin, if self.p.dim() == 0 { Location::Interior } else { Location::Boundary });
            return Ok(());
        }
        let _ = Walker::new(&self.p, q).walk(&mut visit);
        Ok(())
    }

    /// `qP ∩ Z^d`, sorted lexicographically.
    pub fn lattice_points(&self, q: u32) -> Result<Vec<Point>> {
        let mut out = Vec::new();
        self.for_each_point(q, |x, _| {
            out.push(x.to_vec());
            ControlFlow::Continue(())
        })?;
        out.sort();
        Ok(out)
    }

    /// Packed lattice points of `qP`, sorted.
    fn lattice_keys(&self, q: u32) -> Result<Vec<u128>> {
        let mut out = Vec::new();
        self.for_each_point(q, |x, _| {
            out.push(pack(x));
            ControlFlow::Continue(())
        })?;
        out.sort_unstable();
        Ok(out)
    }

    /// `(|qP ∩ Z^d|, |interior points|)`.
    pub fn count(&self, q: u32) -> Result<(u64, u64)> {
        let (mut all, mut interior) = (0u64, 0u64);
        self.for_each_point(q, |_, loc| {
            all += 1;
            interior += u64::from(loc == Location::Interior);
            ControlFlow::Continue(())
        })?;
        Ok((all, interior))
    }

    /// Some interior lattice point of `qP`, if any.
    pub fn interior_point(&self, q: u32) -> Result<Option<Point>> {
        let mut found = None;
        self.for_each_point(q, |x, loc| {
            if loc == Location::Interior {
                found = Some(x.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(found)
    }

    /// Sum sets `S_0 = {0}`, `S_{k+1} = S_k + {edge vectors}` for `k < q_max`.
    /// Packed sum sets.
    fn sumset_layers(&self, q_max: u32) -> Result<Vec<FxHashSet<u128>>> {
        check_packable(self.g.d(), q_max)?;
        let steps: Vec<u128> = self.g.edges().iter().map(|&(a, b)| 1u128 << (8 * a) | 1u128 << (8 * b)).collect();
        let mut layers = vec![FxHashSet::from_iter([0u128])];
        for _ in 0..q_max {
            let prev = layers.last().unwrap();
            let mut next = FxHashSet::with_capacity_and_hasher(prev.len() * 2, Default::default());
            for &k in prev {
                next.extend(steps.iter().map(|&s| k + s));
            }
            layers.push(next);
        }
        Ok(layers)
    }

    /// All sums of `q` edge vectors, sorted.
    pub fn idp_points(&self, q: u32) -> Result<Vec<Point>> {
        let layers = self.sumset_layers(q)?;
        let mut out: Vec<Point> = layers[q as usize].iter().map(|&k| unpack(k, self.g.d())).collect();
        out.sort();
        Ok(out)
    }

    /// `dim_K K[G]_q` for `q = 0..=q_max`.
    pub fn hilbert_function_upto(&self, q_max: u32) -> Result<Vec<u64>> {
        Ok(self.sumset_layers(q_max)?.iter().map(|s| s.len() as u64).collect())
    }

    /// Whether sums of edge vectors fill every `qP ∩ Z^d` for `q <= q_max`.
    pub fn check_idp(&self, q_max: u32) -> Result<bool> {
        let layers = self.sumset_layers(q_max)?;
        for q in 1..=q_max {
            let sums = &layers[q as usize];
            let lattice = self.lattice_keys(q)?;
            if lattice.len() != sums.len() || !lattice.iter().all(|k| sums.contains(k)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First `q` in `1..=q_max` where the lattice points are not all sums of
    /// edge vectors, with one such point.
    pub fn first_hole(&self, q_max: u32) -> Result<Option<(u32, Point)>> {
        let layers = self.sumset_layers(q_max)?;
        for q in 1..=q_max {
            let sums = &layers[q as usize];
            let mut holes: Vec<Point> = self
                .lattice_keys(q)?
                .into_iter()
                .filter(|k| !sums.contains(k))
                .map(|k| unpack(k, self.g.d()))
                .collect();
            holes.sort();
            if let Some(h) = holes.into_iter().next() {
                return Ok(Some((q, h)));
            }
        }
        Ok(None)
    }

    pub fn profile(&self) -> Result<EhrhartProfile> {
        EhrhartProfile::compute(self)
    }

    /// Least `q >= 1` with an interior lattice point in `qP`, searching from
    /// `q = μ(G)`; only valid for normal `K[G]`.
    pub fn min_interior_q(&self) -> Result<u32> {
        require_normal(self.g)?;
        let mu = (self.g.d() - matching::matching_number(self.g)).max(1) as u32;
        let limit = self.p.dim() as u32 + 1;
        for q in mu..=limit {
            if self.interior_point(q)?.is_some() {
                return Ok(q);
            }
        }
        Err(Error::Internal(format!("no interior lattice point in qP for {mu} <= q <= {limit}")))
    }
}

fn require_normal(g: &Graph) -> Result<()> {
    if normality::is_normal(g)? {
        Ok(())
    } else {
        Err(Error::NotApplicable("K[G] is not normal".into()))
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Ehrhart data of `P_G` over the window `q = 0..=dim + 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhrhartProfile {
    pub counts: Vec<u64>,
    pub interior_counts: Vec<u64>,
    pub min_interior_q: Option<u32>,
    pub h_star: Vec<i64>,
    pub s: usize,
    pub krull_dim: usize,
}

impl EhrhartProfile {
    fn compute(dil: &Dilations<'_>) -> Result<Self> {
        let dim = dil.p.dim();
        let window = dim as u32 + 2;
        let mut counts = Vec::with_capacity(window as usize + 1);
        let mut interior_counts = Vec::with_capacity(window as usize + 1);
        for q in 0..=window {
            let (all, interior) = if q == 0 { (1, 0) } else { dil.count(q)? };
            counts.push(all);
            interior_counts.push(interior);
        }
        let min_interior_q = (1..=window).find(|&q| interior_counts[q as usize] > 0);
        let h_full = h_vector(&counts, dim);
        if h_full[dim + 1..].iter().any(|&h| h != 0) {
            return Err(Error::Internal(format!("h*-coefficients beyond degree {dim} are {:?}", &h_full[dim + 1..])));
        }
        let mut h_star = h_full[..=dim].to_vec();
        while h_star.len() > 1 && *h_star.last().unwrap() == 0 {
            h_star.pop();
        }
        Ok(EhrhartProfile { counts, interior_counts, min_interior_q, s: h_star.len() - 1, h_star, krull_dim: dim + 1 })
    }

    /// `Σ h_i`, the normalised volume.
    pub fn normalized_volume(&self) -> i64 {
        self.h_star.iter().sum()
    }

    /// Interior counts predicted from h* by reciprocity:
    /// `L°(q) = Σ_i h_i C(q - (D + 1 - i) + D, D)` with `D = dim`.
    pub fn reciprocity_interior_counts(&self) -> Vec<u64> {
        let dim = (self.krull_dim - 1) as i64;
        (0..self.counts.len() as i64)
            .map(|q| {
                if q == 0 {
                    return 0;
                }
                self.h_star
                    .iter()
                    .enumerate()
                    .map(|(i, &h)| h * binomial(q - (dim + 1 - i as i64) + dim, dim))
                    .sum::<i64>() as u64
            })
            .collect()
    }
}

/// `h_i = Σ_{j<=i} (-1)^j C(dim+1, j) L(i-j)` for every `i` the counts allow.
fn h_vector(counts: &[u64], dim: usize) -> Vec<i64> {
    let n = dim as i64 + 1;
    (0..counts.len())
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * binomial(n, j as i64) * counts[i - j] as i64
                })
                .sum()
        })
        .collect()
}

/// `qP_G ∩ Z^d`, sorted.
pub fn lattice_points(g: &Graph, q: u32) -> Result<Vec<Point>> {
    Dilations::new(g)?.lattice_points(q)
}

/// Sums of `q` edge vectors, sorted.
pub fn idp_points(g: &Graph, q: u32) -> Result<Vec<Point>> {
    Dilations::new(g)?.idp_points(q)
}

/// Number of degree-`q` monomials of `K[G]`.
pub fn hilbert_function(g: &Graph, q: u32) -> Result<u64> {
    Ok(Dilations::new(g)?.hilbert_function_upto(q)?[q as usize])
}

pub fn check_idp(g: &Graph, q_max: u32) -> Result<bool> {
    Dilations::new(g)?.check_idp(q_max)
}

pub fn min_interior_q(g: &Graph) -> Result<u32> {
    Dilations::new(g)?.min_interior_q()
}

/// h*-vector of `P_G`, which is the Hilbert series numerator of `K[G]` when
/// the edge ring is normal.
pub fn h_star(g: &Graph) -> Result<Vec<i64>> {
    require_normal(g)?;
    let profile = Dilations::new(g)?.profile()?;
    if let Some(h) = profile.h_star.iter().find(|&&h| h < 0) {
        return Err(Error::Internal(format!("negative h*-coefficient {h} for a normal edge ring")));
    }
    Ok(profile.h_star)
}

/// `reg K[G]` for normal `K[G]`: the degree of h*, cross-checked against
/// `dim P + 1 - min_interior_q`.
pub fn regularity_normal(g: &Graph) -> Result<u32> {
    require_normal(g)?;
    let dil = Dilations::new(g)?;
    let profile = dil.profile()?;
    regularity_from(&dil, &profile)
}

pub(crate) fn regularity_from(dil: &Dilations<'_>, profile: &EhrhartProfile) -> Result<u32> {
    if let Some(h) = profile.h_star.iter().find(|&&h| h < 0) {
        return Err(Error::Internal(format!("negative h*-coefficient {h} for a normal edge ring")));
    }
    let q0 = dil.min_interior_q()?;
    let s = profile.s as u32;
    if s + q0 != profile.krull_dim as u32 {
        return Err(Error::Internal(format!(
            "deg h* = {s} but dim P + 1 - min interior q = {} - {q0}",
            profile.krull_dim
        )));
    }
    Ok(s)
}
