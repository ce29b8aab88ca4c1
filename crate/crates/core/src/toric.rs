//! Degree-bounded view of the toric ideal of `K[G]` through its fibers.
//!
//! A degree-`q` monomial in the edge variables is a multiset of `q` edges;
//! two monomials differ by an element of the toric ideal exactly when their
//! edge-vector sums agree. Inside one fiber, connect two monomials when they
//! share a variable: then `u - v = w (u' - v')` with `u', v'` in a fiber of
//! lower degree, so the binomial already lies in the ideal generated in lower
//! degrees. Each fiber therefore needs (components - 1) new minimal
//! generators.

use itertools::Itertools;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Upper bound on the number of degree-`q` monomials a fiber sweep may
/// materialise.
pub const DEFAULT_MONOMIAL_BUDGET: u64 = 4_000_000;

/// Monomials of one degree sharing an edge-vector sum. Monomials are sorted
/// multisets of edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub multidegree: Vec<i64>,
    pub monomials: Vec<Vec<usize>>,
}

/// A minimal generator count at one multidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorRecord {
    pub degree: u32,
    pub multidegree: Vec<i64>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorProfile {
    /// Degrees of the minimal binomial generators, with multiplicity, sorted.
    pub degrees: Vec<u32>,
    /// Generators were searched in every degree up to this bound.
    pub complete_up_to: u32,
    pub records: Vec<GeneratorRecord>,
}

impl GeneratorProfile {
    pub fn generator_count(&self) -> usize {
        self.degrees.len()
    }
}

pub fn multiset_count(edges: usize, q: u32) -> u64 {
    // C(edges + q - 1, q), saturating
    let n = edges as u128 + q as u128 - 1;
    let k = q as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Every degree-`q` fiber, including singletons, sorted by multidegree.
pub fn fiber_partition(g: &Graph, q: u32, budget: u64) -> Result<Vec<Fiber>> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    if g.d() > 16 || q > 255 {
        return Err(Error::TooLarge(format!("fibers need d <= 16 and q <= 255 (d = {}, q = {q})", g.d())));
    }
    let total = multiset_count(g.edge_count(), q);
    if total > budget {
        return Err(Error::BudgetExceeded(format!("{total} monomials of degree {q} exceed the budget of {budget}")));
    }
    let step: Vec<u128> = g.edges().iter().map(|&(a, b)| 1u128 << (8 * a) | 1u128 << (8 * b)).collect();
    let mut groups: FxHashMap<u128, Vec<Vec<usize>>> = FxHashMap::default();
    for mono in (0..g.edge_count()).combinations_with_replacement(q as usize) {
        let key = mono.iter().map(|&e| step[e]).sum();
        groups.entry(key).or_default().push(mono);
    }
    let d = g.d();
    let mut out: Vec<Fiber> = groups
        .into_iter()
        .map(|(key, monomials)| Fiber {
            multidegree: (0..d).map(|i| (key >> (8 * i) & 0xff) as i64).collect(),
            monomials,
        })
        .collect();
    out.sort_by(|a, b| a.multidegree.cmp(&b.multidegree));
    Ok(out)
}

/// Degree-`q` fibers with at least two monomials.
pub fn fibers(g: &Graph, q: u32) -> Result<Vec<Fiber>> {
    fibers_with_budget(g, q, DEFAULT_MONOMIAL_BUDGET)
}

pub fn fibers_with_budget(g: &Graph, q: u32, budget: u64) -> Result<Vec<Fiber>> {
    if q == 0 {
        return Err(Error::NotApplicable("fibers start at degree 1".into()));
    }
    let mut all = fiber_partition(g, q, budget)?;
    all.retain(|f| f.monomials.len() >= 2);
    Ok(all)
}

/// Connected components of the fiber graph (monomials adjacent when they
/// share an edge variable).
pub fn fiber_components(fiber: &Fiber, edge_count: usize) -> usize {
    let n = fiber.monomials.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut holder: Vec<Option<usize>> = vec![None; edge_count];
    let mut components = n;
    for (i, mono) in fiber.monomials.iter().enumerate() {
        for &e in mono {
            match holder[e] {
                None => holder[e] = Some(i),
                Some(j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                        components -= 1;
                    }
                }
            }
        }
    }
    components
}

/// Minimal generator degrees of the toric ideal in degrees `2..=q_max`.
pub fn minimal_generator_degrees(g: &Graph, q_max: u32) -> Result<GeneratorProfile> {
    minimal_generator_degrees_with_budget(g, q_max, DEFAULT_MONOMIAL_BUDGET)
}

pub fn minimal_generator_degrees_with_budget(g: &Graph, q_max: u32, budget: u64) -> Result<GeneratorProfile> {
    if q_max < 2 {
        return Err(Error::NotApplicable("generator search needs a degree bound of at least 2".into()));
    }
    let mut records = Vec::new();
    for q in 2..=q_max {
        for fiber in fibers_with_budget(g, q, budget)? {
            let extra = fiber_components(&fiber, g.edge_count()) - 1;
            if extra > 0 {
                records.push(GeneratorRecord { degree: q, multidegree: fiber.multidegree, count: extra });
            }
        }
    }
    let mut degrees: Vec<u32> = records.iter().flat_map(|r| std::iter::repeat_n(r.degree, r.count)).collect();
    degrees.sort_unstable();
    Ok(GeneratorProfile { degrees, complete_up_to: q_max, records })
}

/// Regularity of `K[G]` when its toric ideal is generated by a single
/// binomial of degree `D` (as far as degree `q_max` shows): `D - 1`.
pub fn principal_regularity(g: &Graph, q_max: u32) -> Result<Option<u32>> {
    Ok(principal_regularity_from(&minimal_generator_degrees(g, q_max)?))
}

pub fn principal_regularity_from(profile: &GeneratorProfile) -> Option<u32> {
    match profile.degrees.as_slice() {
        [d] => Some(d - 1),
        _ => None,
    }
}
