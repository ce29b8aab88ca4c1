//! Connected graphs on a few vertices, one per isomorphism class.
//!
//! Every connected graph on `n` vertices has a non-cut vertex, so extending
//! each class on `n - 1` vertices by a new vertex with every non-empty
//! neighbourhood reaches every class on `n` vertices. Duplicates are removed
//! by a canonical code: the smallest adjacency code over all vertex orders
//! that respect a refinement by degree and neighbour degrees.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, Graph};

/// Enumeration is limited to this many vertices (codes are `u128`).
pub const MAX_ENUM_VERTICES: usize = 10;

fn code(g: &Graph, label: &[usize]) -> u128 {
    let d = g.d();
    g.edges().iter().fold(0u128, |c, &(a, b)| {
        let (x, y) = (label[a].min(label[b]), label[a].max(label[b]));
        c | 1u128 << (x * d + y)
    })
}

/// Canonical code: equal codes iff isomorphic graphs (same `d`).
pub fn canonical_code(g: &Graph) -> u128 {
    let d = g.d();
    let invariant = |v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).map(|w| g.degree(w)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let mut order: Vec<usize> = (0..d).collect();
    let inv: Vec<_> = (0..d).map(invariant).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let cells: Vec<Vec<usize>> =
        order.into_iter().chunk_by(|&v| inv[v].clone()).into_iter().map(|(_, c)| c.collect()).collect();

    let mut best = u128::MAX;
    let mut label = vec![0usize; d];
    let choices = cells.iter().map(|c| c.iter().copied().permutations(c.len()).collect::<Vec<_>>());
    for arrangement in choices.multi_cartesian_product() {
        let mut pos = 0;
        for cell in &arrangement {
            for &v in cell {
                label[v] = pos;
                pos += 1;
            }
        }
        best = best.min(code(g, &label));
    }
    if cells.is_empty() {
        best = 0;
    }
    best
}

fn from_code(d: usize, c: u128) -> Graph {
    let edges = (0..d).flat_map(|x| (x + 1..d).map(move |y| (x, y))).filter(|&(x, y)| c >> (x * d + y) & 1 == 1);
    Graph::new(d, edges).expect("canonical code decodes to a simple graph")
}

/// Relabels `g` into the vertex order realising its canonical code.
pub fn canonical_form(g: &Graph) -> Graph {
    from_code(g.d(), canonical_code(g))
}

/// One representative per isomorphism class of connected graphs on exactly
/// `n` vertices, in canonical form, sorted by canonical code.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUM_VERTICES {
        return Err(Error::TooLarge(format!("graph enumeration supports at most {MAX_ENUM_VERTICES} vertices")));
    }
    let mut level = vec![Graph::empty(1)?];
    if n == 0 {
        return Ok(Vec::new());
    }
    for m in 2..=n {
        let candidates: Vec<(u128, Graph)> = level
            .par_iter()
            .flat_map_iter(|h| {
                let new = m - 1;
                (1..=full_mask(new)).map(move |nbhd| {
                    let edges = h.edges().iter().copied().chain(bits(nbhd).map(|v| (v, new)));
                    let g = Graph::new(m, edges).expect("extension stays simple");
                    (canonical_code(&g), g)
                })
            })
            .collect();
        let unique: BTreeMap<u128, ()> = candidates.into_iter().map(|(c, _)| (c, ())).collect();
        level = unique.into_keys().map(|c| from_code(m, c)).collect();
    }
    Ok(level)
}

/// Connected graphs on `2..=n_max` vertices, smallest first.
pub fn connected_graphs_upto(n_max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}
