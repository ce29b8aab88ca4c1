//! Normality of the edge ring via the odd cycle condition.
//!
//! Only chordless odd cycles are enumerated: an odd cycle with a chord splits
//! into a shorter odd cycle on a subset of its vertices, so two disjoint
//! unbridged odd cycles always contain two disjoint unbridged chordless ones.

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// A chordless odd cycle, listed from its smallest vertex with the second
/// vertex smaller than the last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OddCycle {
    pub vertices: Vec<usize>,
}

impl OddCycle {
    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }
}

/// All chordless cycles of odd length, each once, sorted.
pub fn enumerate_minimal_odd_cycles(g: &Graph) -> Vec<OddCycle> {
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(g.d());
    for s in 0..g.d() {
        path.clear();
        path.push(s);
        extend_induced_path(g, s, &mut path, 1 << s, &mut out);
    }
    out.sort();
    out
}

fn extend_induced_path(g: &Graph, s: usize, path: &mut Vec<usize>, on_path: u64, out: &mut Vec<OddCycle>) {
    let last = *path.last().unwrap();
    // vertices adjacent to an interior path vertex would create a chord
    let interior = on_path & !(1 << s) & !(1 << last);
    let blocked = bits(interior).fold(0u64, |m, v| m | g.neighbor_mask(v));
    let higher = !((1u64 << s) | ((1u64 << s) - 1));
    let candidates = g.neighbor_mask(last) & higher & !on_path & !blocked;
    for v in bits(candidates) {
        let closes = path.len() >= 2 && g.has_edge(v, s);
        if closes {
            if path.len().is_multiple_of(2) && path[1] < v {
                let mut vertices = path.clone();
                vertices.push(v);
                out.push(OddCycle { vertices });
            }
            continue;
        }
        path.push(v);
        extend_induced_path(g, s, path, on_path | 1 << v, out);
        path.pop();
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Every two vertex-disjoint chordless odd cycles are joined by an edge.
pub fn satisfies_odd_cycle_condition(g: &Graph) -> Result<bool> {
    require_connected(g)?;
    let cycles = enumerate_minimal_odd_cycles(g);
    let masks: Vec<u64> = cycles.iter().map(OddCycle::mask).collect();
    let nbhd: Vec<u64> = masks.iter().map(|&m| bits(m).fold(0, |a, v| a | g.neighbor_mask(v))).collect();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if masks[i] & masks[j] == 0 && nbhd[i] & masks[j] == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `K[G]` is normal.
pub fn is_normal(g: &Graph) -> Result<bool> {
    require_connected(g)?;
    if g.is_bipartite().is_some() {
        return Ok(true);
    }
    satisfies_odd_cycle_condition(g)
}
