//! Maximum matchings in general graphs and minimum edge covers.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Pairwise vertex-disjoint edges, as sorted 0-based pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

/// Edges whose endpoints cover every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCover {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Whether the edges are pairwise disjoint edges of `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut used = 0u64;
        self.edges.iter().all(|&(a, b)| {
            let m = 1u64 << a | 1u64 << b;
            let ok = g.has_edge(a, b) && used & m == 0;
            used |= m;
            ok
        })
    }
}

impl EdgeCover {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let covered = self.edges.iter().fold(0u64, |m, &(a, b)| m | 1 << a | 1 << b);
        self.edges.iter().all(|&(a, b)| g.has_edge(a, b)) && covered == g.vertex_mask()
    }
}

/// Maximum matching by Edmonds' blossom contraction.
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.d();
    let mut mate = vec![usize::MAX; n];
    // greedy start
    for &(a, b) in g.edges() {
        if mate[a] == usize::MAX && mate[b] == usize::MAX {
            mate[a] = b;
            mate[b] = a;
        }
    }
    let mut search = BlossomSearch::new(n);
    for root in 0..n {
        if mate[root] == usize::MAX {
            if let Some(end) = search.find_augmenting_path(g, &mate, root) {
                // flip along the alternating path ending at `end`
                let mut v = end;
                while v != usize::MAX {
                    let pv = search.parent[v];
                    let next = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = next;
                }
            }
        }
    }
    let edges = (0..n).filter(|&v| mate[v] != usize::MAX && v < mate[v]).map(|v| (v, mate[v])).collect();
    Matching { edges }
}

struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![usize::MAX; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == usize::MAX {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// BFS over alternating trees from `root`; returns the free vertex that
    /// ends an augmenting path, with `parent` describing the path.
    fn find_augmenting_path(&mut self, g: &Graph, mate: &[usize], root: usize) -> Option<usize> {
        let n = mate.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = usize::MAX);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != usize::MAX && self.parent[mate[to]] != usize::MAX) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == usize::MAX {
                    self.parent[to] = v;
                    if mate[to] == usize::MAX {
                        return Some(to);
                    }
                    let m = mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}

/// `mat(G)`.
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).len()
}

/// Minimum edge cover: a maximum matching plus one edge at every unmatched
/// vertex, of size `d - mat(G)`.
pub fn min_edge_cover(g: &Graph) -> Result<EdgeCover> {
    let m = maximum_matching(g);
    let mut covered = 0u64;
    let mut edges = m.edges.clone();
    for &(a, b) in &m.edges {
        covered |= 1 << a | 1 << b;
    }
    for v in 0..g.d() {
        if covered >> v & 1 == 1 {
            continue;
        }
        // an unmatched vertex only has matched neighbours, otherwise the
        // matching would not be maximum
        let w = g.neighbors(v).next().ok_or(Error::IsolatedVertex(v + 1))?;
        edges.push((v.min(w), v.max(w)));
        covered |= 1 << v;
    }
    edges.sort_unstable();
    Ok(EdgeCover { edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilySpec};

    fn family(s: FamilySpec) -> Graph {
        make_family(&s).unwrap()
    }

    #[test]
    fn paper_family_matching_numbers() {
        assert_eq!(matching_number(&family(FamilySpec::Complete(3))), 1);
        assert_eq!(matching_number(&family(FamilySpec::Complete(6))), 3);
        assert_eq!(matching_number(&family(FamilySpec::CompleteBipartite(3, 3))), 3);
        assert_eq!(matching_number(&family(FamilySpec::Path(3))), 2);
        assert_eq!(matching_number(&family(FamilySpec::Cycle(4))), 2);
        for l in 1..8 {
            let g = family(FamilySpec::TwoTrianglesPath(l));
            assert_eq!(matching_number(&g), 2 + l.div_ceil(2), "l = {l}");
        }
    }

    #[test]
    fn blossom_is_needed() {
        // odd cycle 0-1-2-3-4 with a pendant at 0 and at 2: greedy picks (0,1),(2,3)
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (2, 6)]).unwrap();
        let m = maximum_matching(&g);
        assert!(m.is_valid_in(&g));
        assert_eq!(m.len(), 3);
    }

    #[test]
    fn edge_cover_examples() {
        for (spec, size) in [(FamilySpec::Complete(3), 2), (FamilySpec::Cycle(4), 2), (FamilySpec::Star(4), 3)] {
            let g = family(spec);
            let c = min_edge_cover(&g).unwrap();
            assert!(c.is_valid_in(&g));
            assert_eq!(c.len(), size);
        }
    }

    #[test]
    fn isolated_vertex_has_no_cover() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(min_edge_cover(&g), Err(Error::IsolatedVertex(3))));
    }
}
