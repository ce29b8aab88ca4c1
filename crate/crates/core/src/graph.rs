//! Finite simple graphs, the edge-list wire format, and the graph families
//! used by the family sweeps.
//!
//! Vertices are stored 0-based (`0..d`). Everything that crosses the process
//! boundary (edge-list text, reports, family vertex parameters) is 1-based.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold (adjacency rows are `u64` masks).
pub const MAX_VERTICES: usize = 64;

/// A finite simple graph on `d` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    d: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

/// A 2-colouring: every edge has one endpoint on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn new(d: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if d > MAX_VERTICES {
            return Err(Error::TooLarge(format!("{d} vertices (max {MAX_VERTICES})")));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", a + 1)));
            }
            if a >= d || b >= d {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} outside 1..{d}",
                    a + 1,
                    b + 1
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![0u64; d];
        for &(a, b) in &edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Graph { d, edges, adj })
    }

    pub fn empty(d: usize) -> Result<Self> {
        Graph::new(d, [])
    }

    /// Number of vertices.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Edges as sorted 0-based pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.d && b < self.d && self.adj[a] >> b & 1 == 1
    }

    /// Neighbourhood of `v` as a bitmask.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Mask with all `d` vertices set.
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.d)
    }

    /// A 2-colouring if one exists. Disconnected graphs are coloured per
    /// component; the lowest vertex of each component goes left.
    pub fn is_bipartite(&self) -> Option<Bipartition> {
        let mut color = vec![None; self.d];
        for start in 0..self.d {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for w in self.neighbors(v) {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (v, c) in color.into_iter().enumerate() {
            if c == Some(false) {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        Some(Bipartition { left, right })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_within(self.vertex_mask())
            .into_iter()
            .map(|m| bits(m).collect())
            .collect()
    }

    /// Components of the subgraph induced on `mask`, as masks.
    pub fn components_within(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & mask & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.d <= 1 || self.components_within(self.vertex_mask()).len() == 1
    }

    /// Whether the subgraph induced on `mask` has an odd cycle.
    pub fn induced_is_bipartite(&self, mask: u64) -> bool {
        let mut side = 0u64;
        let mut seen = 0u64;
        for comp in self.components_within(mask) {
            let start = comp.trailing_zeros() as usize;
            seen |= 1 << start;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let on_right = side >> v & 1 == 1;
                for w in bits(self.adj[v] & mask) {
                    if seen >> w & 1 == 0 {
                        seen |= 1 << w;
                        if !on_right {
                            side |= 1 << w;
                        }
                        queue.push_back(w);
                    } else if (side >> w & 1 == 1) == on_right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Subgraph induced on `vertices`, relabelled `0..|W|` in increasing
    /// order. The second value maps new labels back to the old ones.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut index: Vec<usize> = vertices.to_vec();
        index.sort_unstable();
        index.dedup();
        if index.is_empty() {
            return Err(Error::InvalidGraph("induced subgraph on an empty vertex set".into()));
        }
        if let Some(&v) = index.iter().find(|&&v| v >= self.d) {
            return Err(Error::InvalidGraph(format!("vertex {} outside 1..{}", v + 1, self.d)));
        }
        let mut relabel = vec![usize::MAX; self.d];
        for (new, &old) in index.iter().enumerate() {
            relabel[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| relabel[a] != usize::MAX && relabel[b] != usize::MAX)
            .map(|&(a, b)| (relabel[a], relabel[b]));
        Ok((Graph::new(index.len(), edges)?, index))
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        Graph::new(self.d, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    /// Edge-list text (1-based, newline terminated).
    pub fn render(&self) -> String {
        let mut s = format!("{} {}\n", self.d, self.edges.len());
        for &(a, b) in &self.edges {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }

    /// 1-based edge pairs, for reports.
    pub fn edges_one_based(&self) -> Vec<[usize; 2]> {
        self.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect()
    }
}

/// Parses the edge-list format: a header line `d m`, then `m` lines `i j`.
///
/// Blank lines are skipped. Duplicate edge lines collapse, so the header's
/// `m` counts lines rather than distinct edges.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let nums = parse_pair(hline, header)?;
    let (d, m) = (nums.0, nums.1);
    if d > MAX_VERTICES {
        return Err(Error::Parse { line: hline, msg: format!("{d} vertices exceeds {MAX_VERTICES}") });
    }
    let mut edges = Vec::with_capacity(m);
    for (n, line) in lines.by_ref().take(m) {
        let (i, j) = parse_pair(n, line)?;
        if i == j {
            return Err(Error::Parse { line: n, msg: format!("loop edge at vertex {i}") });
        }
        if i == 0 || j == 0 || i > d || j > d {
            return Err(Error::Parse { line: n, msg: format!("vertex out of range 1..{d}") });
        }
        edges.push((i - 1, j - 1));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("expected {m} edge lines, found {}", edges.len()),
        });
    }
    if let Some((n, _)) = lines.next() {
        return Err(Error::Parse { line: n, msg: "trailing content after edge list".into() });
    }
    Graph::new(d, edges)
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse { line, msg: "expected two integers".into() })?
            .parse()
            .map_err(|e| Error::Parse { line, msg: format!("bad integer: {e}") })
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(Error::Parse { line, msg: "expected two integers".into() });
    }
    Ok(pair)
}

/// Named graph families.
///
/// `Path(n)` is the path with `n` edges. `AttachPath` glues a path with
/// `length` new edges (and `length` new vertices) onto `vertex` (1-based) of
/// `base`. `TwoTrianglesPath(l)` joins one vertex of each of two disjoint
/// triangles by a path with `l` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Cycle(usize),
    Path(usize),
    Star(usize),
    AttachPath { base: Box<FamilySpec>, vertex: usize, length: usize },
    TwoTrianglesPath(usize),
}

impl FamilySpec {
    pub fn attach_path(base: FamilySpec, vertex: usize, length: usize) -> Self {
        FamilySpec::AttachPath { base: Box::new(base), vertex, length }
    }

    /// Short family name, as written in sweep tables.
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Complete(_) => "complete",
            FamilySpec::CompleteBipartite(..) => "complete_bipartite",
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Path(_) => "path",
            FamilySpec::Star(_) => "star",
            FamilySpec::AttachPath { .. } => "attach_path",
            FamilySpec::TwoTrianglesPath(_) => "two_triangles_path",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete(n) => write!(f, "complete({n})"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "complete_bipartite({a},{b})"),
            FamilySpec::Cycle(n) => write!(f, "cycle({n})"),
            FamilySpec::Path(n) => write!(f, "path({n})"),
            FamilySpec::Star(n) => write!(f, "star({n})"),
            FamilySpec::AttachPath { base, vertex, length } => {
                write!(f, "attach_path({base},{vertex},{length})")
            }
            FamilySpec::TwoTrianglesPath(l) => write!(f, "two_triangles_path({l})"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Accepts the `Display` syntax, e.g. `attach_path(complete(4),1,2)`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = SpecParser { s: s.as_bytes(), pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::InvalidFamily(format!("trailing input in {s:?}")));
        }
        Ok(spec)
    }
}

struct SpecParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl SpecParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::InvalidFamily(format!("expected '{}' at offset {}", c as char, self.pos)))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || matches!(self.s[self.pos], b'_' | b'-')) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).replace('-', "_")
    }

    fn number(&mut self) -> Result<usize> {
        let tok = self.ident();
        tok.parse().map_err(|_| Error::InvalidFamily(format!("expected a number, got {tok:?}")))
    }

    fn spec(&mut self) -> Result<FamilySpec> {
        let name = self.ident();
        self.expect(b'(')?;
        let spec = match name.as_str() {
            "complete" => FamilySpec::Complete(self.number()?),
            "complete_bipartite" => {
                let a = self.number()?;
                self.expect(b',')?;
                FamilySpec::CompleteBipartite(a, self.number()?)
            }
            "cycle" => FamilySpec::Cycle(self.number()?),
            "path" => FamilySpec::Path(self.number()?),
            "star" => FamilySpec::Star(self.number()?),
            "two_triangles_path" => FamilySpec::TwoTrianglesPath(self.number()?),
            "attach_path" => {
                let base = self.spec()?;
                self.expect(b',')?;
                let vertex = self.number()?;
                self.expect(b',')?;
                FamilySpec::attach_path(base, vertex, self.number()?)
            }
            other => return Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
        };
        self.expect(b')')?;
        Ok(spec)
    }
}

/// Builds the graph named by `spec`.
pub fn make_family(spec: &FamilySpec) -> Result<Graph> {
    let bad = |msg: &str| Err(Error::InvalidFamily(format!("{spec}: {msg}")));
    match *spec {
        FamilySpec::Complete(n) => {
            if n == 0 {
                return bad("needs at least one vertex");
            }
            Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
        }
        FamilySpec::CompleteBipartite(a, b) => {
            if a == 0 || b == 0 {
                return bad("both sides must be non-empty");
            }
            Graph::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
        }
        FamilySpec::Cycle(n) => {
            if n < 3 {
                return bad("a cycle needs at least 3 vertices");
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        FamilySpec::Path(n) => {
            if n == 0 {
                return bad("a path needs at least one edge");
            }
            Graph::new(n + 1, (0..n).map(|i| (i, i + 1)))
        }
        FamilySpec::Star(n) => {
            if n < 2 {
                return bad("a star needs at least 2 vertices");
            }
            Graph::new(n, (1..n).map(|i| (0, i)))
        }
        FamilySpec::AttachPath { ref base, vertex, length } => {
            let h = make_family(base)?;
            if vertex == 0 || vertex > h.d() {
                return bad("attachment vertex outside the base graph");
            }
            let d = h.d() + length;
            let mut edges = h.edges().to_vec();
            let mut prev = vertex - 1;
            for new in h.d()..d {
                edges.push((prev, new));
                prev = new;
            }
            Graph::new(d, edges)
        }
        FamilySpec::TwoTrianglesPath(l) => {
            if l == 0 {
                return bad("the joining path needs at least one edge");
            }
            // first triangle 0,1,2; path from 2 through 3..l+1 to l+2;
            // second triangle l+2, l+3, l+4
            let s = l + 2;
            let mut edges = vec![(0, 1), (0, 2), (1, 2), (s, s + 1), (s, s + 2), (s + 1, s + 2)];
            edges.extend((2..s).map(|v| (v, v + 1)));
            Graph::new(l + 5, edges)
        }
    }
}

pub(crate) fn full_mask(d: usize) -> u64 {
    if d >= 64 {
        u64::MAX
    } else {
        (1u64 << d) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}
