//! Brute-force reference computations shared by the test targets. None of
//! these call into the library beyond reading a graph's edge list.

#![allow(dead_code)]

use std::collections::HashMap;

use edgering::Graph;
use rand::prelude::*;

/// Maximum matching size by recursion on the lowest uncovered vertex,
/// memoised over vertex subsets.
pub fn brute_matching_number(g: &Graph) -> usize {
    fn go(g: &Graph, mask: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = go(g, rest, memo);
        for &(a, b) in g.edges() {
            let u = if a == v { b } else if b == v { a } else { continue };
            if rest >> u & 1 == 1 {
                best = best.max(1 + go(g, rest & !(1 << u), memo));
            }
        }
        memo.insert(mask, best);
        best
    }
    let full = if g.d() == 64 { u64::MAX } else { (1u64 << g.d()) - 1 };
    go(g, full, &mut HashMap::new())
}

/// Every matching (as edge index lists), by exhaustive branching over edges.
pub fn all_matchings(g: &Graph) -> Vec<Vec<usize>> {
    fn go(g: &Graph, i: usize, used: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == g.edges().len() {
            out.push(cur.clone());
            return;
        }
        go(g, i + 1, used, cur, out);
        let (a, b) = g.edges()[i];
        if used >> a & 1 == 0 && used >> b & 1 == 0 {
            cur.push(i);
            go(g, i + 1, used | 1 << a | 1 << b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(g, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Minimum edge cover size by breadth-first search over covered-vertex sets;
/// `None` when some vertex is isolated.
pub fn brute_min_cover(g: &Graph) -> Option<usize> {
    let d = g.d();
    let full = (1u64 << d) - 1;
    let mut dist = vec![usize::MAX; 1 << d];
    dist[0] = 0;
    let mut frontier = vec![0u64];
    let mut steps = 0;
    while !frontier.is_empty() {
        if frontier.contains(&full) {
            return Some(steps);
        }
        steps += 1;
        let mut next = Vec::new();
        for &m in &frontier {
            for &(a, b) in g.edges() {
                let n = m | 1 << a | 1 << b;
                if dist[n as usize] == usize::MAX {
                    dist[n as usize] = steps;
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    None
}

/// Whether some closed walk of odd length exists, by trying every 2-colouring.
pub fn brute_has_odd_cycle(g: &Graph) -> bool {
    let d = g.d();
    !(0u64..1 << d).any(|c| g.edges().iter().all(|&(a, b)| (c >> a & 1) != (c >> b & 1)))
}

/// Uniform random graph with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, d: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect();
    Graph::new(d, edges).unwrap()
}

/// Random connected graph: a random spanning tree plus random extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, d: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..d {
        edges.push((rng.gen_range(0..v), v));
    }
    for a in 0..d {
        for b in a + 1..d {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    Graph::new(d, edges).unwrap().relabel(&perm).unwrap()
}

/// Whether `x ∈ q·conv(vertices)`. By Carathéodory it suffices to find a
/// basis among the vertices (all of them lie on one hyperplane `Σ = 2`, so
/// linear and affine independence coincide) in whose cone `x` lies; the
/// coordinates then automatically sum to `q` when `Σ x = 2q`.
pub fn in_dilated_hull(vertices: &[Vec<i64>], q: i64, x: &[i64]) -> bool {
    use itertools::Itertools;
    use num_rational::Ratio;
    type R = Ratio<i128>;
    if x.iter().sum::<i64>() != 2 * q {
        return false;
    }
    let d = x.len();
    // solve  Σ λ_k v_k = x  for the chosen columns; None if inconsistent or dependent
    let solve = |cols: &[usize]| -> Option<Vec<R>> {
        let k = cols.len();
        let mut m: Vec<Vec<R>> = (0..d)
            .map(|i| cols.iter().map(|&c| R::from_integer(vertices[c][i] as i128)).chain([R::from_integer(x[i] as i128)]).collect())
            .collect();
        let mut row = 0;
        for col in 0..k {
            let p = (row..d).find(|&r| m[r][col] != R::from_integer(0))?;
            m.swap(row, p);
            let piv = m[row][col];
            for c in 0..=k {
                m[row][c] /= piv;
            }
            for r in 0..d {
                if r != row && m[r][col] != R::from_integer(0) {
                    let f = m[r][col];
                    for c in 0..=k {
                        let delta = f * m[row][c];
                        m[r][c] -= delta;
                    }
                }
            }
            row += 1;
        }
        if m[row..].iter().any(|r| r[k] != R::from_integer(0)) {
            return None;
        }
        Some((0..k).map(|i| m[i][k]).collect())
    };
    let all: Vec<usize> = (0..vertices.len()).collect();
    let rank = rank_of(vertices, &all);
    (0..vertices.len())
        .combinations(rank)
        .filter(|c| independent(vertices, c))
        .any(|c| solve(&c).is_some_and(|l| l.iter().all(|v| *v >= R::from_integer(0))))
}

fn independent(vertices: &[Vec<i64>], cols: &[usize]) -> bool {
    rank_of(vertices, cols) == cols.len()
}

fn rank_of(vertices: &[Vec<i64>], cols: &[usize]) -> usize {
    use num_rational::Ratio;
    let mut m: Vec<Vec<Ratio<i128>>> =
        cols.iter().map(|&c| vertices[c].iter().map(|&v| Ratio::from_integer(v as i128)).collect()).collect();
    let d = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..d {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != Ratio::from_integer(0)) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][col] != Ratio::from_integer(0) {
                let f = m[r][col] / m[rank][col];
                for c in 0..d {
                    let delta = f * m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
