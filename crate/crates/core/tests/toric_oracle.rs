use std::collections::HashMap;

use edgering::ehrhart::Dilations;
use edgering::toric::{fiber_partition, minimal_generator_degrees, multiset_count, DEFAULT_MONOMIAL_BUDGET};
use edgering::{make_family, FamilySpec, Graph};
use itertools::Itertools;

const P: i64 = 1_000_000_007;

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % P + P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: i64, mut e: i64) -> i64 {
    let mut acc = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn monomials(g: &Graph, q: usize) -> Vec<Vec<usize>> {
    (0..g.edge_count()).combinations_with_replacement(q).collect()
}

fn weight(g: &Graph, mono: &[usize]) -> Vec<usize> {
    let mut w = vec![0; g.d()];
    for &e in mono {
        let (a, b) = g.edges()[e];
        w[a] += 1;
        w[b] += 1;
    }
    w
}

/// Number of minimal generators of degree `q`: `dim I_q - dim (m I_{q-1})`,
/// computed by linear algebra in the monomial basis of degree `q`.
fn generators_in_degree(g: &Graph, q: usize) -> usize {
    let basis = monomials(g, q);
    let index: HashMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let fibers_q = basis.iter().map(|m| weight(g, m)).unique().count();
    let dim_i = basis.len() - fibers_q;

    let mut by_weight: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
    for m in monomials(g, q - 1) {
        by_weight.entry(weight(g, &m)).or_default().push(m);
    }
    let mut rows = Vec::new();
    for fiber in by_weight.values().filter(|f| f.len() > 1) {
        for v in &fiber[1..] {
            for e in 0..g.edge_count() {
                let times = |m: &Vec<usize>| {
                    let mut m = m.clone();
                    m.push(e);
                    m.sort_unstable();
                    index[&m]
                };
                let mut row = vec![0i64; basis.len()];
                row[times(&fiber[0])] = 1;
                row[times(v)] = P - 1;
                rows.push(row);
            }
        }
    }
    dim_i - if rows.is_empty() { 0 } else { rank_mod_p(rows) }
}

#[test]
fn generator_counts_match_linear_algebra() {
    for (spec, q_max) in [
        (FamilySpec::Cycle(4), 4),
        (FamilySpec::Complete(4), 4),
        (FamilySpec::CompleteBipartite(2, 3), 3),
        (FamilySpec::TwoTrianglesPath(1), 4),
    ] {
        let g = make_family(&spec).unwrap();
        let profile = minimal_generator_degrees(&g, q_max).unwrap();
        for q in 2..=q_max {
            let ours = profile.degrees.iter().filter(|&&d| d == q).count();
            assert_eq!(ours, generators_in_degree(&g, q as usize), "{spec} degree {q}");
        }
    }
}

#[test]
fn fibers_partition_all_monomials() {
    for spec in [FamilySpec::Complete(5), FamilySpec::Cycle(6), FamilySpec::TwoTrianglesPath(2)] {
        let g = make_family(&spec).unwrap();
        let dil = Dilations::new(&g).unwrap();
        let hilbert = dil.hilbert_function_upto(4).unwrap();
        for q in 1..=4u32 {
            let fibers = fiber_partition(&g, q, DEFAULT_MONOMIAL_BUDGET).unwrap();
            let total: usize = fibers.iter().map(|f| f.monomials.len()).sum();
            assert_eq!(total as u64, multiset_count(g.edge_count(), q));
            // one fiber per distinct sum of q edge vectors
            assert_eq!(fibers.len() as u64, hilbert[q as usize]);
            let relations: usize = fibers.iter().map(|f| f.monomials.len() - 1).sum();
            assert_eq!(hilbert[q as usize] + relations as u64, multiset_count(g.edge_count(), q));
        }
    }
}
