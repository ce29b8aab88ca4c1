mod common;

use edgering::{parse_graph, Graph};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=12).prop_flat_map(|d| {
        proptest::collection::vec((0..d, 0..d), 0..30)
            .prop_map(move |pairs| Graph::new(d, pairs.into_iter().filter(|(a, b)| a != b)).unwrap())
    })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(g in arb_graph()) {
        prop_assert_eq!(parse_graph(&g.render()).unwrap(), g);
    }

    #[test]
    fn components_partition_vertices(g in arb_graph()) {
        let comps = g.connected_components();
        let mut seen: Vec<usize> = comps.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.d()).collect::<Vec<_>>());
        for &(a, b) in g.edges() {
            prop_assert!(comps.iter().any(|c| c.contains(&a) && c.contains(&b)));
        }
    }

    #[test]
    fn relabelling_preserves_edge_count(g in arb_graph(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.d()).collect();
        perm.shuffle(&mut StdRng::seed_from_u64(seed));
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(h.edge_count(), g.edge_count());
        prop_assert_eq!(h.is_bipartite().is_some(), g.is_bipartite().is_some());
    }
}

#[test]
fn bipartiteness_matches_exhaustive_colouring() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..500 {
        let d = rng.gen_range(1..=10);
        let p = rng.gen_range(0.05..0.6);
        let g = common::random_graph(&mut rng, d, p);
        match g.is_bipartite() {
            Some(b) => {
                assert!(!common::brute_has_odd_cycle(&g));
                let mut all: Vec<usize> = b.left.iter().chain(&b.right).copied().collect();
                all.sort_unstable();
                assert_eq!(all, (0..d).collect::<Vec<_>>());
                for &(x, y) in g.edges() {
                    assert_ne!(b.left.contains(&x), b.left.contains(&y));
                }
            }
            None => assert!(common::brute_has_odd_cycle(&g)),
        }
    }
}

#[test]
fn induced_bipartiteness_agrees_with_subgraph() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..200 {
        let g = common::random_graph(&mut rng, 8, 0.4);
        let mask: u64 = rng.gen_range(0..256);
        let verts: Vec<usize> = (0..8).filter(|v| mask >> v & 1 == 1).collect();
        let (h, _) = g.induced_subgraph(&verts).unwrap();
        assert_eq!(g.induced_is_bipartite(mask), !common::brute_has_odd_cycle(&h));
    }
}

#[test]
fn malformed_input_reports_line() {
    for (text, line) in [("2 1\n1 1", 2), ("3 2\n1 2\n2 4", 3), ("3 1\n1 x", 2), ("3 2\n1 2", 0)] {
        let err = parse_graph(text).unwrap_err().to_string();
        if line > 0 {
            assert!(err.contains(&format!("line {line}")), "{text:?}: {err}");
        }
    }
}
