mod common;

use edgering::enumerate::connected_graphs_upto;
use edgering::matching::{matching_number, maximum_matching, min_edge_cover};
use edgering::{Error, Graph};
use rand::prelude::*;

fn check_against_oracles(g: &Graph) {
    let m = maximum_matching(g);
    assert!(m.is_valid_in(g), "{:?}", g.edges());
    let best = common::all_matchings(g).iter().map(Vec::len).max().unwrap();
    assert_eq!(m.len(), best, "{:?}", g.edges());
    assert_eq!(common::brute_matching_number(g), best);
    match common::brute_min_cover(g) {
        Some(mu) => {
            let cover = min_edge_cover(g).unwrap();
            assert!(cover.is_valid_in(g));
            assert_eq!(cover.len(), mu);
            assert_eq!(mu + best, g.d(), "Gallai identity");
        }
        None => assert!(matches!(min_edge_cover(g), Err(Error::IsolatedVertex(_)))),
    }
}

#[test]
fn all_connected_graphs_up_to_seven_vertices() {
    for g in connected_graphs_upto(7).unwrap() {
        check_against_oracles(&g);
    }
}

#[test]
fn random_graphs_up_to_ten_vertices() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..1000 {
        let d = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.9);
        let g = common::random_graph(&mut rng, d, p);
        check_against_oracles(&g);
    }
}

#[test]
fn dense_random_graphs_have_near_perfect_matchings() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..50 {
        let g = common::random_connected_graph(&mut rng, 10, 0.8);
        assert_eq!(matching_number(&g), common::brute_matching_number(&g));
    }
}
