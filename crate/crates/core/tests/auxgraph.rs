mod common;

use std::collections::BTreeSet;

use colorpair::auxgraph::{check_unique_shared_neighbor, edge_lower_bound_report, shares_vertex};
use colorpair::coloring::{greedy_random, rainbow, round_robin};
use colorpair::matchings::count_cross_matchings;
use colorpair::{AuxGraph, Equipartition, Rational};
use proptest::prelude::*;

#[test]
fn edges_match_definition() {
    for coloring in common::corpus(4, 16, 2) {
        let n = coloring.n();
        for seed in 0..3 {
            let p = Equipartition::sample(n, seed).unwrap();
            let aux = AuxGraph::build(&coloring, &p).unwrap();
            let got: BTreeSet<_> = aux.edges().collect();
            assert_eq!(got, common::aux_edges_scan(&coloring, &p), "n = {n}");
            assert_eq!(
                aux.edge_count() as u64,
                count_cross_matchings(&coloring, &p).unwrap()
            );
        }
    }
}

#[test]
fn sides_use_the_right_parts() {
    let c = round_robin(12).unwrap();
    let p = Equipartition::sample(12, 5).unwrap();
    let aux = AuxGraph::build(&c, &p).unwrap();
    for (a, b) in aux.edges() {
        assert_eq!([p.part_of(a.0), p.part_of(a.1)], [0, 1]);
        assert_eq!([p.part_of(b.0), p.part_of(b.1)], [2, 3]);
        assert!(!shares_vertex(a, b));
    }
    let left: BTreeSet<_> = aux.left().iter().copied().collect();
    assert_eq!(left.len(), aux.left().len());
}

#[test]
fn unique_shared_neighbor_on_corpus() {
    for coloring in common::corpus(4, 20, 3) {
        for seed in 0..2 {
            let p = Equipartition::sample(coloring.n(), seed).unwrap();
            let aux = AuxGraph::build(&coloring, &p).unwrap();
            assert_eq!(check_unique_shared_neighbor(&aux), Ok(()));
        }
    }
}

#[test]
fn injected_duplicate_is_caught() {
    let aux = AuxGraph::from_edges(8, [((0, 1), (4, 5)), ((0, 1), (4, 6))]);
    let w = check_unique_shared_neighbor(&aux).unwrap_err();
    assert_eq!(w.s, (0, 1));
    assert_eq!(w.vertex, 4);
    // same fixture seen from the right side
    let aux = AuxGraph::from_edges(8, [((0, 1), (4, 5)), ((0, 2), (4, 5))]);
    assert_eq!(check_unique_shared_neighbor(&aux).unwrap_err().vertex, 0);
}

#[test]
fn rainbow_aux_is_empty() {
    let c = rainbow(12).unwrap();
    let aux = AuxGraph::build(&c, &Equipartition::sample(12, 0).unwrap()).unwrap();
    assert!(aux.is_empty());
}

#[test]
fn adjacency_json_lists_every_edge() {
    let c = greedy_random(12, 11, 1).unwrap();
    let aux = AuxGraph::build(&c, &Equipartition::sample(12, 1).unwrap()).unwrap();
    let json = aux.to_adjacency_json();
    let listed: usize = json.values().map(Vec::len).sum();
    // both directions appear
    assert_eq!(listed, 2 * aux.edge_count());
    let first = aux.edges().next();
    if let Some((a, b)) = first {
        let key = format!("({},{})", a.0, a.1);
        assert!(json[&key].contains(&format!("({},{})", b.0, b.1)));
    }
}

#[test]
fn convexity_link_holds_exactly() {
    for coloring in common::corpus(8, 24, 2) {
        let n = coloring.n() as i128;
        let colors = coloring.num_colors() as i128;
        let total = n * (n - 1) / 2;
        // Jensen: ΣC(e_c,2) ≥ C·(T/C)(T/C − 1)/2
        let lhs = Rational::from_integer(coloring.sum_pairs_per_color() as i128);
        let rhs = Rational::new(total * (total - colors), 2 * colors);
        assert!(lhs >= rhs, "n = {n}");
        let p = Equipartition::sample(coloring.n(), 0).unwrap();
        let aux = AuxGraph::build(&coloring, &p).unwrap();
        let report = edge_lower_bound_report(&coloring, &aux, Rational::new(1, 1024), 3);
        assert!(report.threshold_ge_convexity);
        assert_eq!(report.aux_edges, aux.edge_count() as u64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn neighbors_are_pairwise_vertex_disjoint(n in 8usize..20, extra in 0usize..10, seed in any::<u64>()) {
        let chi = if n % 2 == 0 { n - 1 } else { n };
        let c = greedy_random(n, chi + extra, seed).unwrap();
        let aux = AuxGraph::build(&c, &Equipartition::sample(n, seed).unwrap()).unwrap();
        for a in 0..aux.left().len() {
            let nbrs: Vec<_> = aux.left_neighbors(a).iter().map(|&b| aux.right()[b as usize]).collect();
            for x in 0..nbrs.len() {
                for y in x + 1..nbrs.len() {
                    prop_assert!(!shares_vertex(nbrs[x], nbrs[y]));
                }
            }
        }
    }
}
