mod common;

use std::collections::{BTreeSet, HashMap};

use colorpair::coloring::greedy_random;
use colorpair::regularize::{
    almost_regular_balanced_subgraph, pipeline_constants, RegularizeConfig, RegularizeError,
};
use colorpair::{AuxGraph, Equipartition, Pair, Rational, RegularizedSubgraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Recomputes everything from the source edge set: the output must be the
/// induced subgraph on its vertex sets, with the stats it claims.
fn check_against_source(aux: &AuxGraph, g0: &RegularizedSubgraph) {
    let src: BTreeSet<(Pair, Pair)> = aux.edges().collect();
    let a: BTreeSet<Pair> = g0.a_pairs().iter().copied().collect();
    let b: BTreeSet<Pair> = g0.b_pairs().iter().copied().collect();
    assert_eq!(a.len(), g0.a_len());
    assert_eq!(b.len(), g0.m());
    let kept: Vec<_> = src
        .iter()
        .filter(|(x, y)| a.contains(x) && b.contains(y))
        .collect();
    assert_eq!(kept.len(), g0.edge_count());
    let mut deg: HashMap<Pair, usize> = HashMap::new();
    for &&(x, y) in &kept {
        *deg.entry(x).or_default() += 1;
        *deg.entry(y).or_default() += 1;
    }
    for u in 0..g0.a_len() {
        for v in 0..g0.m() {
            assert_eq!(
                g0.is_adjacent(u, v),
                src.contains(&(g0.a_pair(u), g0.b_pair(v)))
            );
        }
    }
    // every vertex has an edge, so deg covers both sides
    assert_eq!(deg.len(), a.len() + b.len());
    let min = *deg.values().min().unwrap();
    let max = *deg.values().max().unwrap();
    assert_eq!(g0.delta(), min);
    assert_eq!(g0.max_degree(), max);
    assert_eq!(g0.big_k(), Rational::new(max as i128, min as i128));
    assert!(2 * g0.a_len() >= g0.m() && g0.a_len() <= 2 * g0.m());
}

fn random_aux(rng: &mut ChaCha8Rng) -> AuxGraph {
    let n = rng.gen_range(16..40usize);
    let chi = if n % 2 == 0 { n - 1 } else { n };
    let c = greedy_random(n, chi + rng.gen_range(0..n), rng.gen()).unwrap();
    AuxGraph::build(&c, &Equipartition::sample(n, rng.gen()).unwrap()).unwrap()
}

#[test]
fn outputs_are_induced_balanced_and_honest() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ok = 0;
    for _ in 0..60 {
        let aux = random_aux(&mut rng);
        match almost_regular_balanced_subgraph(&aux, &RegularizeConfig::for_t(3)) {
            Ok(g0) => {
                check_against_source(&aux, &g0);
                ok += 1;
            }
            Err(RegularizeError::TooSparse { .. } | RegularizeError::EmptyInput) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(ok > 30, "only {ok} instances regularized");
}

#[test]
fn regular_input_is_kept_whole() {
    // disjoint pairs (i, 100+i) on the left, (200+j, 300+j) on the right
    let edges = (0..8u32).flat_map(|i| (0..8u32).map(move |j| ((i, 100 + i), (200 + j, 300 + j))));
    let aux = AuxGraph::from_edges(400, edges);
    let g0 = almost_regular_balanced_subgraph(&aux, &RegularizeConfig::for_t(3)).unwrap();
    assert_eq!((g0.a_len(), g0.m(), g0.edge_count()), (8, 8, 64));
    assert_eq!(g0.big_k(), Rational::from_integer(1));
}

#[test]
fn unbalanced_star_is_trimmed() {
    // one left vertex joined to 20 right vertices, plus a sparse 4x4 grid
    let mut edges: Vec<(Pair, Pair)> = (0..20u32).map(|j| ((0, 1), (100 + j, 200 + j))).collect();
    for i in 0..4u32 {
        for j in 0..4u32 {
            if (i + j) % 2 == 0 {
                edges.push(((10 + i, 20 + i), (300 + j, 400 + j)));
            }
        }
    }
    let aux = AuxGraph::from_edges(500, edges);
    match almost_regular_balanced_subgraph(&aux, &RegularizeConfig::for_t(3)) {
        Ok(g0) => check_against_source(&aux, &g0),
        Err(RegularizeError::TooSparse { .. }) => {}
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn rejects_bad_alpha_and_empty_input() {
    let aux = AuxGraph::from_edges(4, []);
    assert!(matches!(
        almost_regular_balanced_subgraph(&aux, &RegularizeConfig::for_t(3)),
        Err(RegularizeError::EmptyInput)
    ));
    let mut cfg = RegularizeConfig::for_t(3);
    cfg.alpha = Rational::from_integer(1);
    let aux = AuxGraph::from_edges(4, [((0, 1), (2, 3))]);
    assert!(matches!(
        almost_regular_balanced_subgraph(&aux, &cfg),
        Err(RegularizeError::InvalidArgument(_))
    ));
}

#[test]
fn constants_follow_the_formulas() {
    for t in 3..9usize {
        let k = pipeline_constants(t, Rational::new(1, 1024)).unwrap();
        let alpha = Rational::new(t as i128 - 2, 2 * t as i128 - 3);
        assert_eq!(k.alpha, alpha);
        let a = (t as f64 - 2.0) / (2.0 * t as f64 - 3.0);
        let expect = 60.0 * 2f64.powf(1.0 + 1.0 / (a * a));
        assert!((k.k_constant - expect).abs() <= 1e-9 * expect);
    }
    assert!(pipeline_constants(2, Rational::new(1, 2)).is_err());
    assert!(pipeline_constants(3, Rational::from_integer(0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_bipartite_inputs(seed in any::<u64>(), l in 2usize..30, r in 2usize..30, p in 0.05f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..l as u32 {
            for j in 0..r as u32 {
                if rng.gen_bool(p) {
                    edges.push(((i, 1000 + i), (2000 + j, 3000 + j)));
                }
            }
        }
        let aux = AuxGraph::from_edges(4000, edges);
        match almost_regular_balanced_subgraph(&aux, &RegularizeConfig::for_t(3)) {
            Ok(g0) => {
                check_against_source(&aux, &g0);
                prop_assert!(g0.m() >= 4 && g0.delta() >= 1);
            }
            Err(RegularizeError::TooSparse { .. } | RegularizeError::EmptyInput) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
