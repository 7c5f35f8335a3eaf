mod common;

use colorpair::coloring::{
    edge_endpoints, edge_index, greedy_random, rainbow, round_robin, round_robin_any, ColoringError,
};
use colorpair::{EdgeColoring, ProperColoring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn edge_index_matches_lexicographic_walk() {
    for n in 2..20 {
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(edge_index(n, i, j), k);
                k += 1;
            }
        }
        assert_eq!(edge_endpoints(n).len(), k);
    }
}

#[test]
fn generated_families_pass_the_scan() {
    for n in 4..=32 {
        let mut family = vec![round_robin_any(n).unwrap(), rainbow(n).unwrap()];
        let chi = if n % 2 == 0 { n - 1 } else { n };
        for seed in 0..3 {
            family.push(greedy_random(n, chi, seed).unwrap());
        }
        for c in family {
            assert!(common::proper_by_scan(n, c.edge_colors()), "n = {n}");
            let report = c.to_raw().validate().unwrap();
            assert!(report.ok && report.unused_colors.is_empty());
        }
    }
}

#[test]
fn round_robin_has_perfect_matching_classes() {
    for n in (4..=30).step_by(2) {
        let c = round_robin(n).unwrap();
        assert_eq!(c.num_colors(), n - 1);
        assert!(c.histogram().sizes.iter().all(|&s| s == n / 2));
    }
    assert_eq!(round_robin(8).unwrap().sum_pairs_per_color(), 42);
    assert!(matches!(
        round_robin(7),
        Err(ColoringError::InvalidArgument(_))
    ));
    assert_eq!(round_robin_any(7).unwrap().num_colors(), 7);
}

#[test]
fn mutations_agree_with_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [4, 5, 9, 16] {
        let base = greedy_random(n, n + 2, 3).unwrap().to_raw();
        for _ in 0..50 {
            let mut m = base.clone();
            let e = rng.gen_range(0..m.edge_color.len());
            m.edge_color[e] = rng.gen_range(0..m.num_colors as u32);
            let ok = m.validate().unwrap().ok;
            assert_eq!(ok, common::proper_by_scan(n, &m.edge_color));
            if !ok {
                assert!(matches!(
                    ProperColoring::try_from(m),
                    Err(ColoringError::NotProper { .. })
                ));
            }
        }
    }
}

#[test]
fn violations_name_the_offending_edges() {
    let mut raw = round_robin(6).unwrap().to_raw();
    // recolor {0,1} with the color of {0,2}
    let (e01, e02) = (edge_index(6, 0, 1), edge_index(6, 0, 2));
    raw.edge_color[e01] = raw.edge_color[e02];
    let report = raw.validate().unwrap();
    assert!(!report.ok);
    assert!(report
        .violations
        .iter()
        .any(|v| v.vertex == 0 && v.edges == (e01.min(e02), e01.max(e02))));
}

#[test]
fn structural_errors() {
    let raw = EdgeColoring {
        n: 4,
        num_colors: 3,
        edge_color: vec![0; 5],
    };
    assert!(matches!(
        raw.validate(),
        Err(ColoringError::WrongLength { .. })
    ));
    let raw = EdgeColoring {
        n: 3,
        num_colors: 2,
        edge_color: vec![0, 1, 2],
    };
    assert!(matches!(
        raw.validate(),
        Err(ColoringError::ColorOutOfRange { edge: 2, .. })
    ));
    let raw = EdgeColoring {
        n: 3,
        num_colors: 4,
        edge_color: vec![0, 1, 2],
    };
    assert!(
        matches!(ProperColoring::try_from(raw), Err(ColoringError::UnusedColors(v)) if v == [3])
    );
    assert!(greedy_random(6, 4, 0).is_err());
}

#[test]
fn json_round_trip_and_fingerprint() {
    let c = greedy_random(10, 12, 4).unwrap();
    let json = c.to_json();
    let raw: EdgeColoring = serde_json::from_str(&json).unwrap();
    let back = ProperColoring::try_from(raw).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.fingerprint(), c.fingerprint());
    assert_ne!(
        c.fingerprint(),
        greedy_random(10, 12, 5).unwrap().fingerprint()
    );
}

#[test]
fn greedy_is_deterministic_per_seed() {
    assert_eq!(
        greedy_random(20, 25, 9).unwrap(),
        greedy_random(20, 25, 9).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_is_proper_and_respects_target(n in 2usize..28, extra in 0usize..40, seed in any::<u64>()) {
        let chi = if n % 2 == 0 { n - 1 } else { n };
        let c = greedy_random(n, chi + extra, seed).unwrap();
        prop_assert!(common::proper_by_scan(n, c.edge_colors()));
        prop_assert!(c.num_colors() >= chi);
        // every class is a matching
        for class in c.classes() {
            let mut seen = std::collections::HashSet::new();
            for &(a, b) in class {
                prop_assert!(seen.insert(a) && seen.insert(b));
            }
        }
        prop_assert_eq!(c.histogram().total() as usize, n * (n - 1) / 2);
    }
}
