//! Fixtures shared by the benchmarks.

use colorpair::coloring::greedy_random;
use colorpair::{Equipartition, ProperColoring};

/// Greedy coloring of K_n aiming at `n - 1` colors.
pub fn greedy(n: usize, seed: u64) -> ProperColoring {
    greedy_random(n, n - 1, seed).expect("n >= 2")
}

pub fn partition(n: usize, seed: u64) -> Equipartition {
    Equipartition::sample(n, seed).expect("n >= 4")
}
