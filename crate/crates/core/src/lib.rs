//! Constructive search for two vertex-disjoint color-isomorphic copies of
//! `H_t` (the 1-subdivision of `K_t`) in a proper edge-coloring of `K_n`.
//!
//! The pipeline runs in five stages:
//!
//! 1. [`matchings`]: pick a four-part equipartition `X1..X4` with many
//!    monochromatic matchings of the form `{x1x3, x2x4}`.
//! 2. [`auxgraph`]: build the bipartite graph on pairs `X1×X2 ∪ X3×X4`
//!    whose edges are those matchings.
//! 3. [`regularize`]: extract an almost-regular balanced subgraph.
//! 4. [`embed`]: greedily embed `H_t` with pairwise vertex-disjoint pairs.
//! 5. [`embed::lift_to_certificate`]: split each pair into its two
//!    coordinates, giving two color-isomorphic copies in `K_n`.
//!
//! The [`oracle`] module is an independent brute-force ground truth used to
//! check everything the pipeline produces.

pub mod auxgraph;
pub mod certificate;
pub mod clique;
pub mod coloring;
pub mod embed;
pub mod matchings;
pub mod oracle;
pub mod pipeline;
pub mod regularize;

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use auxgraph::{AuxGraph, Pair};
pub use certificate::{CertificatePair, HtCopy, HtLayout};
pub use coloring::{ColorHistogram, EdgeColoring, ProperColoring};
pub use embed::{HtEmbedding, Mode, PipelineParams};
pub use matchings::Equipartition;
pub use regularize::RegularizedSubgraph;

/// Exact rational used for every threshold that is compared against an
/// integer count.
pub type Rational = Ratio<i128>;

/// Seeded generator for one named stream of a run.
///
/// Every random choice in the crate goes through this so that a single
/// 64-bit seed reproduces a whole run.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `C(x, 2)` on integers.
pub fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn ratio_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
