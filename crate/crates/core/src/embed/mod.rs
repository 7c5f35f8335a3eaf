//! Embedding `H_t` into the regularized auxiliary graph with pairwise
//! vertex-disjoint pairs, and lifting it to two color-isomorphic copies in
//! `K_n`.
//!
//! Branch vertices `u_1..u_t` come from side `A` and subdivision vertices
//! `v_ij` from side `B`. The weight `W(u, v)` of a pair in `A` is its
//! codegree; a pair is light when `1 <= W < light_threshold` and heavy when
//! `W >= light_threshold`.

mod audit;
mod greedy;
mod lift;
mod weights;

use serde::Serialize;
use thiserror::Error;

use crate::auxgraph::shares_vertex;
use crate::certificate::HtLayout;
use crate::regularize::RegularizedSubgraph;
use crate::{choose2, Rational};

pub use audit::{
    classify_edges, turan_light_audit, turan_min_non_edges, weight_check, weight_sum, EdgeClasses,
    LightEdgeReport, TuranAudit, TuranEntry, TuranStatus, WeightReport,
};
pub use greedy::{
    assign_subdivisions, complete_heavy_clique, greedy_embed, DeletionTally, EmbedFailure,
    FailureKind, GateKind, GateRecord, StepRecord,
};
pub use lift::lift_to_certificate;
pub use weights::{codegree, Weights};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vertex {0} is not in side A")]
    NotInSideA(usize),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Abort as soon as one of the cardinality gates fails.
    Strict,
    /// Record gate values but keep going.
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineParams {
    pub t: usize,
    /// Color budget coefficient `γ` in `C = γ n^{1 + 1/(2t−3)}`.
    pub gamma: Rational,
    pub light_threshold: u32,
    pub mode: Mode,
    pub seed: u64,
    pub max_backtracks: usize,
}

impl PipelineParams {
    /// Defaults: `γ = 1/1024`, threshold `2·C(t,2)`, relaxed mode,
    /// 1000 backtracks.
    pub fn new(t: usize) -> Result<Self, EmbedError> {
        let params = PipelineParams {
            t,
            gamma: Rational::new(1, 1024),
            light_threshold: 2 * choose2(t as u64) as u32,
            mode: Mode::Relaxed,
            seed: 0,
            max_backtracks: 1000,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_backtracks(mut self, max_backtracks: usize) -> Self {
        self.max_backtracks = max_backtracks;
        self
    }

    pub fn validate(&self) -> Result<(), EmbedError> {
        if self.t < 3 {
            return Err(EmbedError::InvalidArgument(format!(
                "t must be at least 3, got {}",
                self.t
            )));
        }
        if self.light_threshold < 2 {
            return Err(EmbedError::InvalidArgument(format!(
                "light_threshold must be at least 2, got {}",
                self.light_threshold
            )));
        }
        if self.gamma <= Rational::from_integer(0) {
            return Err(EmbedError::InvalidArgument("gamma must be positive".into()));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn is_light(&self, w: u32) -> bool {
        w >= 1 && w < self.light_threshold
    }

    #[inline]
    pub(crate) fn is_heavy(&self, w: u32) -> bool {
        w >= self.light_threshold
    }
}

/// How an embedding was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Greedy recursion over light edges with deletions.
    LightRecursion,
    /// A `K_t` of heavy pairs completed with distinct subdivision vertices.
    HeavyClique,
}

/// A copy of `H_t` inside a [`RegularizedSubgraph`], by local vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HtEmbedding {
    pub t: usize,
    /// `u_1..u_t` in side `A`.
    pub branch: Vec<usize>,
    /// `v_ij` in side `B`, indexed by [`HtLayout::pair_index`].
    pub subdiv: Vec<usize>,
    pub route: Route,
}

impl HtEmbedding {
    pub fn layout(&self) -> HtLayout {
        HtLayout::new(self.t)
    }

    pub fn v(&self, i: usize, j: usize) -> usize {
        self.subdiv[self.layout().pair_index(i, j)]
    }

    /// Re-checks adjacency, distinctness and pairwise `K_n`-disjointness,
    /// returning every violation found.
    pub fn violations(&self, g0: &RegularizedSubgraph) -> Vec<String> {
        let layout = self.layout();
        let mut out = Vec::new();
        if self.branch.len() != self.t || self.subdiv.len() != layout.num_pairs() {
            out.push(format!(
                "expected {} branch and {} subdivision vertices, got {} and {}",
                self.t,
                layout.num_pairs(),
                self.branch.len(),
                self.subdiv.len()
            ));
            return out;
        }
        if let Some(&u) = self.branch.iter().find(|&&u| u >= g0.a_len()) {
            out.push(format!("branch vertex {u} out of range"));
            return out;
        }
        if let Some(&v) = self.subdiv.iter().find(|&&v| v >= g0.m()) {
            out.push(format!("subdivision vertex {v} out of range"));
            return out;
        }
        for (k, (i, j)) in layout.pairs().enumerate() {
            let v = self.subdiv[k];
            for end in [i, j] {
                if !g0.is_adjacent(self.branch[end], v) {
                    out.push(format!(
                        "v_{},{} is not adjacent to u_{}",
                        i + 1,
                        j + 1,
                        end + 1
                    ));
                }
            }
        }
        let pairs: Vec<_> = self
            .branch
            .iter()
            .map(|&u| g0.a_pair(u))
            .chain(self.subdiv.iter().map(|&v| g0.b_pair(v)))
            .collect();
        for x in 0..pairs.len() {
            for y in x + 1..pairs.len() {
                let same_side = (x < self.t) == (y < self.t);
                let same_id = same_side
                    && if x < self.t {
                        self.branch[x] == self.branch[y]
                    } else {
                        self.subdiv[x - self.t] == self.subdiv[y - self.t]
                    };
                if same_id {
                    out.push(format!("positions {x} and {y} are the same vertex"));
                } else if shares_vertex(pairs[x], pairs[y]) {
                    out.push(format!(
                        "positions {x} and {y} share a K_n vertex: {:?} vs {:?}",
                        pairs[x], pairs[y]
                    ));
                }
            }
        }
        out
    }
}
