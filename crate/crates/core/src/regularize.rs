//! Extraction of an almost-regular, balanced bipartite subgraph from the
//! auxiliary graph.
//!
//! Side `A` is always drawn from the left (`X1×X2`) pairs and side `B` from
//! the right (`X3×X4`) pairs. The procedure is deterministic:
//!
//! 1. dyadic bucketing: vertices are grouped by `floor(log2(deg))` and the
//!    bucket pair carrying the most edges is kept;
//! 2. peeling: vertices below `peel_fraction` times their side's average
//!    degree are removed until nothing changes;
//! 3. balancing: the larger side is trimmed, lowest degree first, until
//!    `|B|/2 <= |A| <= 2|B|`.
//!
//! Steps 2 and 3 alternate until stable or `max_rounds` is hit.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::auxgraph::{AuxGraph, Pair};
use crate::{ratio_to_f64, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegularizeError {
    #[error("auxiliary graph has no edges")]
    EmptyInput,
    #[error(
        "subgraph too sparse after peeling: m = {m}, delta = {delta}, |A| = {a}, edges = {edges}"
    )]
    TooSparse {
        m: usize,
        delta: usize,
        a: usize,
        edges: usize,
        rounds: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone)]
pub struct RegularizeConfig {
    /// Density exponent `(t−2)/(2t−3)`; only used for reporting.
    pub alpha: Rational,
    pub max_rounds: usize,
    pub peel_fraction: f64,
}

impl RegularizeConfig {
    pub fn for_t(t: usize) -> Self {
        RegularizeConfig {
            alpha: alpha_for(t),
            max_rounds: 32,
            peel_fraction: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BucketCount {
    pub left_bucket: u32,
    pub right_bucket: u32,
    pub edges: usize,
}

/// A bipartite subgraph `A ∪ B` of the auxiliary graph with local vertex
/// ids `0..|A|` and `0..|B|`.
#[derive(Debug, Clone)]
pub struct RegularizedSubgraph {
    a_pairs: Vec<Pair>,
    b_pairs: Vec<Pair>,
    adj_a: Vec<Vec<u32>>,
    adj_b: Vec<Vec<u32>>,
    edges: usize,
    delta: usize,
    max_degree: usize,
    pub alpha: Rational,
    pub rounds: usize,
    pub source_edges: usize,
    pub bucket_histogram: Vec<BucketCount>,
    /// Edges kept by the bucketing step.
    pub bucket_edges: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgraphReport {
    pub m: usize,
    pub a: usize,
    pub delta: usize,
    pub max_degree: usize,
    #[serde(rename = "bigK")]
    pub big_k: f64,
    pub edges: usize,
    pub rounds: usize,
    pub source_edges: usize,
    pub bucket_edges: usize,
    pub bucket_histogram: Vec<BucketCount>,
    /// `edges / (|A|+|B|)^{1+α}`
    pub density: f64,
}

impl RegularizedSubgraph {
    /// Subgraph of `aux` induced on the given left and right vertex ids.
    /// Stats are computed, but no structural property is enforced.
    pub fn induced(aux: &AuxGraph, left: &[usize], right: &[usize], alpha: Rational) -> Self {
        let mut local_b = vec![u32::MAX; aux.right().len()];
        for (k, &b) in right.iter().enumerate() {
            local_b[b] = k as u32;
        }
        let mut adj_a = Vec::with_capacity(left.len());
        let mut adj_b = vec![Vec::new(); right.len()];
        for (ka, &a) in left.iter().enumerate() {
            let nbrs: Vec<u32> = aux
                .left_neighbors(a)
                .iter()
                .map(|&b| local_b[b as usize])
                .filter(|&kb| kb != u32::MAX)
                .collect();
            for &kb in &nbrs {
                adj_b[kb as usize].push(ka as u32);
            }
            adj_a.push(nbrs);
        }
        for nbrs in adj_a.iter_mut() {
            nbrs.sort_unstable();
        }
        Self::from_adjacency(
            left.iter().map(|&a| aux.left()[a]).collect(),
            right.iter().map(|&b| aux.right()[b]).collect(),
            adj_a,
            adj_b,
            alpha,
        )
    }

    /// Direct constructor from local adjacency of side `A` (lists of `B`
    /// ids). Used for fixtures that bypass the auxiliary graph.
    pub fn from_edges(
        a_pairs: Vec<Pair>,
        b_pairs: Vec<Pair>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut adj_a = vec![Vec::new(); a_pairs.len()];
        let mut adj_b = vec![Vec::new(); b_pairs.len()];
        for (a, b) in edges {
            adj_a[a].push(b as u32);
            adj_b[b].push(a as u32);
        }
        for adj in adj_a.iter_mut().chain(adj_b.iter_mut()) {
            adj.sort_unstable();
            adj.dedup();
        }
        Self::from_adjacency(a_pairs, b_pairs, adj_a, adj_b, Rational::new(1, 3))
    }

    fn from_adjacency(
        a_pairs: Vec<Pair>,
        b_pairs: Vec<Pair>,
        adj_a: Vec<Vec<u32>>,
        adj_b: Vec<Vec<u32>>,
        alpha: Rational,
    ) -> Self {
        let edges = adj_a.iter().map(Vec::len).sum();
        let degrees = adj_a.iter().chain(adj_b.iter()).map(Vec::len);
        let delta = degrees.clone().min().unwrap_or(0);
        let max_degree = degrees.max().unwrap_or(0);
        RegularizedSubgraph {
            a_pairs,
            b_pairs,
            adj_a,
            adj_b,
            edges,
            delta,
            max_degree,
            alpha,
            rounds: 0,
            source_edges: edges,
            bucket_histogram: Vec::new(),
            bucket_edges: edges,
        }
    }

    pub fn a_len(&self) -> usize {
        self.a_pairs.len()
    }

    /// `m = |B|`.
    pub fn m(&self) -> usize {
        self.b_pairs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Minimum degree over all vertices of both sides.
    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Achieved `K = max_degree / delta`, exactly.
    pub fn big_k(&self) -> Rational {
        if self.delta == 0 {
            return Rational::from_integer(0);
        }
        Rational::new(self.max_degree as i128, self.delta as i128)
    }

    pub fn a_pair(&self, u: usize) -> Pair {
        self.a_pairs[u]
    }

    pub fn b_pair(&self, b: usize) -> Pair {
        self.b_pairs[b]
    }

    pub fn a_pairs(&self) -> &[Pair] {
        &self.a_pairs
    }

    pub fn b_pairs(&self) -> &[Pair] {
        &self.b_pairs
    }

    /// Sorted `B` neighbors of `u ∈ A`.
    pub fn nbrs_a(&self, u: usize) -> &[u32] {
        &self.adj_a[u]
    }

    /// `A` neighbors of `b ∈ B`.
    pub fn nbrs_b(&self, b: usize) -> &[u32] {
        &self.adj_b[b]
    }

    pub fn is_adjacent(&self, u: usize, b: usize) -> bool {
        self.adj_a[u].binary_search(&(b as u32)).is_ok()
    }

    pub fn is_balanced(&self) -> bool {
        let (a, b) = (self.a_len(), self.m());
        b <= 2 * a && a <= 2 * b
    }

    pub fn report(&self) -> SubgraphReport {
        let size = (self.a_len() + self.m()) as f64;
        SubgraphReport {
            m: self.m(),
            a: self.a_len(),
            delta: self.delta,
            max_degree: self.max_degree,
            big_k: ratio_to_f64(&self.big_k()),
            edges: self.edges,
            rounds: self.rounds,
            source_edges: self.source_edges,
            bucket_edges: self.bucket_edges,
            bucket_histogram: self.bucket_histogram.clone(),
            density: self.edges as f64 / size.powf(1.0 + ratio_to_f64(&self.alpha)),
        }
    }
}

fn bucket(deg: usize) -> u32 {
    debug_assert!(deg > 0);
    usize::BITS - 1 - deg.leading_zeros()
}

/// Mutable working copy over aux ids.
struct Work<'a> {
    aux: &'a AuxGraph,
    alive_l: Vec<bool>,
    alive_r: Vec<bool>,
    deg_l: Vec<usize>,
    deg_r: Vec<usize>,
}

impl Work<'_> {
    fn recount(&mut self) {
        for (a, d) in self.deg_l.iter_mut().enumerate() {
            *d = if self.alive_l[a] {
                self.aux
                    .left_neighbors(a)
                    .iter()
                    .filter(|&&b| self.alive_r[b as usize])
                    .count()
            } else {
                0
            };
        }
        for (b, d) in self.deg_r.iter_mut().enumerate() {
            *d = if self.alive_r[b] {
                self.aux
                    .right_neighbors(b)
                    .iter()
                    .filter(|&&a| self.alive_l[a as usize])
                    .count()
            } else {
                0
            };
        }
    }

    fn sizes(&self) -> (usize, usize) {
        (
            self.alive_l.iter().filter(|&&x| x).count(),
            self.alive_r.iter().filter(|&&x| x).count(),
        )
    }

    fn edges(&self) -> usize {
        self.deg_l.iter().sum()
    }

    /// Removes low-degree vertices on both sides at once. Returns whether
    /// anything was removed.
    fn peel(&mut self, fraction: f64) -> bool {
        let (na, nb) = self.sizes();
        let e = self.edges() as f64;
        if na == 0 || nb == 0 {
            return false;
        }
        let (cut_l, cut_r) = (fraction * e / na as f64, fraction * e / nb as f64);
        let mut changed = false;
        for a in 0..self.alive_l.len() {
            if self.alive_l[a] && (self.deg_l[a] == 0 || (self.deg_l[a] as f64) < cut_l) {
                self.alive_l[a] = false;
                changed = true;
            }
        }
        for b in 0..self.alive_r.len() {
            if self.alive_r[b] && (self.deg_r[b] == 0 || (self.deg_r[b] as f64) < cut_r) {
                self.alive_r[b] = false;
                changed = true;
            }
        }
        if changed {
            self.recount();
        }
        changed
    }

    fn drop_isolated(&mut self) -> bool {
        let mut changed = false;
        for a in 0..self.alive_l.len() {
            if self.alive_l[a] && self.deg_l[a] == 0 {
                self.alive_l[a] = false;
                changed = true;
            }
        }
        for b in 0..self.alive_r.len() {
            if self.alive_r[b] && self.deg_r[b] == 0 {
                self.alive_r[b] = false;
                changed = true;
            }
        }
        changed
    }

    /// Trims the larger side, lowest degree (then highest id) first.
    fn balance(&mut self) -> bool {
        let (na, nb) = self.sizes();
        let (alive, deg, excess) = if na > 2 * nb {
            (&mut self.alive_l, &self.deg_l, na - 2 * nb)
        } else if nb > 2 * na {
            (&mut self.alive_r, &self.deg_r, nb - 2 * na)
        } else {
            return false;
        };
        let mut order: Vec<usize> = (0..alive.len()).filter(|&v| alive[v]).collect();
        order.sort_by_key(|&v| (deg[v], std::cmp::Reverse(v)));
        for &v in order.iter().take(excess) {
            alive[v] = false;
        }
        self.recount();
        true
    }
}

/// Extracts a balanced, almost-regular subgraph; see the module docs.
pub fn almost_regular_balanced_subgraph(
    aux: &AuxGraph,
    config: &RegularizeConfig,
) -> Result<RegularizedSubgraph, RegularizeError> {
    if config.alpha <= Rational::from_integer(0) || config.alpha >= Rational::one() {
        return Err(RegularizeError::InvalidArgument(format!(
            "alpha must lie in (0,1), got {}",
            config.alpha
        )));
    }
    if aux.is_empty() {
        return Err(RegularizeError::EmptyInput);
    }

    let deg_l: Vec<usize> = (0..aux.left().len())
        .map(|a| aux.left_neighbors(a).len())
        .collect();
    let deg_r: Vec<usize> = (0..aux.right().len())
        .map(|b| aux.right_neighbors(b).len())
        .collect();

    let mut per_bucket: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for (a, &da) in deg_l.iter().enumerate() {
        for &b in aux.left_neighbors(a) {
            *per_bucket
                .entry((bucket(da), bucket(deg_r[b as usize])))
                .or_default() += 1;
        }
    }
    // BTreeMap iterates keys ascending, so max_by_key on (count, Reverse(key))
    // keeps the smallest key among ties.
    let (&(bl, br), &bucket_edges) = per_bucket
        .iter()
        .max_by_key(|(k, &v)| (v, std::cmp::Reverse(**k)))
        .expect("non-empty graph has a bucket");
    let bucket_histogram = per_bucket
        .iter()
        .map(|(&(l, r), &edges)| BucketCount {
            left_bucket: l,
            right_bucket: r,
            edges,
        })
        .collect();

    let mut work = Work {
        aux,
        alive_l: deg_l.iter().map(|&d| bucket(d) == bl).collect(),
        alive_r: deg_r.iter().map(|&d| bucket(d) == br).collect(),
        deg_l: vec![0; deg_l.len()],
        deg_r: vec![0; deg_r.len()],
    };
    work.recount();

    let mut rounds = 0;
    while rounds < config.max_rounds {
        rounds += 1;
        let peeled = work.peel(config.peel_fraction);
        let trimmed = work.balance();
        if !peeled && !trimmed {
            break;
        }
    }
    // The round cap may stop early; finish without peeling so the
    // structural invariants always hold on output.
    while work.drop_isolated() || work.balance() {
        work.recount();
    }

    let left: Vec<usize> = (0..work.alive_l.len())
        .filter(|&a| work.alive_l[a])
        .collect();
    let right: Vec<usize> = (0..work.alive_r.len())
        .filter(|&b| work.alive_r[b])
        .collect();
    let mut g0 = RegularizedSubgraph::induced(aux, &left, &right, config.alpha);
    g0.rounds = rounds;
    g0.source_edges = aux.edge_count();
    g0.bucket_histogram = bucket_histogram;
    g0.bucket_edges = bucket_edges;

    if g0.m() < 4 || g0.delta() == 0 || g0.a_len() == 0 {
        return Err(RegularizeError::TooSparse {
            m: g0.m(),
            delta: g0.delta(),
            a: g0.a_len(),
            edges: g0.edge_count(),
            rounds,
        });
    }
    debug_assert!(g0.is_balanced());
    Ok(g0)
}

/// Constants of the embedding argument for a given `t` and `γ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineConstants {
    #[serde(serialize_with = "ser_ratio")]
    pub alpha: Rational,
    /// `60 · 2^{1 + 1/α²}`; reported, never enforced.
    pub k_constant: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub c0: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub c1: Rational,
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn alpha_for(t: usize) -> Rational {
    Rational::new(t as i128 - 2, 2 * t as i128 - 3)
}

pub fn pipeline_constants(t: usize, gamma: Rational) -> Result<PipelineConstants, RegularizeError> {
    if t < 3 {
        return Err(RegularizeError::InvalidArgument(format!(
            "t must be at least 3, got {t}"
        )));
    }
    if gamma <= Rational::from_integer(0) {
        return Err(RegularizeError::InvalidArgument(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    let alpha = alpha_for(t);
    let inv_sq = (alpha * alpha).recip();
    let exponent = Rational::one() + inv_sq;
    let k_constant = if exponent.is_integer() {
        60.0 * 2f64.powi(exponent.to_integer() as i32)
    } else {
        60.0 * 2f64.powf(exponent.to_f64().unwrap())
    };
    let c0 = (gamma * 1024).recip();
    Ok(PipelineConstants {
        alpha,
        k_constant,
        c0,
        c1: c0 / 10,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_bipartite(k: u32) -> AuxGraph {
        let mut edges = Vec::new();
        for a in 0..k {
            for b in 0..k {
                edges.push(((a, 100 + a), (200 + b, 300 + b)));
            }
        }
        AuxGraph::from_edges(400, edges)
    }

    #[test]
    fn complete_bipartite_kept_whole() {
        let aux = complete_bipartite(8);
        let g0 = almost_regular_balanced_subgraph(&aux, &RegularizeConfig::for_t(3)).unwrap();
        assert_eq!((g0.a_len(), g0.m(), g0.edge_count()), (8, 8, 64));
        assert_eq!(g0.big_k(), Rational::from_integer(1));
        assert_eq!(g0.delta(), 8);
    }

    #[test]
    fn star_is_never_returned_unbalanced() {
        let edges = (0..64).map(|b| ((0, 1), (100 + b, 200 + b)));
        let aux = AuxGraph::from_edges(300, edges);
        match almost_regular_balanced_subgraph(&aux, &RegularizeConfig::for_t(3)) {
            Err(RegularizeError::TooSparse { .. }) => {}
            Ok(g0) => assert!(g0.is_balanced()),
            Err(e) => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn empty_input_rejected() {
        let aux = AuxGraph::from_edges(8, []);
        assert_eq!(
            almost_regular_balanced_subgraph(&aux, &RegularizeConfig::for_t(3)).unwrap_err(),
            RegularizeError::EmptyInput
        );
    }

    #[test]
    fn constants_at_t3_and_t4() {
        let c = pipeline_constants(3, Rational::new(1, 1024)).unwrap();
        assert_eq!(c.alpha, Rational::new(1, 3));
        assert_eq!(c.k_constant, 61440.0);
        assert_eq!(c.c0, Rational::from_integer(1));
        assert_eq!(c.c1, Rational::new(1, 10));
        let c = pipeline_constants(4, Rational::new(1, 1024)).unwrap();
        assert_eq!(c.alpha, Rational::new(2, 5));
        assert!(pipeline_constants(2, Rational::new(1, 2)).is_err());
    }

    #[test]
    fn bucket_is_floor_log2() {
        assert_eq!(bucket(1), 0);
        assert_eq!(bucket(2), 1);
        assert_eq!(bucket(3), 1);
        assert_eq!(bucket(4), 2);
        assert_eq!(bucket(1023), 9);
    }
}
