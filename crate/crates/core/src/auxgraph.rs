//! The auxiliary bipartite graph on vertex pairs.
//!
//! Left vertices are ordered pairs `(x1, x2) ∈ X1×X2`, right vertices are
//! `(x3, x4) ∈ X3×X4`, and `(x1, x2) ~ (x3, x4)` iff `x1x3` and `x2x4` have
//! the same color. Pairs without an incident edge are never stored.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::coloring::ProperColoring;
use crate::matchings::{self, oriented, Equipartition, PartitionError};
use crate::{choose2, ratio_to_f64, Rational};

/// An ordered pair of `K_n` vertices; one vertex of the auxiliary graph.
pub type Pair = (u32, u32);

/// Whether two pairs have a `K_n` vertex in common.
#[inline]
pub fn shares_vertex(p: Pair, q: Pair) -> bool {
    p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1
}

pub fn pair_label(p: Pair) -> String {
    format!("({},{})", p.0, p.1)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuxError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxGraph {
    n: usize,
    left: Vec<Pair>,
    right: Vec<Pair>,
    left_adj: Vec<Vec<u32>>,
    right_adj: Vec<Vec<u32>>,
    edges: usize,
}

impl AuxGraph {
    /// Builds the graph class by class: every `X1–X3` edge of a color is
    /// joined with every `X2–X4` edge of the same color.
    pub fn build(coloring: &ProperColoring, partition: &Equipartition) -> Result<Self, AuxError> {
        if partition.n() != coloring.n() {
            return Err(PartitionError::SizeMismatch {
                partition: partition.n(),
                coloring: coloring.n(),
            }
            .into());
        }
        let mut edges = Vec::new();
        let (mut thirteen, mut twentyfour) = (Vec::new(), Vec::new());
        for class in coloring.classes() {
            thirteen.clear();
            twentyfour.clear();
            for &e in class {
                if let Some(o) = oriented(partition, e, 0, 2) {
                    thirteen.push(o);
                } else if let Some(o) = oriented(partition, e, 1, 3) {
                    twentyfour.push(o);
                }
            }
            for &(x1, x3) in &thirteen {
                for &(x2, x4) in &twentyfour {
                    edges.push(((x1, x2), (x3, x4)));
                }
            }
        }
        Ok(Self::from_edges(coloring.n(), edges))
    }

    /// Assembles a graph from an explicit edge list, without checking it
    /// against any coloring. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Pair, Pair)>) -> Self {
        let edges: BTreeSet<(Pair, Pair)> = edges.into_iter().collect();
        let left: Vec<Pair> = edges
            .iter()
            .map(|e| e.0)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let right: Vec<Pair> = edges
            .iter()
            .map(|e| e.1)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut left_adj = vec![Vec::new(); left.len()];
        let mut right_adj = vec![Vec::new(); right.len()];
        for (s, t) in &edges {
            let a = left.binary_search(s).unwrap();
            let b = right.binary_search(t).unwrap();
            left_adj[a].push(b as u32);
            right_adj[b].push(a as u32);
        }
        for adj in left_adj.iter_mut().chain(right_adj.iter_mut()) {
            adj.sort_unstable();
        }
        AuxGraph {
            n,
            left,
            right,
            left_adj,
            right_adj,
            edges: edges.len(),
        }
    }

    /// Number of vertices of the underlying `K_n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges == 0
    }

    pub fn left(&self) -> &[Pair] {
        &self.left
    }

    pub fn right(&self) -> &[Pair] {
        &self.right
    }

    pub fn left_neighbors(&self, a: usize) -> &[u32] {
        &self.left_adj[a]
    }

    pub fn right_neighbors(&self, b: usize) -> &[u32] {
        &self.right_adj[b]
    }

    pub fn edges(&self) -> impl Iterator<Item = (Pair, Pair)> + '_ {
        self.left_adj.iter().enumerate().flat_map(move |(a, nbrs)| {
            nbrs.iter()
                .map(move |&b| (self.left[a], self.right[b as usize]))
        })
    }

    /// Adjacency list keyed by `"(a,b)"` labels, both sides in one map.
    pub fn to_adjacency_json(&self) -> BTreeMap<String, Vec<String>> {
        let mut out = BTreeMap::new();
        for (a, nbrs) in self.left_adj.iter().enumerate() {
            out.insert(
                pair_label(self.left[a]),
                nbrs.iter()
                    .map(|&b| pair_label(self.right[b as usize]))
                    .collect(),
            );
        }
        for (b, nbrs) in self.right_adj.iter().enumerate() {
            out.insert(
                pair_label(self.right[b]),
                nbrs.iter()
                    .map(|&a| pair_label(self.left[a as usize]))
                    .collect(),
            );
        }
        out
    }
}

/// Witness that some vertex `s` has two neighbors containing `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SharedNeighbor {
    pub s: Pair,
    pub vertex: u32,
    pub t1: Pair,
    pub t2: Pair,
}

/// For every vertex `S` and every `K_n` vertex `v`, at most one neighbor of
/// `S` contains `v`. Holds for any graph built from a proper coloring.
pub fn check_unique_shared_neighbor(aux: &AuxGraph) -> Result<(), SharedNeighbor> {
    let sides = [
        (&aux.left, &aux.left_adj, &aux.right),
        (&aux.right, &aux.right_adj, &aux.left),
    ];
    let mut seen: HashMap<u32, Pair> = HashMap::new();
    for (own, adj, other) in sides {
        for (s, nbrs) in adj.iter().enumerate() {
            seen.clear();
            for &t in nbrs {
                let t = other[t as usize];
                for v in [t.0, t.1] {
                    if let Some(&prev) = seen.get(&v) {
                        return Err(SharedNeighbor {
                            s: own[s],
                            vertex: v,
                            t1: prev,
                            t2: t,
                        });
                    }
                    seen.insert(v, t);
                }
            }
        }
    }
    Ok(())
}

/// Instance values of the chain
/// `|E| ≥ Σ C(e_c,2)/256 ≥ n⁴/(1024C) > |V|^{3/2 − 1/(4t−6)}/(1024γ)`
/// together with the convexity bound `C·C(C(n,2)/C, 2)/256`.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeBoundReport {
    pub aux_edges: u64,
    pub sum_pairs: u64,
    pub num_colors: usize,
    /// `Σ C(e_c,2) / 256`
    pub threshold: f64,
    /// `C · C(C(n,2)/C, 2) / 256`, binomial taken continuously.
    pub convexity_bound: f64,
    /// `n⁴ / (1024 C)`
    pub n4_bound: f64,
    /// `n² / 8`
    pub vertex_universe: f64,
    /// `|V|^{3/2 − 1/(4t−6)} / (1024 γ)`
    pub vertex_power_bound: f64,
    pub edges_ge_threshold: bool,
    pub threshold_ge_convexity: bool,
    pub threshold_ge_n4: bool,
    pub n4_gt_vertex_power: bool,
}

pub fn edge_lower_bound_report(
    coloring: &ProperColoring,
    aux: &AuxGraph,
    gamma: Rational,
    t: usize,
) -> EdgeBoundReport {
    let n = coloring.n() as i128;
    let colors = coloring.num_colors() as i128;
    let sum_pairs = coloring.sum_pairs_per_color();
    let threshold = matchings::cross_threshold(coloring);
    let total = choose2(n as u64) as i128;
    // C · (x(x−1)/2) with x = total / C
    let convexity = Rational::new(total * (total - colors), 2 * colors * 256);
    let n4 = Rational::new(n * n * n * n, 1024 * colors);
    let universe = (n * n) as f64 / 8.0;
    let exponent = 1.5 - 1.0 / (4.0 * t as f64 - 6.0);
    let vertex_power = universe.powf(exponent) / (1024.0 * ratio_to_f64(&gamma));
    let edges = Rational::from_integer(aux.edge_count() as i128);
    EdgeBoundReport {
        aux_edges: aux.edge_count() as u64,
        sum_pairs,
        num_colors: coloring.num_colors(),
        threshold: ratio_to_f64(&threshold),
        convexity_bound: ratio_to_f64(&convexity),
        n4_bound: ratio_to_f64(&n4),
        vertex_universe: universe,
        vertex_power_bound: vertex_power,
        edges_ge_threshold: edges >= threshold,
        threshold_ge_convexity: threshold >= convexity,
        threshold_ge_n4: threshold >= n4,
        n4_gt_vertex_power: ratio_to_f64(&n4) > vertex_power,
    }
}
