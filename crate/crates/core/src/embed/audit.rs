//! Instance-level checks of the counting bounds behind the embedding.

use serde::Serialize;

use super::{PipelineParams, Weights};
use crate::choose2;
use crate::clique::BitGraph;
use crate::regularize::RegularizedSubgraph;

/// `W(U)`: total codegree over unordered pairs of `U`.
pub fn weight_sum(weights: &Weights, u_set: &[usize]) -> u64 {
    let mut total = 0u64;
    for (x, &u) in u_set.iter().enumerate() {
        for &v in &u_set[x + 1..] {
            total += weights.get(u, v) as u64;
        }
    }
    total
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightReport {
    pub u_size: usize,
    pub weight: u64,
    /// `δ² / (2m) · C(|U|, 2)`
    pub bound: f64,
    /// `δ|U| >= 2m`
    pub precondition: bool,
    pub holds: bool,
}

impl WeightReport {
    /// A failure here is a bug: the inequality is proven to hold under the
    /// precondition.
    pub fn pass(&self) -> bool {
        !self.precondition || self.holds
    }
}

/// Compares `W(U)` with `δ²/(2m)·C(|U|,2)` exactly, `δ` being the minimum
/// degree of `g0`.
pub fn weight_check(g0: &RegularizedSubgraph, weights: &Weights, u_set: &[usize]) -> WeightReport {
    let (delta, m) = (g0.delta() as u128, g0.m() as u128);
    let pairs = choose2(u_set.len() as u64) as u128;
    let weight = weight_sum(weights, u_set);
    let holds = 2 * m * weight as u128 >= delta * delta * pairs;
    WeightReport {
        u_size: u_set.len(),
        weight,
        bound: if m == 0 {
            f64::INFINITY
        } else {
            (delta * delta) as f64 / (2 * m) as f64 * pairs as f64
        },
        precondition: delta * u_set.len() as u128 >= 2 * m,
        holds,
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct EdgeClasses {
    pub light: Vec<(usize, usize)>,
    pub heavy: Vec<(usize, usize)>,
    pub zero: Vec<(usize, usize)>,
}

impl EdgeClasses {
    pub fn total(&self) -> usize {
        self.light.len() + self.heavy.len() + self.zero.len()
    }
}

/// Splits the pairs of `U` into light, heavy and zero-weight.
pub fn classify_edges(weights: &Weights, u_set: &[usize], params: &PipelineParams) -> EdgeClasses {
    let mut out = EdgeClasses::default();
    for (x, &u) in u_set.iter().enumerate() {
        for &v in &u_set[x + 1..] {
            let w = weights.get(u, v);
            let class = if w == 0 {
                &mut out.zero
            } else if params.is_heavy(w) {
                &mut out.heavy
            } else {
                &mut out.light
            };
            class.push((u, v));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TuranStatus {
    /// `h < 2(t−1)`; not audited.
    Small,
    /// Heavy pairs inside `N(b) ∩ U` contain this `K_t`.
    HeavyClique { clique: Vec<usize> },
    KtFree {
        light: u64,
        /// `C(h,2) / (t−1)`
        claimed_bound: f64,
        /// `light · (t−1) >= C(h,2)`
        claimed_holds: bool,
        /// Fewest non-edges a `K_t`-free graph on `h` vertices can have.
        turan_bound: u64,
        turan_holds: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuranEntry {
    pub b: usize,
    pub h: usize,
    #[serde(flatten)]
    pub status: TuranStatus,
}

/// Aggregate light-edge count in `U` against `δ²/(16t³m)·C(|U|,2)`.
#[derive(Debug, Clone, Serialize)]
pub struct LightEdgeReport {
    pub u_size: usize,
    pub light_edges: u64,
    pub bound: f64,
    /// `|U| >= 8tm/δ` and `|U| >= 2`.
    pub size_precondition: bool,
    pub no_heavy_clique: bool,
    pub all_local_bounds_hold: bool,
    /// All preconditions held, so `holds` is a checked claim rather than
    /// a logged value.
    pub asserted: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TuranAudit {
    pub t: usize,
    pub entries: Vec<TuranEntry>,
    pub aggregate: LightEdgeReport,
}

impl TuranAudit {
    pub fn heavy_clique(&self) -> Option<&[usize]> {
        self.entries.iter().find_map(|e| match &e.status {
            TuranStatus::HeavyClique { clique } => Some(clique.as_slice()),
            _ => None,
        })
    }

    /// Audited `K_t`-free neighborhoods where `light >= C(h,2)/(t−1)` fails.
    pub fn claimed_failures(&self) -> impl Iterator<Item = &TuranEntry> {
        self.entries.iter().filter(|e| {
            matches!(
                e.status,
                TuranStatus::KtFree {
                    claimed_holds: false,
                    ..
                }
            )
        })
    }

    pub fn turan_failures(&self) -> impl Iterator<Item = &TuranEntry> {
        self.entries.iter().filter(|e| {
            matches!(
                e.status,
                TuranStatus::KtFree {
                    turan_holds: false,
                    ..
                }
            )
        })
    }
}

/// Minimum number of non-edges in a `K_{r+1}`-free graph on `h` vertices:
/// the complement of the Turán graph `T(h, r)`.
pub fn turan_min_non_edges(h: u64, r: u64) -> u64 {
    let (q, s) = (h / r, h % r);
    s * choose2(q + 1) + (r - s) * choose2(q)
}

/// For every `b ∈ B` with `h = |N(b) ∩ U| >= 2(t−1)`, looks for a heavy
/// `K_t` inside `N(b) ∩ U`; when there is none, checks the light-pair count
/// there. Every pair inside `N(b)` has weight at least one, so "not heavy"
/// means light.
pub fn turan_light_audit(
    g0: &RegularizedSubgraph,
    weights: &Weights,
    u_set: &[usize],
    params: &PipelineParams,
) -> TuranAudit {
    let t = params.t;
    let mut in_u = vec![false; g0.a_len()];
    for &u in u_set {
        in_u[u] = true;
    }
    let mut entries = Vec::with_capacity(g0.m());
    for b in 0..g0.m() {
        let local: Vec<usize> = g0
            .nbrs_b(b)
            .iter()
            .map(|&u| u as usize)
            .filter(|&u| in_u[u])
            .collect();
        let h = local.len();
        if h < 2 * (t - 1) {
            entries.push(TuranEntry {
                b,
                h,
                status: TuranStatus::Small,
            });
            continue;
        }
        let mut heavy = BitGraph::new(h);
        for x in 0..h {
            for y in x + 1..h {
                if params.is_heavy(weights.get(local[x], local[y])) {
                    heavy.add_edge(x, y);
                }
            }
        }
        let status = match heavy.find_clique(t) {
            Some(c) => TuranStatus::HeavyClique {
                clique: c.into_iter().map(|x| local[x]).collect(),
            },
            None => {
                let pairs = choose2(h as u64);
                let light = pairs - heavy.edge_count() as u64;
                let turan_bound = turan_min_non_edges(h as u64, t as u64 - 1);
                TuranStatus::KtFree {
                    light,
                    claimed_bound: pairs as f64 / (t - 1) as f64,
                    claimed_holds: light * (t as u64 - 1) >= pairs,
                    turan_bound,
                    turan_holds: light >= turan_bound,
                }
            }
        };
        entries.push(TuranEntry { b, h, status });
    }

    let light_edges = classify_edges(weights, u_set, params).light.len() as u64;
    let (delta, m, tt) = (g0.delta() as f64, g0.m() as f64, t as f64);
    let bound = if m == 0.0 {
        f64::INFINITY
    } else {
        delta * delta / (16.0 * tt * tt * tt * m) * choose2(u_set.len() as u64) as f64
    };
    let size_precondition =
        u_set.len() >= 2 && delta > 0.0 && u_set.len() as f64 >= 8.0 * tt * m / delta;
    let mut audit = TuranAudit {
        t,
        entries,
        aggregate: LightEdgeReport {
            u_size: u_set.len(),
            light_edges,
            bound,
            size_precondition,
            no_heavy_clique: false,
            all_local_bounds_hold: false,
            asserted: false,
            holds: light_edges as f64 >= bound,
        },
    };
    let no_heavy_clique = audit.heavy_clique().is_none();
    let all_local_bounds_hold = audit.claimed_failures().next().is_none();
    audit.aggregate.no_heavy_clique = no_heavy_clique;
    audit.aggregate.all_local_bounds_hold = all_local_bounds_hold;
    audit.aggregate.asserted = audit.aggregate.size_precondition
        && audit.aggregate.no_heavy_clique
        && audit.aggregate.all_local_bounds_hold;
    audit
}
