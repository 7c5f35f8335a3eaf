//! Recursive greedy choice of branch vertices with the deletion method.
//!
//! At step `ℓ` the candidate set `U0` holds the vertices of `A` that are
//! light to every chosen `u_1..u_{ℓ−1}`. Two kinds of candidates are
//! deleted:
//!
//! * triple: `u` has a common neighbor with some chosen `u_i, u_j`;
//! * shared: some `T ∈ N(u_k) ∩ N(u)` shares a `K_n` vertex with some
//!   `S ∈ N(u_i) ∩ N(u_j)`, for distinct chosen `i, j, k`.
//!
//! Survivors are ranked by light degree inside the surviving set (ties to
//! the smallest id); the next candidate set is the light neighborhood of
//! the pick. Once `u_t` is picked, each `v_ij` is the smallest common
//! neighbor of `u_i, u_j` that keeps all pairs `K_n`-disjoint.
//!
//! Alternatives (next-ranked branch vertex, next subdivision candidate) are
//! explored depth-first and every one costs one unit of `max_backtracks`.

use std::fmt;

use serde::Serialize;

use super::{HtEmbedding, Mode, PipelineParams, Route, Weights};
use crate::auxgraph::shares_vertex;
use crate::certificate::HtLayout;
use crate::clique::BitGraph;
use crate::regularize::RegularizedSubgraph;
use crate::{binomial, choose2, ratio_to_f64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GateKind {
    /// `|A| >= 8tm/δ`
    InitialSize,
    /// `|U0| >= (δ²/64t³m)^{ℓ−1} |A|`
    LightDensity,
    /// `(δ²/64t³m)^{ℓ−1}|A|` exceeds twice the worst-case deletion count.
    DeletionBudget,
    /// `|U| >= 8tm/δ` after deletion, for `ℓ <= t−1`.
    LightSize,
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GateKind::InitialSize => "initial-size",
            GateKind::LightDensity => "light-density",
            GateKind::DeletionBudget => "deletion-budget",
            GateKind::LightSize => "light-size",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateRecord {
    pub gate: GateKind,
    pub step: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub held: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct DeletionTally {
    pub triple: usize,
    pub shared: usize,
    /// `C(ℓ−1,2) · 2C(t,2) · Kδ`
    pub triple_bound: f64,
    /// `C(ℓ−1,3) · 4C(t,2) · Kδ`
    pub shared_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub candidates: usize,
    pub survivors: usize,
    pub deleted: DeletionTally,
    pub chosen: Option<usize>,
    pub gates: Vec<GateRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureKind {
    EmptyGraph,
    ExhaustedCandidates,
    BacktrackBudgetExhausted,
    GateFailed { gate: GateKind, step: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbedFailure {
    #[serde(flatten)]
    pub kind: FailureKind,
    pub step_reached: usize,
    pub backtracks: usize,
    /// Deepest path explored (or the path at the failing gate).
    pub trajectory: Vec<StepRecord>,
}

impl fmt::Display for EmbedFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FailureKind::EmptyGraph => write!(f, "regularized graph is empty"),
            FailureKind::ExhaustedCandidates => write!(
                f,
                "candidates exhausted (deepest step {}, {} backtracks)",
                self.step_reached, self.backtracks
            ),
            FailureKind::BacktrackBudgetExhausted => write!(
                f,
                "backtrack budget exhausted after {} backtracks (deepest step {})",
                self.backtracks, self.step_reached
            ),
            FailureKind::GateFailed { gate, step } => {
                write!(f, "gate {gate} failed at step {step}")
            }
        }
    }
}

impl std::error::Error for EmbedFailure {}

enum Abort {
    Gate(GateKind, usize),
    Budget,
}

struct Budget {
    spent: usize,
    max: usize,
}

impl Budget {
    fn spend(&mut self) -> Result<(), Abort> {
        if self.spent >= self.max {
            return Err(Abort::Budget);
        }
        self.spent += 1;
        Ok(())
    }
}

fn common_neighbors(g0: &RegularizedSubgraph, u: usize, v: usize) -> Vec<usize> {
    let (a, b) = (g0.nbrs_a(u), g0.nbrs_a(v));
    let (mut x, mut y, mut out) = (0, 0, Vec::new());
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[x] as usize);
                x += 1;
                y += 1;
            }
        }
    }
    out
}

fn assign_rec(
    g0: &RegularizedSubgraph,
    branch: &[usize],
    pairs: &[(usize, usize)],
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<bool, Abort> {
    let Some(&(i, j)) = pairs.get(chosen.len()) else {
        return Ok(true);
    };
    let mut tried = 0;
    for b in common_neighbors(g0, branch[i], branch[j]) {
        let p = g0.b_pair(b);
        if chosen
            .iter()
            .any(|&c| c == b || shares_vertex(g0.b_pair(c), p))
        {
            continue;
        }
        if tried > 0 {
            budget.spend()?;
        }
        tried += 1;
        chosen.push(b);
        if assign_rec(g0, branch, pairs, chosen, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

fn assign_with(
    g0: &RegularizedSubgraph,
    branch: &[usize],
    route: Route,
    budget: &mut Budget,
) -> Result<Option<HtEmbedding>, Abort> {
    let layout = HtLayout::new(branch.len());
    let pairs: Vec<_> = layout.pairs().collect();
    let mut chosen = Vec::with_capacity(pairs.len());
    if !assign_rec(g0, branch, &pairs, &mut chosen, budget)? {
        return Ok(None);
    }
    let emb = HtEmbedding {
        t: branch.len(),
        branch: branch.to_vec(),
        subdiv: chosen,
        route,
    };
    // Branch pairs may still overlap in graphs not built from a coloring.
    Ok(emb.violations(g0).is_empty().then_some(emb))
}

/// Picks `v_ij ∈ N(u_i) ∩ N(u_j)` for every `i < j`, lexicographically,
/// smallest id first, keeping all chosen pairs `K_n`-disjoint. `Ok(None)`
/// means no assignment exists; an error means the budget ran out first.
pub fn assign_subdivisions(
    g0: &RegularizedSubgraph,
    branch: &[usize],
    max_backtracks: usize,
) -> Result<Option<HtEmbedding>, FailureKind> {
    let mut budget = Budget {
        spent: 0,
        max: max_backtracks,
    };
    assign_with(g0, branch, Route::LightRecursion, &mut budget).map_err(|abort| match abort {
        Abort::Budget => FailureKind::BacktrackBudgetExhausted,
        Abort::Gate(gate, step) => FailureKind::GateFailed { gate, step },
    })
}

/// Completes a `K_t` of heavy pairs to an embedding. Each heavy pair has at
/// least `2·C(t,2)` common neighbors and every earlier pick excludes at most
/// two of them, so the greedy choice never gets stuck on a graph built from
/// a proper coloring.
pub fn complete_heavy_clique(
    g0: &RegularizedSubgraph,
    clique: &[usize],
    params: &PipelineParams,
) -> Option<HtEmbedding> {
    let mut budget = Budget {
        spent: 0,
        max: params.max_backtracks,
    };
    assign_with(g0, clique, Route::HeavyClique, &mut budget)
        .ok()
        .flatten()
}

struct Search<'a> {
    g0: &'a RegularizedSubgraph,
    weights: &'a Weights,
    params: &'a PipelineParams,
    budget: Budget,
    big_k_delta: f64,
    size_gate: f64,
    rho: f64,
    path: Vec<StepRecord>,
    deepest: Vec<StepRecord>,
}

impl Search<'_> {
    fn light(&self, u: usize, v: usize) -> bool {
        self.params.is_light(self.weights.get(u, v))
    }

    fn delete(&self, chosen: &[usize], u0: &[usize], step: usize) -> (Vec<usize>, DeletionTally) {
        let g0 = self.g0;
        let mut triple = vec![false; g0.a_len()];
        let mut shared = vec![false; g0.a_len()];
        let codeg: Vec<Vec<Vec<usize>>> = chosen
            .iter()
            .map(|&ui| {
                chosen
                    .iter()
                    .map(|&uj| common_neighbors(g0, ui, uj))
                    .collect()
            })
            .collect();
        for (i, row) in codeg.iter().enumerate() {
            for (j, common) in row.iter().enumerate().skip(i + 1) {
                for &s in common {
                    for &u in g0.nbrs_b(s) {
                        triple[u as usize] = true;
                    }
                }
                for (k, &uk) in chosen.iter().enumerate() {
                    if k == i || k == j {
                        continue;
                    }
                    for &tb in g0.nbrs_a(uk) {
                        let tp = g0.b_pair(tb as usize);
                        if common.iter().any(|&s| shares_vertex(g0.b_pair(s), tp)) {
                            for &u in g0.nbrs_b(tb as usize) {
                                shared[u as usize] = true;
                            }
                        }
                    }
                }
            }
        }
        let t = self.params.t as u64;
        let prev = step as u64 - 1;
        let mut tally = DeletionTally {
            triple_bound: (binomial(prev, 2) * 2 * choose2(t)) as f64 * self.big_k_delta,
            shared_bound: (binomial(prev, 3) * 4 * choose2(t)) as f64 * self.big_k_delta,
            ..Default::default()
        };
        let mut survivors = Vec::with_capacity(u0.len());
        for &u in u0 {
            if triple[u] {
                tally.triple += 1;
            } else if shared[u] {
                tally.shared += 1;
            } else {
                survivors.push(u);
            }
        }
        (survivors, tally)
    }

    fn gate(&self, rec: &mut StepRecord, gate: GateKind, lhs: f64, rhs: f64, strict_gt: bool) {
        let held = if strict_gt { lhs > rhs } else { lhs >= rhs };
        rec.gates.push(GateRecord {
            gate,
            step: rec.step,
            lhs,
            rhs,
            held,
        });
    }

    fn step(
        &mut self,
        chosen: &mut Vec<usize>,
        u0: Vec<usize>,
    ) -> Result<Option<HtEmbedding>, Abort> {
        let t = self.params.t;
        let l = chosen.len() + 1;
        let a_len = self.g0.a_len() as f64;
        let (survivors, deleted) = self.delete(chosen, &u0, l);
        let mut rec = StepRecord {
            step: l,
            candidates: u0.len(),
            survivors: survivors.len(),
            deleted,
            chosen: None,
            gates: Vec::new(),
        };
        if l == 1 {
            self.gate(
                &mut rec,
                GateKind::InitialSize,
                a_len,
                self.size_gate,
                false,
            );
        } else {
            let target = self.rho.powi(l as i32 - 1) * a_len;
            self.gate(
                &mut rec,
                GateKind::LightDensity,
                u0.len() as f64,
                target,
                false,
            );
            let prev = l as u64 - 1;
            let worst = (binomial(prev, 3) * 4 + binomial(prev, 2) * 2) as f64
                * choose2(t as u64) as f64
                * self.big_k_delta;
            if l < t {
                self.gate(
                    &mut rec,
                    GateKind::DeletionBudget,
                    target,
                    2.0 * worst,
                    false,
                );
                self.gate(
                    &mut rec,
                    GateKind::LightSize,
                    survivors.len() as f64,
                    self.size_gate,
                    false,
                );
            } else {
                self.gate(&mut rec, GateKind::DeletionBudget, target, worst, true);
            }
        }
        let failed = rec.gates.iter().find(|g| !g.held).map(|g| g.gate);
        self.path.push(rec);
        if self.path.len() > self.deepest.len() {
            self.deepest = self.path.clone();
        }
        if let (Mode::Strict, Some(gate)) = (self.params.mode, failed) {
            self.deepest = self.path.clone();
            return Err(Abort::Gate(gate, l));
        }

        let mut ranked: Vec<(usize, usize)> = survivors
            .iter()
            .map(|&u| {
                let d = survivors
                    .iter()
                    .filter(|&&w| w != u && self.light(u, w))
                    .count();
                (d, u)
            })
            .collect();
        ranked.sort_by_key(|&(d, u)| (std::cmp::Reverse(d), u));

        for (rank, &(_, u)) in ranked.iter().enumerate() {
            if rank > 0 {
                self.budget.spend()?;
            }
            self.path.last_mut().expect("pushed above").chosen = Some(u);
            chosen.push(u);
            let found = if l == t {
                assign_with(self.g0, chosen, Route::LightRecursion, &mut self.budget)?
            } else {
                let next: Vec<usize> = survivors
                    .iter()
                    .copied()
                    .filter(|&w| w != u && self.light(u, w))
                    .collect();
                self.step(chosen, next)?
            };
            if found.is_some() {
                return Ok(found);
            }
            chosen.pop();
        }
        self.path.pop();
        Ok(None)
    }
}

/// Embeds `H_t` into `g0` with pairwise `K_n`-disjoint vertices.
///
/// A `K_t` of heavy pairs is completed directly when one exists; otherwise
/// the light-edge recursion described in the module docs runs.
pub fn greedy_embed(
    g0: &RegularizedSubgraph,
    params: &PipelineParams,
) -> Result<HtEmbedding, Box<EmbedFailure>> {
    let fail = |kind, step_reached, backtracks, trajectory| {
        Box::new(EmbedFailure {
            kind,
            step_reached,
            backtracks,
            trajectory,
        })
    };
    if g0.a_len() == 0 || g0.edge_count() == 0 {
        return Err(fail(FailureKind::EmptyGraph, 1, 0, Vec::new()));
    }
    let t = params.t;
    let weights = Weights::new(g0);

    let mut heavy = BitGraph::new(g0.a_len());
    for u in 0..g0.a_len() {
        for v in u + 1..g0.a_len() {
            if params.is_heavy(weights.get(u, v)) {
                heavy.add_edge(u, v);
            }
        }
    }
    if let Some(clique) = heavy.find_clique(t) {
        if let Some(emb) = complete_heavy_clique(g0, &clique, params) {
            return Ok(emb);
        }
    }

    let (delta, m, tt) = (g0.delta() as f64, g0.m() as f64, t as f64);
    let mut search = Search {
        g0,
        weights: &weights,
        params,
        budget: Budget {
            spent: 0,
            max: params.max_backtracks,
        },
        big_k_delta: ratio_to_f64(&g0.big_k()) * delta,
        size_gate: 8.0 * tt * m / delta,
        rho: delta * delta / (64.0 * tt * tt * tt * m),
        path: Vec::new(),
        deepest: Vec::new(),
    };
    let mut chosen = Vec::with_capacity(t);
    let result = search.step(&mut chosen, (0..g0.a_len()).collect());
    let backtracks = search.budget.spent;
    let reached = search.deepest.len();
    match result {
        Ok(Some(emb)) => Ok(emb),
        Ok(None) => Err(fail(
            FailureKind::ExhaustedCandidates,
            reached,
            backtracks,
            search.deepest,
        )),
        Err(Abort::Budget) => Err(fail(
            FailureKind::BacktrackBudgetExhausted,
            reached,
            backtracks,
            search.deepest,
        )),
        Err(Abort::Gate(gate, step)) => Err(fail(
            FailureKind::GateFailed { gate, step },
            step,
            backtracks,
            search.deepest,
        )),
    }
}
