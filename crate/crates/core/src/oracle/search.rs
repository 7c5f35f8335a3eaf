use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use super::{automorphisms, color_isomorphic, for_each_ht_copy, OracleError};
use crate::certificate::{CertificatePair, HtCopy, HtLayout};
use crate::coloring::ProperColoring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchBudget {
    /// Visit every copy; a negative answer is a proof of absence.
    Exhaustive,
    /// Stop after this many copies; a negative answer is inconclusive.
    Copies(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairSearch {
    Found(CertificatePair),
    /// Every copy was examined and no pair exists.
    Absent {
        examined: usize,
    },
    /// The budget ran out first.
    Inconclusive {
        examined: usize,
    },
}

/// Exported record of an exhaustive negative answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsenceRecord {
    pub n: usize,
    pub t: usize,
    pub coloring_hash: String,
    pub absent: bool,
}

impl AbsenceRecord {
    pub fn new(coloring: &ProperColoring, t: usize) -> Self {
        AbsenceRecord {
            n: coloring.n(),
            t,
            coloring_hash: coloring.fingerprint(),
            absent: true,
        }
    }
}

/// Searches for two vertex-disjoint color-isomorphic copies of `H_t`.
///
/// Copies are bucketed by the lexicographically smallest color word over
/// all automorphisms, so two copies are color-isomorphic exactly when they
/// land in the same bucket. Each new copy is checked for vertex-disjointness
/// against its bucket before being stored.
pub fn find_disjoint_color_iso_pair(
    coloring: &ProperColoring,
    t: usize,
    budget: SearchBudget,
) -> Result<PairSearch, OracleError> {
    if t < 3 {
        return Err(OracleError::BadT(t));
    }
    let n = coloring.n();
    let layout = HtLayout::new(t);
    if n < 2 * layout.num_vertices() {
        return Err(OracleError::TooFewVertices {
            n,
            needed: 2 * layout.num_vertices(),
        });
    }
    if n > 128 {
        return Err(OracleError::TooLarge(n));
    }
    let edges = layout.edges();
    let autos = automorphisms(t);
    let mut buckets: HashMap<Box<[u32]>, Vec<(u128, HtCopy)>> = HashMap::new();
    let mut examined = 0usize;
    let mut found = None;
    let mut word = vec![0u32; edges.len()];
    let mut best = vec![0u32; edges.len()];

    let completed = for_each_ht_copy(n, t, |copy| {
        if let SearchBudget::Copies(max) = budget {
            if examined >= max {
                return ControlFlow::Break(());
            }
        }
        examined += 1;
        for (k, map) in autos.iter().enumerate() {
            for (w, &(p, q)) in word.iter_mut().zip(&edges) {
                *w = coloring.color(copy.at(map[p]), copy.at(map[q]));
            }
            if k == 0 || word < best {
                best.copy_from_slice(&word);
            }
        }
        let mask = copy.vertices().fold(0u128, |m, v| m | 1 << v);
        let bucket = buckets.entry(best.clone().into_boxed_slice()).or_default();
        if let Some((_, other)) = bucket.iter().find(|(m, _)| m & mask == 0) {
            found = Some((other.clone(), copy.clone()));
            return ControlFlow::Break(());
        }
        bucket.push((mask, copy.clone()));
        ControlFlow::Continue(())
    })?;

    if let Some((c1, c2)) = found {
        let map = color_isomorphic(coloring, &c1, &c2)
            .expect("copies in one bucket are color-isomorphic");
        return Ok(PairSearch::Found(CertificatePair {
            t,
            copy1: c1,
            copy2: c2.permuted(&map),
            colors_checked: false,
        }));
    }
    Ok(if completed {
        PairSearch::Absent { examined }
    } else {
        PairSearch::Inconclusive { examined }
    })
}
