use super::{EmbedError, HtEmbedding};
use crate::certificate::{CertificatePair, HtCopy};
use crate::coloring::ProperColoring;
use crate::regularize::RegularizedSubgraph;

/// Splits every pair of the embedding into its coordinates: `copy1` takes
/// `x1` of each branch pair and `x3` of each subdivision pair, `copy2` takes
/// `x2` and `x4`.
///
/// Any broken invariant, before or after lifting, is reported as
/// [`EmbedError::InternalInconsistency`].
pub fn lift_to_certificate(
    embedding: &HtEmbedding,
    g0: &RegularizedSubgraph,
    coloring: &ProperColoring,
) -> Result<CertificatePair, EmbedError> {
    let problems = embedding.violations(g0);
    if !problems.is_empty() {
        return Err(EmbedError::InternalInconsistency(problems.join("; ")));
    }
    let a: Vec<_> = embedding.branch.iter().map(|&u| g0.a_pair(u)).collect();
    let b: Vec<_> = embedding.subdiv.iter().map(|&v| g0.b_pair(v)).collect();
    let n = coloring.n() as u32;
    if let Some(p) = a.iter().chain(&b).find(|p| p.0 >= n || p.1 >= n) {
        return Err(EmbedError::InternalInconsistency(format!(
            "pair {p:?} is outside K_{n}"
        )));
    }
    let copy1 = HtCopy {
        branch: a.iter().map(|p| p.0).collect(),
        subdiv: b.iter().map(|p| p.0).collect(),
    };
    let copy2 = HtCopy {
        branch: a.iter().map(|p| p.1).collect(),
        subdiv: b.iter().map(|p| p.1).collect(),
    };

    let mut seen = vec![false; coloring.n()];
    for v in copy1.vertices().chain(copy2.vertices()) {
        if std::mem::replace(&mut seen[v as usize], true) {
            return Err(EmbedError::InternalInconsistency(format!(
                "vertex {v} used twice across the two copies"
            )));
        }
    }
    for (p, q) in embedding.layout().edges() {
        let c1 = coloring.color(copy1.at(p), copy1.at(q));
        let c2 = coloring.color(copy2.at(p), copy2.at(q));
        if c1 != c2 {
            return Err(EmbedError::InternalInconsistency(format!(
                "edge ({p},{q}) has color {c1} in copy1 but {c2} in copy2"
            )));
        }
    }
    Ok(CertificatePair {
        t: embedding.t,
        copy1,
        copy2,
        colors_checked: false,
    })
}
