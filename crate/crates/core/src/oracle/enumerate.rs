use std::ops::ControlFlow;

use super::OracleError;
use crate::certificate::{HtCopy, HtLayout};
use crate::coloring::ProperColoring;

/// Visits every `H_t` subgraph of `K_n` exactly once.
///
/// Branch sets are chosen in increasing order, then subdivision vertices by
/// backtracking in lexicographic pair order. Sorting the branch set fixes the
/// labeling for `t >= 4`; for `t = 3` (a 6-cycle) the branch class is also
/// required to hold the smallest vertex, since either alternating class
/// could serve. Returns `false` if `visit` stopped early.
pub fn for_each_ht_copy(
    n: usize,
    t: usize,
    mut visit: impl FnMut(&HtCopy) -> ControlFlow<()>,
) -> Result<bool, OracleError> {
    if t < 3 {
        return Err(OracleError::BadT(t));
    }
    let layout = HtLayout::new(t);
    if n < layout.num_vertices() {
        return Err(OracleError::TooFewVertices {
            n,
            needed: layout.num_vertices(),
        });
    }
    let mut copy = HtCopy {
        branch: Vec::with_capacity(t),
        subdiv: Vec::with_capacity(layout.num_pairs()),
    };
    let mut used = vec![false; n];
    Ok(branches(n, t, 0, &mut copy, &mut used, &mut visit).is_continue())
}

fn branches(
    n: usize,
    t: usize,
    from: usize,
    copy: &mut HtCopy,
    used: &mut [bool],
    visit: &mut impl FnMut(&HtCopy) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if copy.branch.len() == t {
        let floor = if t == 3 { copy.branch[0] + 1 } else { 0 };
        return subdivisions(n, t, floor as usize, copy, used, visit);
    }
    let remaining = t - copy.branch.len();
    for v in from..=n - remaining {
        copy.branch.push(v as u32);
        used[v] = true;
        branches(n, t, v + 1, copy, used, visit)?;
        used[v] = false;
        copy.branch.pop();
    }
    ControlFlow::Continue(())
}

fn subdivisions(
    n: usize,
    t: usize,
    floor: usize,
    copy: &mut HtCopy,
    used: &mut [bool],
    visit: &mut impl FnMut(&HtCopy) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if copy.subdiv.len() == t * (t - 1) / 2 {
        return visit(copy);
    }
    for v in floor..n {
        if used[v] {
            continue;
        }
        used[v] = true;
        copy.subdiv.push(v as u32);
        subdivisions(n, t, floor, copy, used, visit)?;
        copy.subdiv.pop();
        used[v] = false;
    }
    ControlFlow::Continue(())
}

/// Collects up to `limit` copies (all of them when `limit` is `None`).
pub fn enumerate_ht_copies(
    coloring: &ProperColoring,
    t: usize,
    limit: Option<usize>,
) -> Result<Vec<HtCopy>, OracleError> {
    let mut out = Vec::new();
    for_each_ht_copy(coloring.n(), t, |c| {
        if limit.is_some_and(|l| out.len() >= l) {
            return ControlFlow::Break(());
        }
        out.push(c.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
