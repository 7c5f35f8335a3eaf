use crate::certificate::{HtCopy, HtLayout};
use crate::coloring::ProperColoring;

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p
        .iter()
        .rposition(|&x| x > p[i])
        .expect("pivot has a successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// All automorphisms of `H_t` as position maps, identity first.
///
/// For `t = 3` this is the dihedral group of the 6-cycle (12 maps, some of
/// which swap branch and subdivision roles). For `t >= 4` branch vertices
/// are the only vertices of degree above two, so the `t!` branch
/// permutations are everything.
pub fn automorphisms(t: usize) -> Vec<Vec<usize>> {
    let layout = HtLayout::new(t);
    if t == 3 {
        // b0 s01 b1 s12 b2 s02
        let cycle = [0, 3, 1, 5, 2, 4];
        let mut out = Vec::with_capacity(12);
        for dir in [1usize, 5] {
            for r in 0..6 {
                let mut map = vec![0; 6];
                for k in 0..6 {
                    map[cycle[k]] = cycle[(r + dir * k) % 6];
                }
                out.push(map);
            }
        }
        return out;
    }
    let mut perm: Vec<usize> = (0..t).collect();
    let mut out = Vec::new();
    loop {
        let mut map = vec![0; layout.num_vertices()];
        map[..t].copy_from_slice(&perm);
        for (i, j) in layout.pairs() {
            let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
            map[t + layout.pair_index(i, j)] = t + layout.pair_index(a, b);
        }
        out.push(map);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// A position map `φ` from `c1` to `c2` with
/// `color(c1[p], c1[q]) = color(c2[φp], c2[φq])` on every edge, if any.
pub fn color_isomorphic(coloring: &ProperColoring, c1: &HtCopy, c2: &HtCopy) -> Option<Vec<usize>> {
    if c1.t() != c2.t() {
        return None;
    }
    let edges = c1.layout().edges();
    automorphisms(c1.t()).into_iter().find(|map| {
        edges.iter().all(|&(p, q)| {
            coloring.color(c1.at(p), c1.at(q)) == coloring.color(c2.at(map[p]), c2.at(map[q]))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn edge_set(layout: &HtLayout, map: &[usize]) -> BTreeSet<(usize, usize)> {
        layout
            .edges()
            .into_iter()
            .map(|(p, q)| (map[p].min(map[q]), map[p].max(map[q])))
            .collect()
    }

    #[test]
    fn automorphism_counts_and_validity() {
        for (t, count) in [(3, 12), (4, 24), (5, 120)] {
            let layout = HtLayout::new(t);
            let all = automorphisms(t);
            assert_eq!(all.len(), count);
            let identity: Vec<usize> = (0..layout.num_vertices()).collect();
            assert_eq!(all[0], identity);
            let edges = edge_set(&layout, &identity);
            let distinct: BTreeSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), count);
            for map in &all {
                assert_eq!(edge_set(&layout, map), edges);
            }
        }
    }

    #[test]
    fn next_permutation_walks_all_orders() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 1, 0]);
    }
}
