//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library's own indexing or counting code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use colorpair::coloring::{greedy_random, rainbow, round_robin_any};
use colorpair::{Equipartition, HtCopy, Pair, ProperColoring, RegularizedSubgraph};

/// Edge colors keyed by unordered endpoints, rebuilt by walking the color
/// vector in the documented `(i, j)` lexicographic order.
pub fn color_map(n: usize, colors: &[u32]) -> HashMap<(u32, u32), u32> {
    let mut map = HashMap::new();
    let mut k = 0;
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            map.insert((i, j), colors[k]);
            k += 1;
        }
    }
    assert_eq!(k, colors.len());
    map
}

pub fn col(map: &HashMap<(u32, u32), u32>, u: u32, v: u32) -> u32 {
    map[&(u.min(v), u.max(v))]
}

/// Quadratic scan over all pairs of edges: proper iff no two edges sharing
/// an endpoint share a color.
pub fn proper_by_scan(n: usize, colors: &[u32]) -> bool {
    let mut edges = Vec::with_capacity(colors.len());
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            edges.push((i, j, colors[edges.len()]));
        }
    }
    assert_eq!(edges.len(), colors.len());
    for (x, &(a, b, c1)) in edges.iter().enumerate() {
        for &(p, q, c2) in &edges[x + 1..] {
            if c1 == c2 && (a == p || a == q || b == p || b == q) {
                return false;
            }
        }
    }
    true
}

fn part_index(partition: &Equipartition, v: u32) -> usize {
    (0..4).find(|&k| partition.part(k).contains(&v)).unwrap()
}

/// Same-colored edge pairs `{x1x3, x2x4}` by scanning every pair of edges.
pub fn cross_count_scan(coloring: &ProperColoring, partition: &Equipartition) -> u64 {
    let n = coloring.n();
    let map = color_map(n, coloring.edge_colors());
    let is = |(a, b): (u32, u32), p: usize, q: usize| {
        let (x, y) = (part_index(partition, a), part_index(partition, b));
        (x == p && y == q) || (x == q && y == p)
    };
    let edges: Vec<_> = map.iter().map(|(&e, &c)| (e, c)).collect();
    let mut count = 0;
    for &(e, c1) in &edges {
        for &(f, c2) in &edges {
            if c1 == c2 && is(e, 0, 2) && is(f, 1, 3) {
                count += 1;
            }
        }
    }
    count
}

/// Edge set of the auxiliary graph from its definition: all
/// `((x1,x2),(x3,x4))` with `c(x1x3) = c(x2x4)`.
pub fn aux_edges_scan(
    coloring: &ProperColoring,
    partition: &Equipartition,
) -> BTreeSet<(Pair, Pair)> {
    let map = color_map(coloring.n(), coloring.edge_colors());
    let mut out = BTreeSet::new();
    for &x1 in partition.part(0) {
        for &x2 in partition.part(1) {
            for &x3 in partition.part(2) {
                for &x4 in partition.part(3) {
                    if col(&map, x1, x3) == col(&map, x2, x4) {
                        out.insert(((x1, x2), (x3, x4)));
                    }
                }
            }
        }
    }
    out
}

/// Codegree of `u, v` in side `A` via hash-set intersection.
pub fn codegree_hash(g0: &RegularizedSubgraph, u: usize, v: usize) -> usize {
    let a: HashSet<u32> = g0.nbrs_a(u).iter().copied().collect();
    g0.nbrs_a(v).iter().filter(|b| a.contains(b)).count()
}

/// Edges of `H_t` on positions: branch `i` is position `i`, subdivision of
/// pair `(i, j)` (lexicographic) is position `t + k`.
pub fn ht_edges(t: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut k = t;
    for i in 0..t {
        for j in i + 1..t {
            out.push((i, k));
            out.push((j, k));
            k += 1;
        }
    }
    out
}

pub fn copy_positions(c: &HtCopy) -> Vec<u32> {
    c.branch.iter().chain(&c.subdiv).copied().collect()
}

/// Unlabeled edge set of a copy, for counting distinct subgraphs.
pub fn copy_edge_set(c: &HtCopy) -> Vec<(u32, u32)> {
    let pos = copy_positions(c);
    let t = c.branch.len();
    let mut e: Vec<_> = ht_edges(t)
        .into_iter()
        .map(|(p, q)| (pos[p].min(pos[q]), pos[p].max(pos[q])))
        .collect();
    e.sort_unstable();
    e
}

/// Heap's algorithm over `0..k`.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, out);
    }
    let mut a: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    heap(k, &mut a, &mut out);
    out
}

/// Rainbow `K_n` with the colors of a 6-cycle `a` copied onto a disjoint
/// 6-cycle `b`, position by position; unused colors are compacted away.
pub fn planted_pair(n: usize, a: [u32; 6], b: [u32; 6]) -> ProperColoring {
    let base = rainbow(n).unwrap();
    let mut colors = base.edge_colors().to_vec();
    let idx = |u: u32, v: u32| {
        let (i, j) = (u.min(v) as usize, u.max(v) as usize);
        i * n - i * (i + 1) / 2 + (j - i - 1)
    };
    for k in 0..6 {
        let (p, q) = (k, (k + 1) % 6);
        colors[idx(b[p], b[q])] = colors[idx(a[p], a[q])];
    }
    let used: BTreeSet<u32> = colors.iter().copied().collect();
    let relabel: HashMap<u32, u32> = used
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as u32))
        .collect();
    let colors: Vec<u32> = colors.iter().map(|c| relabel[c]).collect();
    ProperColoring::new(n, used.len(), colors).unwrap()
}

/// A mixed corpus of colorings with `n` in `lo..=hi`.
pub fn corpus(lo: usize, hi: usize, seeds: u64) -> Vec<ProperColoring> {
    let mut out = Vec::new();
    for n in lo..=hi {
        out.push(round_robin_any(n).unwrap());
        let chi = if n % 2 == 0 { n - 1 } else { n };
        for seed in 0..seeds {
            out.push(greedy_random(n, chi, seed).unwrap());
            out.push(greedy_random(n, chi + n / 2, seed).unwrap());
        }
    }
    out
}
