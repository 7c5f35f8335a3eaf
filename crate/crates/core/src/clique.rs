//! Small-`k` clique search on bitset adjacency.

/// Undirected graph on `0..len` stored as adjacency bitsets.
#[derive(Debug, Clone)]
pub struct BitGraph {
    len: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn new(len: usize) -> Self {
        let words = len.div_ceil(64).max(1);
        BitGraph {
            len,
            words,
            rows: vec![0; len * words],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// First `k`-clique in lexicographic order of sorted vertex lists, if
    /// any.
    pub fn find_clique(&self, k: usize) -> Option<Vec<usize>> {
        if k == 0 {
            return Some(Vec::new());
        }
        if k > self.len {
            return None;
        }
        let mut all = vec![0u64; self.words];
        for v in 0..self.len {
            all[v / 64] |= 1 << (v % 64);
        }
        let mut chosen = Vec::with_capacity(k);
        self.extend(&all, k, &mut chosen).then_some(chosen)
    }

    fn extend(&self, cand: &[u64], k: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        let need = k - chosen.len();
        let available: usize = cand.iter().map(|w| w.count_ones() as usize).sum();
        if available < need {
            return false;
        }
        let mut rest = cand.to_vec();
        for w in 0..self.words {
            while rest[w] != 0 {
                let v = w * 64 + rest[w].trailing_zeros() as usize;
                rest[w] &= rest[w] - 1;
                let next: Vec<u64> = rest.iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
                chosen.push(v);
                if self.extend(&next, k, chosen) {
                    return true;
                }
                chosen.pop();
                let remaining: usize = rest.iter().map(|x| x.count_ones() as usize).sum();
                if remaining < need {
                    return false;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_in_wheel() {
        let mut g = BitGraph::new(5);
        for v in 1..5 {
            g.add_edge(0, v);
            g.add_edge(v, v % 4 + 1);
        }
        assert_eq!(g.find_clique(3), Some(vec![0, 1, 2]));
        assert_eq!(g.find_clique(4), None);
    }

    #[test]
    fn bipartite_has_no_triangle() {
        let mut g = BitGraph::new(130);
        for a in 0..65 {
            for b in 65..130 {
                g.add_edge(a, b);
            }
        }
        assert_eq!(g.find_clique(2), Some(vec![0, 65]));
        assert_eq!(g.find_clique(3), None);
        assert_eq!(g.edge_count(), 65 * 65);
    }

    #[test]
    fn complete_graph_clique_of_every_size() {
        let mut g = BitGraph::new(70);
        for u in 0..70 {
            for v in u + 1..70 {
                g.add_edge(u, v);
            }
        }
        for k in 0..6 {
            assert_eq!(g.find_clique(k), Some((0..k).collect()));
        }
    }
}
