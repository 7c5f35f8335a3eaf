use super::EmbedError;
use crate::regularize::RegularizedSubgraph;

/// `|N(u) ∩ N(v)|` in `g0` for `u != v` in side `A`, by sorted merge.
pub fn codegree(g0: &RegularizedSubgraph, u: usize, v: usize) -> Result<u32, EmbedError> {
    for x in [u, v] {
        if x >= g0.a_len() {
            return Err(EmbedError::NotInSideA(x));
        }
    }
    if u == v {
        return Err(EmbedError::InvalidArgument(format!(
            "codegree needs two distinct vertices, got {u} twice"
        )));
    }
    let (mut a, mut b) = (
        g0.nbrs_a(u).iter().peekable(),
        g0.nbrs_a(v).iter().peekable(),
    );
    let mut common = 0;
    while let (Some(&&x), Some(&&y)) = (a.peek(), b.peek()) {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => {
                a.next();
            }
            std::cmp::Ordering::Greater => {
                b.next();
            }
            std::cmp::Ordering::Equal => {
                common += 1;
                a.next();
                b.next();
            }
        }
    }
    Ok(common)
}

/// Dense table of all codegrees in side `A`, filled from the `B` side in
/// `Σ_b deg(b)²` time.
#[derive(Debug, Clone)]
pub struct Weights {
    size: usize,
    table: Vec<u32>,
}

impl Weights {
    pub fn new(g0: &RegularizedSubgraph) -> Self {
        let size = g0.a_len();
        let mut table = vec![0u32; size * size];
        for b in 0..g0.m() {
            let nbrs = g0.nbrs_b(b);
            for (x, &u) in nbrs.iter().enumerate() {
                for &v in &nbrs[x + 1..] {
                    table[u as usize * size + v as usize] += 1;
                    table[v as usize * size + u as usize] += 1;
                }
            }
        }
        Weights { size, table }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.table[u * self.size + v]
    }
}
