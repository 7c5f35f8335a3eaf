//! Proper edge-colorings of the complete graph `K_n`.
//!
//! Edges are stored densely in a fixed order: edge `(i, j)` with
//! `0 <= i < j < n` lives at [`edge_index`]`(n, i, j)`. Serialized colorings
//! use the same order, so files are portable bit-for-bit.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::{choose2, stream_rng};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex count must be positive")]
    EmptyGraph,
    #[error("edge_color has length {actual}, expected {expected} for n = {n}")]
    WrongLength {
        n: usize,
        expected: usize,
        actual: usize,
    },
    #[error("edge {edge} has color {color}, but num_colors is {num_colors}")]
    ColorOutOfRange {
        edge: usize,
        color: u32,
        num_colors: usize,
    },
    #[error("coloring is not proper: {count} incident same-colored edge pairs")]
    NotProper { count: usize },
    #[error("colors {0:?} are declared but never used")]
    UnusedColors(Vec<u32>),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Dense index of edge `{i, j}` in `K_n`, `i < j`.
#[inline]
pub fn edge_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub fn num_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Endpoints of every edge, in index order.
pub fn edge_endpoints(n: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(num_edges(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i as u32, j as u32));
        }
    }
    out
}

/// An edge-coloring as read from disk, not yet checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub n: usize,
    pub num_colors: usize,
    pub edge_color: Vec<u32>,
}

/// Two edges at `vertex` that share `color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Conflict {
    pub vertex: u32,
    pub color: u32,
    pub edges: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Conflict>,
    /// Colors in `[0, num_colors)` that no edge carries.
    pub unused_colors: Vec<u32>,
}

impl EdgeColoring {
    fn check_structure(&self) -> Result<(), ColoringError> {
        if self.n == 0 {
            return Err(ColoringError::EmptyGraph);
        }
        let expected = num_edges(self.n);
        if self.edge_color.len() != expected {
            return Err(ColoringError::WrongLength {
                n: self.n,
                expected,
                actual: self.edge_color.len(),
            });
        }
        if let Some((edge, &color)) = self
            .edge_color
            .iter()
            .enumerate()
            .find(|(_, &c)| c as usize >= self.num_colors)
        {
            return Err(ColoringError::ColorOutOfRange {
                edge,
                color,
                num_colors: self.num_colors,
            });
        }
        Ok(())
    }

    /// Checks properness, listing every pair of incident edges that share a
    /// color. Structural problems are reported as `Err`, not as violations.
    pub fn validate(&self) -> Result<ValidationReport, ColoringError> {
        self.check_structure()?;
        let n = self.n;
        let mut violations = Vec::new();
        let mut incident: Vec<(u32, usize)> = Vec::with_capacity(n);
        for v in 0..n {
            incident.clear();
            for w in 0..n {
                if w == v {
                    continue;
                }
                let e = edge_index(n, v.min(w), v.max(w));
                incident.push((self.edge_color[e], e));
            }
            incident.sort_unstable();
            for group in incident.chunk_by(|a, b| a.0 == b.0) {
                for (x, &(color, e1)) in group.iter().enumerate() {
                    for &(_, e2) in &group[x + 1..] {
                        violations.push(Conflict {
                            vertex: v as u32,
                            color,
                            edges: (e1, e2),
                        });
                    }
                }
            }
        }
        let mut used = vec![false; self.num_colors];
        for &c in &self.edge_color {
            used[c as usize] = true;
        }
        let unused_colors = (0..self.num_colors as u32)
            .filter(|&c| !used[c as usize])
            .collect();
        Ok(ValidationReport {
            ok: violations.is_empty(),
            violations,
            unused_colors,
        })
    }

    /// Stable fingerprint of the coloring (SHA-256 over `n`, `num_colors`
    /// and the little-endian color array).
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.n as u64).to_le_bytes());
        hasher.update((self.num_colors as u64).to_le_bytes());
        for c in &self.edge_color {
            hasher.update(c.to_le_bytes());
        }
        hex::encode(hasher.finalize())
    }
}

/// A validated proper edge-coloring of `K_n` in which every declared color
/// is used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperColoring {
    n: usize,
    num_colors: usize,
    edge_color: Vec<u32>,
    classes: Vec<Vec<(u32, u32)>>,
}

impl ProperColoring {
    pub fn new(n: usize, num_colors: usize, edge_color: Vec<u32>) -> Result<Self, ColoringError> {
        Self::try_from(EdgeColoring {
            n,
            num_colors,
            edge_color,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn edge_colors(&self) -> &[u32] {
        &self.edge_color
    }

    /// Color of edge `{u, v}`; `u != v`.
    #[inline]
    pub fn color(&self, u: u32, v: u32) -> u32 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edge_color[edge_index(self.n, a as usize, b as usize)]
    }

    /// Edges of color `c`, each as `(low, high)`. A matching.
    pub fn class(&self, c: u32) -> &[(u32, u32)] {
        &self.classes[c as usize]
    }

    pub fn classes(&self) -> &[Vec<(u32, u32)>] {
        &self.classes
    }

    pub fn histogram(&self) -> ColorHistogram {
        ColorHistogram {
            sizes: self.classes.iter().map(Vec::len).collect(),
        }
    }

    /// `Σ_c C(e_c, 2)`: unordered pairs of distinct same-colored edges.
    pub fn sum_pairs_per_color(&self) -> u64 {
        self.histogram().sum_pairs()
    }

    pub fn to_raw(&self) -> EdgeColoring {
        EdgeColoring {
            n: self.n,
            num_colors: self.num_colors,
            edge_color: self.edge_color.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("coloring serializes")
    }

    pub fn fingerprint(&self) -> String {
        self.to_raw().fingerprint()
    }
}

impl TryFrom<EdgeColoring> for ProperColoring {
    type Error = ColoringError;

    fn try_from(raw: EdgeColoring) -> Result<Self, Self::Error> {
        let report = raw.validate()?;
        if !report.ok {
            return Err(ColoringError::NotProper {
                count: report.violations.len(),
            });
        }
        if !report.unused_colors.is_empty() {
            return Err(ColoringError::UnusedColors(report.unused_colors));
        }
        let mut classes = vec![Vec::new(); raw.num_colors];
        for (e, (i, j)) in edge_endpoints(raw.n).into_iter().enumerate() {
            classes[raw.edge_color[e] as usize].push((i, j));
        }
        Ok(ProperColoring {
            n: raw.n,
            num_colors: raw.num_colors,
            edge_color: raw.edge_color,
            classes,
        })
    }
}

/// Multiset of color class sizes `e_c`, indexed by color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorHistogram {
    pub sizes: Vec<usize>,
}

impl ColorHistogram {
    pub fn total(&self) -> u64 {
        self.sizes.iter().map(|&s| s as u64).sum()
    }

    pub fn sum_pairs(&self) -> u64 {
        self.sizes.iter().map(|&s| choose2(s as u64)).sum()
    }
}

/// Circle-method 1-factorization of `K_n` for even `n`: `n - 1` colors, each
/// a perfect matching. Vertex `n - 1` is fixed and the rest rotate.
pub fn round_robin(n: usize) -> Result<ProperColoring, ColoringError> {
    if n < 2 || n % 2 == 1 {
        return Err(ColoringError::InvalidArgument(format!(
            "round-robin needs an even n >= 2, got {n}"
        )));
    }
    let rounds = n - 1;
    let mut edge_color = vec![0u32; num_edges(n)];
    let mut set = |a: usize, b: usize, c: usize| {
        let (a, b) = (a.min(b), a.max(b));
        edge_color[edge_index(n, a, b)] = c as u32;
    };
    for r in 0..rounds {
        set(r, n - 1, r);
        for k in 1..n / 2 {
            set((r + k) % rounds, (r + rounds - k) % rounds, r);
        }
    }
    ProperColoring::new(n, rounds, edge_color)
}

/// Round-robin for any `n >= 2`: odd `n` is padded with a dummy vertex whose
/// edges are dropped, leaving `n` colors of size `(n - 1) / 2`.
pub fn round_robin_any(n: usize) -> Result<ProperColoring, ColoringError> {
    if n.is_multiple_of(2) {
        return round_robin(n);
    }
    if n < 2 {
        return Err(ColoringError::InvalidArgument(format!(
            "round-robin needs n >= 2, got {n}"
        )));
    }
    let padded = round_robin(n + 1)?;
    let mut edge_color = Vec::with_capacity(num_edges(n));
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            edge_color.push(padded.color(i, j));
        }
    }
    ProperColoring::new(n, n, edge_color)
}

/// Every edge gets its own color.
pub fn rainbow(n: usize) -> Result<ProperColoring, ColoringError> {
    let m = num_edges(n);
    ProperColoring::new(n, m, (0..m as u32).collect())
}

/// Seeded greedy coloring aiming at `target_colors` colors.
///
/// Edges are visited in a seeded random order. Each edge takes the
/// least-used open color that is free at both endpoints (ties to the
/// smallest id), skipping colors that already hold
/// `ceil(C(n,2) / target_colors)` edges. A new color is opened when no open
/// color qualifies and fewer than `target_colors` are open, or when no open
/// color is free at all; only the latter can push the count past the target.
pub fn greedy_random(
    n: usize,
    target_colors: usize,
    seed: u64,
) -> Result<ProperColoring, ColoringError> {
    if n == 0 {
        return Err(ColoringError::EmptyGraph);
    }
    let chromatic_index = if n.is_multiple_of(2) { n - 1 } else { n };
    if n > 1 && target_colors < chromatic_index {
        return Err(ColoringError::InvalidArgument(format!(
            "target_colors {target_colors} is below the chromatic index {chromatic_index} of K_{n}"
        )));
    }
    let mut edges = edge_endpoints(n);
    edges.shuffle(&mut stream_rng(seed, 0));
    let capacity = num_edges(n).div_ceil(target_colors.max(1));

    let mut usage: Vec<usize> = Vec::new();
    // busy[v] = colors already present at v
    let mut busy: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    let mut edge_color = vec![0u32; num_edges(n)];
    for (u, v) in edges {
        let (bu, bv) = (&busy[u as usize], &busy[v as usize]);
        let free = |c: &u32| !bu.contains(c) && !bv.contains(c);
        let least_used = |cap: usize| {
            (0..usage.len() as u32)
                .filter(free)
                .filter(|&c| usage[c as usize] < cap)
                .min_by_key(|&c| (usage[c as usize], c))
        };
        let pick = match least_used(capacity) {
            Some(c) => Some(c),
            None if usage.len() < target_colors => None,
            None => least_used(usize::MAX),
        };
        let c = pick.unwrap_or_else(|| {
            usage.push(0);
            usage.len() as u32 - 1
        });
        usage[c as usize] += 1;
        busy[u as usize].insert(c);
        busy[v as usize].insert(c);
        edge_color[edge_index(n, u as usize, v as usize)] = c;
    }
    ProperColoring::new(n, usage.len(), edge_color)
}
