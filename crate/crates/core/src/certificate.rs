//! `H_t` copies in `K_n` and the certificate format shared by the pipeline
//! and the oracle.
//!
//! Positions of an `H_t` copy are numbered branch vertices first
//! (`0..t`), then subdivision vertices in lexicographic order of their index
//! pair `(i, j)`, `i < j`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("malformed certificate JSON: {0}")]
    Json(String),
    #[error("t must be at least 3, got {0}")]
    BadT(usize),
    #[error("{copy}: expected {expected} {what}, found {found}")]
    WrongCount {
        copy: &'static str,
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{copy}: bad subdivision key {key:?}")]
    BadKey { copy: &'static str, key: String },
}

/// Index bookkeeping for `H_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HtLayout {
    pub t: usize,
}

impl HtLayout {
    pub fn new(t: usize) -> Self {
        HtLayout { t }
    }

    pub fn num_pairs(&self) -> usize {
        self.t * (self.t - 1) / 2
    }

    pub fn num_vertices(&self) -> usize {
        self.t + self.num_pairs()
    }

    /// Lexicographic rank of `(i, j)`, `i < j < t`.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.t);
        i * self.t - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Index pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.t).flat_map(move |i| (i + 1..self.t).map(move |j| (i, j)))
    }

    /// Edges of `H_t` as position pairs `(branch, subdivision)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .enumerate()
            .flat_map(|(k, (i, j))| [(i, self.t + k), (j, self.t + k)])
            .collect()
    }
}

/// One labeled copy of `H_t` in `K_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HtCopy {
    pub branch: Vec<u32>,
    /// Indexed by [`HtLayout::pair_index`].
    pub subdiv: Vec<u32>,
}

impl HtCopy {
    pub fn t(&self) -> usize {
        self.branch.len()
    }

    pub fn layout(&self) -> HtLayout {
        HtLayout::new(self.t())
    }

    /// Vertex at a position (branch first, then subdivision).
    pub fn at(&self, pos: usize) -> u32 {
        if pos < self.branch.len() {
            self.branch[pos]
        } else {
            self.subdiv[pos - self.branch.len()]
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.branch.iter().chain(self.subdiv.iter()).copied()
    }

    /// Relabels positions: the result has `self.at(map[p])` at position `p`.
    pub fn permuted(&self, map: &[usize]) -> HtCopy {
        let t = self.t();
        let at: Vec<u32> = map.iter().map(|&q| self.at(q)).collect();
        HtCopy {
            branch: at[..t].to_vec(),
            subdiv: at[t..].to_vec(),
        }
    }
}

/// Two vertex-disjoint copies of `H_t` whose position-preserving map
/// preserves colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificatePair {
    pub t: usize,
    pub copy1: HtCopy,
    pub copy2: HtCopy,
    /// Set once an independent verifier has accepted the pair.
    pub colors_checked: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CopyJson {
    branch: Vec<u32>,
    subdiv: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CertificateJson {
    t: usize,
    copy1: CopyJson,
    copy2: CopyJson,
    colors_checked: bool,
}

impl CopyJson {
    fn from_copy(copy: &HtCopy) -> Self {
        let layout = copy.layout();
        CopyJson {
            branch: copy.branch.clone(),
            subdiv: layout
                .pairs()
                .zip(&copy.subdiv)
                .map(|((i, j), &v)| (format!("{},{}", i + 1, j + 1), v))
                .collect(),
        }
    }

    fn into_copy(self, t: usize, copy: &'static str) -> Result<HtCopy, CertificateError> {
        let layout = HtLayout::new(t);
        if self.branch.len() != t {
            return Err(CertificateError::WrongCount {
                copy,
                what: "branch vertices",
                expected: t,
                found: self.branch.len(),
            });
        }
        if self.subdiv.len() != layout.num_pairs() {
            return Err(CertificateError::WrongCount {
                copy,
                what: "subdivision vertices",
                expected: layout.num_pairs(),
                found: self.subdiv.len(),
            });
        }
        let mut subdiv = vec![None; layout.num_pairs()];
        for (key, v) in self.subdiv {
            let bad = || CertificateError::BadKey {
                copy,
                key: key.clone(),
            };
            let (i, j) = key.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            if !(1 <= i && i < j && j <= t) {
                return Err(bad());
            }
            let slot = &mut subdiv[layout.pair_index(i - 1, j - 1)];
            if slot.is_some() {
                return Err(bad());
            }
            *slot = Some(v);
        }
        Ok(HtCopy {
            branch: self.branch,
            subdiv: subdiv
                .into_iter()
                .map(|v| v.expect("all keys seen"))
                .collect(),
        })
    }
}

impl CertificatePair {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CertificateJson {
            t: self.t,
            copy1: CopyJson::from_copy(&self.copy1),
            copy2: CopyJson::from_copy(&self.copy2),
            colors_checked: self.colors_checked,
        })
        .expect("certificate serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, CertificateError> {
        let raw: CertificateJson =
            serde_json::from_str(json).map_err(|e| CertificateError::Json(e.to_string()))?;
        if raw.t < 3 {
            return Err(CertificateError::BadT(raw.t));
        }
        Ok(CertificatePair {
            t: raw.t,
            copy1: raw.copy1.into_copy(raw.t, "copy1")?,
            copy2: raw.copy2.into_copy(raw.t, "copy2")?,
            colors_checked: raw.colors_checked,
        })
    }

    /// The isomorphism `copy1 → copy2`, as a position map. Always the
    /// identity: certificates are stored position-aligned.
    pub fn iso(&self) -> Vec<usize> {
        (0..HtLayout::new(self.t).num_vertices()).collect()
    }
}
