//! Four-part equipartitions and cross-form monochromatic matchings
//! `{x1x3, x2x4}` with `xi ∈ Xi`.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::ProperColoring;
use crate::{stream_rng, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("need n >= 4 for a four-part partition, got {0}")]
    TooFewVertices(usize),
    #[error("partition covers {partition} vertices but the coloring has {coloring}")]
    SizeMismatch { partition: usize, coloring: usize },
    #[error("vertex {0} is missing, repeated or out of range")]
    BadVertex(u32),
    #[error("part sizes {0:?} differ by more than one")]
    Unbalanced([usize; 4]),
}

/// Balanced partition of `[n]` into `X1..X4` (stored 0-based as parts
/// `0..4`). Sizes differ by at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equipartition {
    parts: [Vec<u32>; 4],
    part_of: Vec<u8>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PartitionJson {
    parts: Vec<Vec<u32>>,
}

/// Part sizes used by [`Equipartition::sample`]: the first `n mod 4` parts
/// get one extra vertex.
pub fn part_sizes(n: usize) -> [usize; 4] {
    let (base, rem) = (n / 4, n % 4);
    std::array::from_fn(|k| base + usize::from(k < rem))
}

impl Equipartition {
    pub fn from_parts(n: usize, mut parts: [Vec<u32>; 4]) -> Result<Self, PartitionError> {
        let covered: usize = parts.iter().map(Vec::len).sum();
        if covered != n {
            return Err(PartitionError::SizeMismatch {
                partition: covered,
                coloring: n,
            });
        }
        let mut part_of = vec![u8::MAX; n];
        for (k, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            for &v in part.iter() {
                match part_of.get_mut(v as usize) {
                    Some(slot) if *slot == u8::MAX => *slot = k as u8,
                    _ => return Err(PartitionError::BadVertex(v)),
                }
            }
        }
        let sizes = parts.each_ref().map(Vec::len);
        let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
        if hi - lo > 1 {
            return Err(PartitionError::Unbalanced(sizes));
        }
        Ok(Equipartition { parts, part_of })
    }

    /// Uniform balanced partition: seeded shuffle, then split by
    /// [`part_sizes`].
    pub fn sample(n: usize, seed: u64) -> Result<Self, PartitionError> {
        if n < 4 {
            return Err(PartitionError::TooFewVertices(n));
        }
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.shuffle(&mut stream_rng(seed, 1));
        let mut rest = perm.as_slice();
        let parts = part_sizes(n).map(|s| {
            let (head, tail) = rest.split_at(s);
            rest = tail;
            head.to_vec()
        });
        Self::from_parts(n, parts)
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn part(&self, k: usize) -> &[u32] {
        &self.parts[k]
    }

    #[inline]
    pub fn part_of(&self, v: u32) -> usize {
        self.part_of[v as usize] as usize
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.parts.each_ref().map(Vec::len)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PartitionJson {
            parts: self.parts.to_vec(),
        })
        .expect("partition serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, Box<dyn std::error::Error + Send + Sync>> {
        let raw: PartitionJson = serde_json::from_str(json)?;
        let parts: [Vec<u32>; 4] = raw
            .parts
            .try_into()
            .map_err(|p: Vec<Vec<u32>>| format!("expected 4 parts, got {}", p.len()))?;
        let n = parts.iter().map(Vec::len).sum();
        Ok(Self::from_parts(n, parts)?)
    }

    fn check_against(&self, coloring: &ProperColoring) -> Result<(), PartitionError> {
        if self.n() != coloring.n() {
            return Err(PartitionError::SizeMismatch {
                partition: self.n(),
                coloring: coloring.n(),
            });
        }
        Ok(())
    }
}

/// Orients an edge across parts `(p, q)`: returns `(x_p, x_q)` when the edge
/// has one endpoint in each, else `None`.
#[inline]
pub(crate) fn oriented(
    partition: &Equipartition,
    (a, b): (u32, u32),
    p: usize,
    q: usize,
) -> Option<(u32, u32)> {
    match (partition.part_of(a), partition.part_of(b)) {
        (x, y) if x == p && y == q => Some((a, b)),
        (x, y) if x == q && y == p => Some((b, a)),
        _ => None,
    }
}

/// Number of unordered same-colored edge pairs `{e, f}` with `e` between
/// `X1` and `X3` and `f` between `X2` and `X4`.
pub fn count_cross_matchings(
    coloring: &ProperColoring,
    partition: &Equipartition,
) -> Result<u64, PartitionError> {
    partition.check_against(coloring)?;
    Ok(coloring
        .classes()
        .iter()
        .map(|class| {
            let (mut a, mut b) = (0u64, 0u64);
            for &e in class {
                if oriented(partition, e, 0, 2).is_some() {
                    a += 1;
                } else if oriented(partition, e, 1, 3).is_some() {
                    b += 1;
                }
            }
            a * b
        })
        .sum())
}

/// Exact expectation of [`count_cross_matchings`] over a uniformly random
/// partition with sizes [`part_sizes`]`(n)`.
///
/// Two disjoint same-colored edges `ab`, `cd` form the cross pattern under
/// eight part assignments of `a, b, c, d` (which edge goes to `X1/X3`, and
/// the orientation of each), each with probability
/// `s1·s2·s3·s4 / (n)_4` without replacement.
pub fn exact_expectation(coloring: &ProperColoring) -> Result<Rational, PartitionError> {
    let n = coloring.n();
    if n < 4 {
        return Err(PartitionError::TooFewVertices(n));
    }
    let pairs = coloring.sum_pairs_per_color() as i128;
    if pairs == 0 {
        return Ok(Rational::zero());
    }
    let s = part_sizes(n).map(|x| x as i128);
    let n = n as i128;
    let falling = n * (n - 1) * (n - 2) * (n - 3);
    Ok(Rational::new(8 * s[0] * s[1] * s[2] * s[3], falling) * pairs)
}

/// Acceptance threshold `Σ_c C(e_c, 2) / 256`.
pub fn cross_threshold(coloring: &ProperColoring) -> Rational {
    Rational::new(coloring.sum_pairs_per_color() as i128, 256)
}

#[derive(Debug, Clone)]
pub struct GoodPartition {
    pub partition: Equipartition,
    pub count: u64,
    /// Number of partitions sampled, including the returned one.
    pub tries: usize,
    /// Seed that reproduces `partition` through [`Equipartition::sample`].
    pub partition_seed: u64,
    pub threshold: Rational,
    /// No sample met the threshold; `partition` is the best one seen.
    pub below_threshold: bool,
}

/// Samples partitions until one has at least `Σ_c C(e_c,2)/256` cross
/// matchings, returning the best seen if `max_tries` run out.
pub fn select_good_partition(
    coloring: &ProperColoring,
    seed: u64,
    max_tries: usize,
) -> Result<GoodPartition, PartitionError> {
    let n = coloring.n();
    if n < 4 {
        return Err(PartitionError::TooFewVertices(n));
    }
    let threshold = cross_threshold(coloring);
    let mut seeds = stream_rng(seed, 2);
    let mut best: Option<(Equipartition, u64, u64)> = None;
    let max_tries = max_tries.max(1);
    for attempt in 1..=max_tries {
        let partition_seed = seeds.next_u64();
        let partition = Equipartition::sample(n, partition_seed)?;
        let count = count_cross_matchings(coloring, &partition)?;
        if Rational::from_integer(count as i128) >= threshold {
            return Ok(GoodPartition {
                partition,
                count,
                tries: attempt,
                partition_seed,
                threshold,
                below_threshold: false,
            });
        }
        if best.as_ref().is_none_or(|b| count > b.1) {
            best = Some((partition, count, partition_seed));
        }
    }
    let (partition, count, partition_seed) = best.expect("at least one try");
    Ok(GoodPartition {
        partition,
        count,
        tries: max_tries,
        partition_seed,
        threshold,
        below_threshold: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{rainbow, round_robin};

    #[test]
    fn small_partitions_have_forced_sizes() {
        let p = Equipartition::sample(4, 9).unwrap();
        assert_eq!(p.sizes(), [1, 1, 1, 1]);
        let mut sizes = Equipartition::sample(10, 9).unwrap().sizes();
        sizes.sort();
        assert_eq!(sizes, [2, 2, 3, 3]);
        assert!(matches!(
            Equipartition::sample(3, 0),
            Err(PartitionError::TooFewVertices(3))
        ));
    }

    #[test]
    fn k4_round_robin_single_cross_matching() {
        let c = round_robin(4).unwrap();
        let p = Equipartition::from_parts(4, [vec![0], vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(count_cross_matchings(&c, &p).unwrap(), 1);
    }

    #[test]
    fn rainbow_never_matches() {
        let c = rainbow(12).unwrap();
        let p = Equipartition::sample(12, 5).unwrap();
        assert_eq!(count_cross_matchings(&c, &p).unwrap(), 0);
        assert!(exact_expectation(&c).unwrap().is_zero());
        let good = select_good_partition(&c, 3, 10).unwrap();
        assert_eq!(good.tries, 1);
        assert!(!good.below_threshold);
    }

    #[test]
    fn mismatched_partition_rejected() {
        let c = round_robin(8).unwrap();
        let p = Equipartition::sample(12, 1).unwrap();
        assert!(matches!(
            count_cross_matchings(&c, &p),
            Err(PartitionError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn malformed_parts_rejected() {
        assert!(Equipartition::from_parts(4, [vec![0], vec![0], vec![2], vec![3]]).is_err());
        assert!(matches!(
            Equipartition::from_parts(6, [vec![0, 1, 2], vec![3], vec![4], vec![5]]),
            Err(PartitionError::Unbalanced(_))
        ));
    }

    #[test]
    fn partition_json_round_trip() {
        let p = Equipartition::sample(13, 77).unwrap();
        assert_eq!(Equipartition::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn good_partition_for_round_robin_k8() {
        let c = round_robin(8).unwrap();
        let good = select_good_partition(&c, 11, 64).unwrap();
        assert!(!good.below_threshold);
        assert!(good.count >= 1);
        let replay = Equipartition::sample(8, good.partition_seed).unwrap();
        assert_eq!(replay, good.partition);
    }
}
