//! Brute-force ground truth, independent of the pipeline: enumeration of
//! `H_t` copies, color-isomorphism tests, search for vertex-disjoint
//! color-isomorphic pairs, and certificate verification.

mod enumerate;
mod iso;
mod search;
mod verify;

use thiserror::Error;

pub use crate::certificate::HtCopy;
pub use enumerate::{enumerate_ht_copies, for_each_ht_copy};
pub use iso::{automorphisms, color_isomorphic};
pub use search::{find_disjoint_color_iso_pair, AbsenceRecord, PairSearch, SearchBudget};
pub use verify::{verify_certificate, VerifyError, VerifyReport, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("t must be at least 3, got {0}")]
    BadT(usize),
    #[error("K_{n} has too few vertices: need at least {needed}")]
    TooFewVertices { n: usize, needed: usize },
    #[error("oracle supports n <= 128, got {0}")]
    TooLarge(usize),
}
