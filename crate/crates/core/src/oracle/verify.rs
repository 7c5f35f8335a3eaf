use serde::Serialize;
use thiserror::Error;

use crate::certificate::CertificatePair;
use crate::coloring::ProperColoring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("t must be at least 3, got {0}")]
    BadT(usize),
    #[error("{copy} has {found} {what}, expected {expected}")]
    WrongShape {
        copy: &'static str,
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{copy} uses vertex {vertex}, outside K_{n}")]
    OutOfRange {
        copy: &'static str,
        vertex: u32,
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    /// A vertex appears twice inside one copy.
    RepeatedVertex { copy: &'static str, vertex: u32 },
    /// A vertex appears in both copies.
    SharedVertex { vertex: u32 },
    /// The edge between branch `i` and subdivision `(i, j)` (1-based, with
    /// `end` the branch index) differs in color between the copies.
    ColorMismatch {
        i: usize,
        j: usize,
        end: usize,
        color1: u32,
        color2: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Re-derives every certificate property from the coloring alone: both
/// copies are `H_t`'s with distinct vertices, they are vertex-disjoint, and
/// the position-preserving map keeps every edge color.
pub fn verify_certificate(
    coloring: &ProperColoring,
    cert: &CertificatePair,
) -> Result<VerifyReport, VerifyError> {
    let t = cert.t;
    if t < 3 {
        return Err(VerifyError::BadT(t));
    }
    let pairs = t * (t - 1) / 2;
    let n = coloring.n();
    for (name, copy) in [("copy1", &cert.copy1), ("copy2", &cert.copy2)] {
        for (what, found, expected) in [
            ("branch vertices", copy.branch.len(), t),
            ("subdivision vertices", copy.subdiv.len(), pairs),
        ] {
            if found != expected {
                return Err(VerifyError::WrongShape {
                    copy: name,
                    what,
                    expected,
                    found,
                });
            }
        }
        if let Some(&vertex) = copy
            .branch
            .iter()
            .chain(&copy.subdiv)
            .find(|&&v| v as usize >= n)
        {
            return Err(VerifyError::OutOfRange {
                copy: name,
                vertex,
                n,
            });
        }
    }

    let mut violations = Vec::new();
    let mut owner = vec![0u8; n];
    for (bit, name, copy) in [(1u8, "copy1", &cert.copy1), (2u8, "copy2", &cert.copy2)] {
        for &v in copy.branch.iter().chain(&copy.subdiv) {
            let slot = &mut owner[v as usize];
            if *slot & bit != 0 {
                violations.push(Violation::RepeatedVertex {
                    copy: name,
                    vertex: v,
                });
            } else if *slot != 0 {
                violations.push(Violation::SharedVertex { vertex: v });
            }
            *slot |= bit;
        }
    }

    let mut k = 0;
    for i in 0..t {
        for j in i + 1..t {
            for end in [i, j] {
                let (a1, s1) = (cert.copy1.branch[end], cert.copy1.subdiv[k]);
                let (a2, s2) = (cert.copy2.branch[end], cert.copy2.subdiv[k]);
                if a1 == s1 || a2 == s2 {
                    // already reported as a repeated vertex
                    continue;
                }
                let (color1, color2) = (coloring.color(a1, s1), coloring.color(a2, s2));
                if color1 != color2 {
                    violations.push(Violation::ColorMismatch {
                        i: i + 1,
                        j: j + 1,
                        end: end + 1,
                        color1,
                        color2,
                    });
                }
            }
            k += 1;
        }
    }
    Ok(VerifyReport {
        ok: violations.is_empty(),
        violations,
    })
}
