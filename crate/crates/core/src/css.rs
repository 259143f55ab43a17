//! CSS codes built from a pair of classical parity-check blocks.
//!
//! `h1` is the parity check of `C1` and its rows are the X-type stabilizers
//! `S^X_i`; `h2` is the parity check of `C2` with rows `S^Z_i`. Distances follow
//! the set-difference definition
//!
//! ```text
//! dX = min wt(C1 \ C2⊥)      dZ = min wt(C2 \ C1⊥)
//! ```
//!
//! computed exactly by enumerating `C1 = ker h1` and `C2 = ker h2`.

use serde::Serialize;
use thiserror::Error;

use crate::gf2::{self, BinaryMatrix, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("h1 has {h1} columns but h2 has {h2}")]
    DimensionMismatch { h1: usize, h2: usize },
    #[error(
        "CSS condition violated: S^X_{x_row} and S^Z_{z_row} overlap on an odd number of qubits"
    )]
    CssViolation { x_row: usize, z_row: usize },
    #[error("ranks of h1 and h2 exceed the block length, no logical qubits remain")]
    NoLogicalQubits,
    #[error("{which} is empty: every codeword is a stabilizer (k = 0)")]
    EmptySet { which: &'static str },
    #[error(transparent)]
    Linalg(#[from] Gf2Error),
}

/// A CSS code with its parameters recomputed from the matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    id: String,
    h1: BinaryMatrix,
    h2: BinaryMatrix,
    k: usize,
    dx: usize,
    dz: usize,
}

/// `floor((d - 1) / 2)`.
pub fn correction_radius(d: usize) -> usize {
    d.saturating_sub(1) / 2
}

/// `k = n - rank(h1) - rank(h2)`, i.e. `k1 + k2 - n`.
pub fn logical_dimension(h1: &BinaryMatrix, h2: &BinaryMatrix) -> Result<usize, CodeError> {
    check_blocks(h1, h2)?;
    h1.ncols()
        .checked_sub(h1.rank() + h2.rank())
        .ok_or(CodeError::NoLogicalQubits)
}

fn check_blocks(h1: &BinaryMatrix, h2: &BinaryMatrix) -> Result<(), CodeError> {
    if h1.ncols() != h2.ncols() {
        return Err(CodeError::DimensionMismatch {
            h1: h1.ncols(),
            h2: h2.ncols(),
        });
    }
    let overlap = h1.mul_transpose(h2)?;
    for (i, row) in overlap.rows().iter().enumerate() {
        if let Some(j) = row.support().first() {
            return Err(CodeError::CssViolation {
                x_row: i + 1,
                z_row: j + 1,
            });
        }
    }
    Ok(())
}

/// Minimum weight over `ker(check) \ rowspace(stabilizers)`.
fn min_weight_outside(
    check: &BinaryMatrix,
    stabilizers: &BinaryMatrix,
    which: &'static str,
) -> Result<usize, CodeError> {
    let n = check.ncols();
    let basis = gf2::kernel_basis(check);
    let echelon = stabilizers.rref();
    let mut best: Option<usize> = None;
    for v in gf2::enumerate_span(&basis, n)? {
        let w = v.weight();
        if w == 0 || best.is_some_and(|b| w >= b) {
            continue;
        }
        if !echelon.contains(&v)? {
            best = Some(w);
        }
    }
    best.ok_or(CodeError::EmptySet { which })
}

/// Exact `(dX, dZ)` by enumeration of `C1` and `C2`.
pub fn distances(h1: &BinaryMatrix, h2: &BinaryMatrix) -> Result<(usize, usize), CodeError> {
    if h1.ncols() != h2.ncols() {
        return Err(CodeError::DimensionMismatch {
            h1: h1.ncols(),
            h2: h2.ncols(),
        });
    }
    let dx = min_weight_outside(h1, h2, "C1 \\ C2^perp")?;
    let dz = min_weight_outside(h2, h1, "C2 \\ C1^perp")?;
    Ok((dx, dz))
}

impl CssCode {
    /// Validates the CSS condition and recomputes `k`, `dX`, `dZ`.
    pub fn new(
        id: impl Into<String>,
        h1: BinaryMatrix,
        h2: BinaryMatrix,
    ) -> Result<Self, CodeError> {
        let k = logical_dimension(&h1, &h2)?;
        let (dx, dz) = distances(&h1, &h2)?;
        Ok(Self {
            id: id.into(),
            h1,
            h2,
            k,
            dx,
            dz,
        })
    }

    /// Builds a code whose distances are taken on trust instead of recomputed.
    ///
    /// Only the CSS condition and `k` are checked. Used for externally supplied
    /// code declarations so that the syndrome oracle can audit the claim.
    pub fn with_claimed_distances(
        id: impl Into<String>,
        h1: BinaryMatrix,
        h2: BinaryMatrix,
        dx: usize,
        dz: usize,
    ) -> Result<Self, CodeError> {
        let k = logical_dimension(&h1, &h2)?;
        Ok(Self {
            id: id.into(),
            h1,
            h2,
            k,
            dx,
            dz,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn n(&self) -> usize {
        self.h1.ncols()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h1(&self) -> &BinaryMatrix {
        &self.h1
    }

    pub fn h2(&self) -> &BinaryMatrix {
        &self.h2
    }

    pub fn dx(&self) -> usize {
        self.dx
    }

    pub fn dz(&self) -> usize {
        self.dz
    }

    pub fn tx(&self) -> usize {
        correction_radius(self.dx)
    }

    pub fn tz(&self) -> usize {
        correction_radius(self.dz)
    }

    pub fn renamed(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// True iff both blocks span the same row spaces as `other`'s.
    pub fn same_stabilizers(&self, other: &Self) -> bool {
        self.h1.row_space_eq(&other.h1) && self.h2.row_space_eq(&other.h2)
    }

    /// `[[n,k,dX/dZ]]`.
    pub fn parameters(&self) -> String {
        format!("[[{},{},{}/{}]]", self.n(), self.k, self.dx, self.dz)
    }

    pub fn summary(&self) -> CodeSummary {
        CodeSummary {
            id: self.id.clone(),
            n: self.n(),
            k: self.k,
            dx: self.dx,
            dz: self.dz,
            tx: self.tx(),
            tz: self.tz(),
            h1: self.h1.rows().iter().map(ToString::to_string).collect(),
            h2: self.h2.rows().iter().map(ToString::to_string).collect(),
        }
    }
}

/// Serializable view of a code: parameters plus both blocks as row strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeSummary {
    pub id: String,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "dX")]
    pub dx: usize,
    #[serde(rename = "dZ")]
    pub dz: usize,
    #[serde(rename = "tX")]
    pub tx: usize,
    #[serde(rename = "tZ")]
    pub tz: usize,
    pub h1: Vec<String>,
    pub h2: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    const HAMMING: &str = "1010101\n0110011\n0001111";

    #[test]
    fn steane_parameters() {
        let h: BinaryMatrix = HAMMING.parse().unwrap();
        let code = CssCode::new("steane-7", h.clone(), h).unwrap();
        assert_eq!(code.parameters(), "[[7,1,3/3]]");
        assert_eq!((code.tx(), code.tz()), (1, 1));
    }

    #[test]
    fn repetition_style_distances() {
        // Exhaustive over F2^3: C1 = F2^3 and C2^perp = {000,110,011,101}, so dX = 1;
        // C2 = {000,111} and C1^perp = {000}, so dZ = 3.
        let h1 = BinaryMatrix::empty(3);
        let h2: BinaryMatrix = "110\n011".parse().unwrap();
        assert_eq!(distances(&h1, &h2).unwrap(), (1, 3));
        let code = CssCode::new("rep", h1, h2).unwrap();
        assert_eq!(code.k(), 1);
    }

    #[test]
    fn violation_is_reported() {
        let h1: BinaryMatrix = "1100000\n1010101".parse().unwrap();
        let h2: BinaryMatrix = HAMMING.parse().unwrap();
        assert_eq!(
            CssCode::new("bad", h1, h2),
            Err(CodeError::CssViolation { x_row: 1, z_row: 1 })
        );
    }

    #[test]
    fn mismatched_columns() {
        let h1 = BinaryMatrix::empty(3);
        let h2 = BinaryMatrix::empty(4);
        assert_eq!(
            CssCode::new("bad", h1, h2),
            Err(CodeError::DimensionMismatch { h1: 3, h2: 4 })
        );
    }

    #[test]
    fn zero_dimensional_code_has_no_distance() {
        let h1: BinaryMatrix = "11".parse().unwrap();
        let h2: BinaryMatrix = "11".parse().unwrap();
        assert_eq!(logical_dimension(&h1, &h2), Ok(0));
        assert!(matches!(
            distances(&h1, &h2),
            Err(CodeError::EmptySet { .. })
        ));
    }

    #[test]
    fn uncoded_single_qubit() {
        let code = CssCode::new("uncoded", BinaryMatrix::empty(1), BinaryMatrix::empty(1)).unwrap();
        assert_eq!(code.parameters(), "[[1,1,1/1]]");
        assert_eq!((code.tx(), code.tz()), (0, 0));
    }

    #[test]
    fn radius() {
        assert_eq!(correction_radius(1), 0);
        assert_eq!(correction_radius(3), 1);
        assert_eq!(correction_radius(4), 1);
        assert_eq!(correction_radius(5), 2);
    }
}
