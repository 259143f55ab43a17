//! Punctured CSS codes for teleportation over imperfect EPR pairs.
//!
//! The crate covers the whole analytic pipeline:
//!
//! - [`gf2`]: dense linear algebra over GF(2).
//! - [`css`] and [`registry`]: CSS code construction, exact distances and the
//!   built-in code family (uncoded, Steane, the 17-qubit color code and its two
//!   punctured descendants).
//! - [`puncture`]: puncturing w.r.t. `(0|1)` and `(1|0)` with stabilizer lineage.
//! - [`purification`]: Werner initialization, DEJMPS rounds and the induced
//!   teleportation Pauli channel.
//! - [`reliability`]: bounded-distance logical error, sweeps, target crossings
//!   and shortest-feasible-code selection.
//! - [`oracle`]: exhaustive and Monte-Carlo cross-checks of the analytic model.
//!
//! Qubit, column and stabilizer indices are 1-based wherever they leave the
//! crate (step strings, labels, reports); internal storage is 0-based.

pub mod css;
pub mod gf2;
pub mod oracle;
pub mod puncture;
pub mod purification;
pub mod registry;
pub mod reliability;

pub use css::{CodeError, CssCode};
pub use gf2::{BinaryMatrix, BinaryVector, Gf2Error};
pub use oracle::{
    Branch, BranchConvention, CodeOracle, DecodeMode, OracleError, OracleReport, SyndromeTable,
};
pub use puncture::{PunctureError, PunctureKind, PunctureLineage, PunctureStep, StabilizerLabel};
pub use purification::{BellDiagonalState, PauliChannel, PurificationError};
pub use registry::{builtin_registry, CodeRegistry, RegistryError};
pub use reliability::{CodeFamily, ReliabilityError, ReliabilityPoint, SelectionResult};
