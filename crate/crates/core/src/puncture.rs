//! Puncturing CSS codes with respect to `(0|1)` and `(1|0)`.
//!
//! A `(0|1)` puncture at qubit `i` (Z-type) punctures `C1` and shortens `C2`:
//! the row space of `h1` is shortened at `i` (one row touching `i` is used as a
//! pivot to clear the column, then dropped) and the row space of `h2` is
//! punctured (column `i` deleted, rows that became dependent dropped). A `(1|0)`
//! puncture (X-type) swaps the roles of the two blocks.
//!
//! Row bookkeeping is deterministic: the pivot is the first row (in current
//! order) touching the column, and when puncturing a block, rows are scanned in
//! order and a row in the span of the rows kept before it is dropped. Every
//! surviving row remembers which original stabilizers it is a product of, so
//! removed and kept stabilizers can be reported in the origin's numbering.
//!
//! Lineage step strings use `(0|1)@i` / `(1|0)@i` with `i` a 1-based qubit index
//! in the *origin* code's numbering.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::css::{CodeError, CssCode};
use crate::gf2::{BinaryMatrix, BinaryVector};
use crate::registry::CodeRegistry;

/// Index-subset search is limited to codes with at most this many qubits.
pub const SEARCH_MAX_N: usize = 20;
/// ... and to subsets of at most this size.
pub const SEARCH_MAX_SUBSET: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PunctureError {
    #[error("qubit index {index} out of range for a code of length {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("qubit {index} (origin numbering) is not present in the current code")]
    QubitAlreadyRemoved { index: usize },
    #[error("puncture {step} is degenerate: {reason}")]
    Degenerate { step: String, reason: String },
    #[error("puncture {step} broke the distance bound: {before} -> {after}")]
    DistanceInvariant {
        step: String,
        before: String,
        after: String,
    },
    #[error("origin code {id} has linearly dependent rows in {block}; reduce them first")]
    RedundantChecks { id: String, block: &'static str },
    #[error("invalid puncture step {0:?}, expected \"(0|1)@i\" or \"(1|0)@i\"")]
    InvalidStep(String),
    #[error("unknown origin code {0}")]
    UnknownOrigin(String),
    #[error("lineage origin is {expected}, got {found}")]
    OriginMismatch { expected: String, found: String },
    #[error("syndrome mismatch on {stabilizer} for error on qubits {error:?}")]
    SyndromeMismatch {
        stabilizer: StabilizerLabel,
        error: Vec<usize>,
    },
    #[error("kept stabilizer {stabilizer} acts on removed qubit {qubit}")]
    NotStabilized {
        stabilizer: StabilizerLabel,
        qubit: usize,
    },
    #[error("search over n = {n}, subset size {size} exceeds the limits (n <= {SEARCH_MAX_N}, size <= {SEARCH_MAX_SUBSET})")]
    SearchTooLarge { n: usize, size: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Which element the qubit is punctured with respect to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PunctureKind {
    /// `(0|1)`: puncture `C1`, shorten `C2`; removed qubits are projected to |0>.
    ZType,
    /// `(1|0)`: shorten `C1`, puncture `C2`; removed qubits are projected to |+>.
    XType,
}

impl fmt::Display for PunctureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ZType => "(0|1)",
            Self::XType => "(1|0)",
        })
    }
}

impl FromStr for PunctureKind {
    type Err = PunctureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "(0|1)" | "z" | "Z" => Ok(Self::ZType),
            "(1|0)" | "x" | "X" => Ok(Self::XType),
            other => Err(PunctureError::InvalidStep(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StabilizerType {
    X,
    Z,
}

/// `S^X_i` / `S^Z_i`, with `i` the 1-based row in the origin code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StabilizerLabel {
    pub kind: StabilizerType,
    pub index: usize,
}

impl StabilizerLabel {
    pub fn x(index: usize) -> Self {
        Self {
            kind: StabilizerType::X,
            index,
        }
    }

    pub fn z(index: usize) -> Self {
        Self {
            kind: StabilizerType::Z,
            index,
        }
    }
}

impl fmt::Display for StabilizerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            StabilizerType::X => 'X',
            StabilizerType::Z => 'Z',
        };
        write!(f, "S^{k}_{}", self.index)
    }
}

/// One requested puncture: kind plus a 1-based qubit index in origin numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StepSpec {
    pub kind: PunctureKind,
    pub index: usize,
}

impl fmt::Display for StepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind, self.index)
    }
}

impl FromStr for StepSpec {
    type Err = PunctureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PunctureError::InvalidStep(s.to_string());
        let (kind, index) = s.trim().split_once('@').ok_or_else(bad)?;
        let kind = kind.parse().map_err(|_| bad())?;
        let index: usize = index.trim().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Self { kind, index })
    }
}

/// Parses a comma-separated step list; the empty string is the empty lineage.
pub fn parse_steps(s: &str) -> Result<Vec<StepSpec>, PunctureError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

pub fn format_steps(steps: &[StepSpec]) -> String {
    steps.iter().join(",")
}

/// A puncture that was applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctureStep {
    pub kind: PunctureKind,
    /// 1-based index in the code the step was applied to.
    pub qubit: usize,
    /// 1-based index in the origin code.
    pub original_qubit: usize,
    /// Stabilizers dropped by this step, origin numbering.
    pub removed_stabilizers: Vec<StabilizerLabel>,
}

impl PunctureStep {
    pub fn spec(&self) -> StepSpec {
        StepSpec {
            kind: self.kind,
            index: self.original_qubit,
        }
    }
}

/// A stabilizer row that survived puncturing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeptStabilizer {
    /// The origin row this row descends from.
    pub label: StabilizerLabel,
    /// Origin rows (1-based) whose product this row is, restricted to the kept qubits.
    pub combination: Vec<usize>,
}

/// History of a derived code relative to its origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctureLineage {
    pub origin: String,
    pub origin_n: usize,
    pub steps: Vec<PunctureStep>,
    /// Origin index of every current qubit, in current order.
    pub qubits: Vec<usize>,
    /// Kept stabilizers aligned with the current `h1` / `h2` rows.
    pub kept_x: Vec<KeptStabilizer>,
    pub kept_z: Vec<KeptStabilizer>,
}

impl PunctureLineage {
    pub fn removed_stabilizers(&self) -> Vec<StabilizerLabel> {
        self.steps
            .iter()
            .flat_map(|s| s.removed_stabilizers.iter().copied())
            .collect()
    }

    pub fn kept_labels(&self) -> Vec<StabilizerLabel> {
        self.kept_x
            .iter()
            .chain(&self.kept_z)
            .map(|k| k.label)
            .collect()
    }

    pub fn specs(&self) -> Vec<StepSpec> {
        self.steps.iter().map(PunctureStep::spec).collect()
    }

    /// `(0|1)@i,...` in origin numbering.
    pub fn step_string(&self) -> String {
        format_steps(&self.specs())
    }

    /// Removed qubits (origin numbering) with the kind of their puncture.
    pub fn removed_qubits(&self) -> Vec<(usize, PunctureKind)> {
        self.steps
            .iter()
            .map(|s| (s.original_qubit, s.kind))
            .collect()
    }
}

#[derive(Debug, Clone)]
struct Block {
    rows: Vec<BinaryVector>,
    labels: Vec<usize>,
    combos: Vec<BinaryVector>,
}

impl Block {
    fn origin(m: &BinaryMatrix) -> Self {
        let r = m.nrows();
        Self {
            rows: m.rows().to_vec(),
            labels: (1..=r).collect(),
            combos: (0..r)
                .map(|i| BinaryVector::from_support(r, &[i]))
                .collect(),
        }
    }

    fn matrix(&self, cols: usize) -> BinaryMatrix {
        BinaryMatrix::from_rows(cols, self.rows.clone())
            .expect("tracked rows share the column count")
    }

    /// Shortens the row space at `col`; returns the label of the pivot row, if any.
    fn shorten(&mut self, col: usize) -> Option<usize> {
        let removed = self.rows.iter().position(|r| r.get(col)).map(|p| {
            let row = self.rows.remove(p);
            let combo = self.combos.remove(p);
            let label = self.labels.remove(p);
            for (r, c) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
                if r.get(col) {
                    r.xor_assign(&row);
                    c.xor_assign(&combo);
                }
            }
            label
        });
        self.delete_column(col);
        removed
    }

    /// Punctures the row space at `col`; returns labels of rows that became dependent.
    fn puncture(&mut self, col: usize) -> Vec<usize> {
        self.delete_column(col);
        let mut basis: Vec<(usize, BinaryVector)> = Vec::new();
        let mut keep = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let mut v = r.clone();
            for (p, b) in &basis {
                if v.get(*p) {
                    v.xor_assign(b);
                }
            }
            match v.support().first() {
                Some(&p) => {
                    basis.push((p, v));
                    keep.push(true);
                }
                None => keep.push(false),
            }
        }
        let mut removed = Vec::new();
        let rows = std::mem::take(&mut self.rows);
        let labels = std::mem::take(&mut self.labels);
        let combos = std::mem::take(&mut self.combos);
        for (((row, label), combo), keep) in rows.into_iter().zip(labels).zip(combos).zip(keep) {
            if keep {
                self.rows.push(row);
                self.labels.push(label);
                self.combos.push(combo);
            } else {
                removed.push(label);
            }
        }
        removed
    }

    fn delete_column(&mut self, col: usize) {
        for r in &mut self.rows {
            *r = r.without(col);
        }
    }

    fn kept(&self, kind: StabilizerType) -> Vec<KeptStabilizer> {
        self.labels
            .iter()
            .zip(&self.combos)
            .map(|(&index, combo)| KeptStabilizer {
                label: StabilizerLabel { kind, index },
                combination: combo.support().iter().map(|i| i + 1).collect(),
            })
            .collect()
    }
}

/// A code together with its lineage from an origin code.
#[derive(Debug, Clone)]
pub struct PuncturedCode {
    code: CssCode,
    lineage: PunctureLineage,
    x: Block,
    z: Block,
}

impl PuncturedCode {
    /// Starts an empty lineage at `origin`. Both blocks must have full row rank.
    pub fn origin(origin: &CssCode) -> Result<Self, PunctureError> {
        for (block, m) in [("h1", origin.h1()), ("h2", origin.h2())] {
            if m.rank() != m.nrows() {
                return Err(PunctureError::RedundantChecks {
                    id: origin.id().to_string(),
                    block,
                });
            }
        }
        let x = Block::origin(origin.h1());
        let z = Block::origin(origin.h2());
        let lineage = PunctureLineage {
            origin: origin.id().to_string(),
            origin_n: origin.n(),
            steps: Vec::new(),
            qubits: (1..=origin.n()).collect(),
            kept_x: x.kept(StabilizerType::X),
            kept_z: z.kept(StabilizerType::Z),
        };
        Ok(Self {
            code: origin.clone(),
            lineage,
            x,
            z,
        })
    }

    pub fn code(&self) -> &CssCode {
        &self.code
    }

    pub fn lineage(&self) -> &PunctureLineage {
        &self.lineage
    }

    pub fn into_parts(self) -> (CssCode, PunctureLineage) {
        (self.code, self.lineage)
    }

    /// Punctures at `qubit`, a 1-based index into the current code.
    pub fn puncture(&self, kind: PunctureKind, qubit: usize) -> Result<Self, PunctureError> {
        let n = self.code.n();
        if qubit == 0 || qubit > n {
            return Err(PunctureError::IndexOutOfRange { index: qubit, n });
        }
        let original_qubit = self.lineage.qubits[qubit - 1];
        let step_name = format!("{kind}@{original_qubit}");
        let degenerate = |reason: String| PunctureError::Degenerate {
            step: step_name.clone(),
            reason,
        };
        if n == 1 {
            return Err(degenerate("cannot remove the only qubit".into()));
        }

        let col = qubit - 1;
        let mut x = self.x.clone();
        let mut z = self.z.clone();
        let removed: Vec<StabilizerLabel> = match kind {
            PunctureKind::ZType => {
                let sx = x.shorten(col).map(StabilizerLabel::x);
                let pz = z.puncture(col).into_iter().map(StabilizerLabel::z);
                sx.into_iter().chain(pz).collect()
            }
            PunctureKind::XType => {
                let sz = z.shorten(col).map(StabilizerLabel::z);
                let px = x.puncture(col).into_iter().map(StabilizerLabel::x);
                sz.into_iter().chain(px).collect()
            }
        };

        let mut steps = self.lineage.steps.clone();
        steps.push(PunctureStep {
            kind,
            qubit,
            original_qubit,
            removed_stabilizers: removed,
        });
        let id = format!(
            "{}[{}]",
            self.lineage.origin,
            steps.iter().map(PunctureStep::spec).join(",")
        );
        let code = CssCode::new(id, x.matrix(n - 1), z.matrix(n - 1)).map_err(|e| match e {
            CodeError::EmptySet { .. } | CodeError::NoLogicalQubits => degenerate(e.to_string()),
            other => PunctureError::Code(other),
        })?;
        if code.k() != self.code.k() {
            return Err(degenerate(format!(
                "k changed from {} to {}",
                self.code.k(),
                code.k()
            )));
        }

        let (kept_before, kept_after, shrunk_before, shrunk_after) = match kind {
            PunctureKind::ZType => (self.code.dz(), code.dz(), self.code.dx(), code.dx()),
            PunctureKind::XType => (self.code.dx(), code.dx(), self.code.dz(), code.dz()),
        };
        if kept_after < kept_before
            || shrunk_after + 1 < shrunk_before
            || shrunk_after > shrunk_before
        {
            return Err(PunctureError::DistanceInvariant {
                step: step_name,
                before: self.code.parameters(),
                after: code.parameters(),
            });
        }

        let mut qubits = self.lineage.qubits.clone();
        qubits.remove(col);
        let lineage = PunctureLineage {
            origin: self.lineage.origin.clone(),
            origin_n: self.lineage.origin_n,
            steps,
            qubits,
            kept_x: x.kept(StabilizerType::X),
            kept_z: z.kept(StabilizerType::Z),
        };
        Ok(Self {
            code,
            lineage,
            x,
            z,
        })
    }

    /// Punctures at a qubit given by its origin index.
    pub fn puncture_original(&self, spec: StepSpec) -> Result<Self, PunctureError> {
        if spec.index == 0 || spec.index > self.lineage.origin_n {
            return Err(PunctureError::IndexOutOfRange {
                index: spec.index,
                n: self.lineage.origin_n,
            });
        }
        let pos = self
            .lineage
            .qubits
            .iter()
            .position(|&q| q == spec.index)
            .ok_or(PunctureError::QubitAlreadyRemoved { index: spec.index })?;
        self.puncture(spec.kind, pos + 1)
    }
}

/// Punctures `code` w.r.t. `(0|1)` at the 1-based qubit `i`.
pub fn puncture_z_type(code: &CssCode, i: usize) -> Result<(CssCode, PunctureStep), PunctureError> {
    single_step(code, PunctureKind::ZType, i)
}

/// Punctures `code` w.r.t. `(1|0)` at the 1-based qubit `i`.
pub fn puncture_x_type(code: &CssCode, i: usize) -> Result<(CssCode, PunctureStep), PunctureError> {
    single_step(code, PunctureKind::XType, i)
}

fn single_step(
    code: &CssCode,
    kind: PunctureKind,
    i: usize,
) -> Result<(CssCode, PunctureStep), PunctureError> {
    let (code, mut lineage) = PuncturedCode::origin(code)?.puncture(kind, i)?.into_parts();
    let step = lineage.steps.pop().expect("one step was applied");
    Ok((code, step))
}

/// Applies `steps` (origin numbering) to `origin` in order.
pub fn apply_steps(origin: &CssCode, steps: &[StepSpec]) -> Result<PuncturedCode, PunctureError> {
    steps
        .iter()
        .try_fold(PuncturedCode::origin(origin)?, |acc, &s| {
            acc.puncture_original(s)
        })
}

/// Re-derives the code described by `lineage` from its origin in `registry`.
pub fn replay(
    lineage: &PunctureLineage,
    registry: &CodeRegistry,
) -> Result<CssCode, PunctureError> {
    let origin = registry
        .get(&lineage.origin)
        .ok_or_else(|| PunctureError::UnknownOrigin(lineage.origin.clone()))?;
    let derived = lineage
        .steps
        .iter()
        .try_fold(PuncturedCode::origin(origin)?, |acc, s| {
            acc.puncture(s.kind, s.qubit)
        })?;
    Ok(derived.code)
}

/// Outcome of [`syndrome_compatibility_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub errors_checked: usize,
    pub kept: Vec<StabilizerLabel>,
    /// Stabilizers of the large code whose outcomes must be ignored.
    pub ignored: Vec<StabilizerLabel>,
}

fn pad(e: &BinaryVector, qubits: &[usize], big_n: usize) -> BinaryVector {
    let support: Vec<usize> = e.support().iter().map(|&i| qubits[i] - 1).collect();
    BinaryVector::from_support(big_n, &support)
}

fn product(block: &BinaryMatrix, combination: &[usize]) -> BinaryVector {
    let mut v = BinaryVector::zeros(block.ncols());
    for &r in combination {
        v.xor_assign(block.row(r - 1));
    }
    v
}

/// Checks that the small code's syndromes are readable off the large code's
/// stabilizer measurements.
///
/// Errors on the small code are padded with zeros on removed qubits (removed
/// qubits hold |0> or |+>, so they carry no error). For every kept stabilizer,
/// the syndrome bit on the small code must equal the bit of the corresponding
/// large-code stabilizer product on the padded error. Structurally, kept X
/// stabilizers must vanish on `(0|1)`-removed qubits and kept Z stabilizers on
/// `(1|0)`-removed qubits, or the padded state would not be stabilized.
///
/// All errors of weight at most 2 are checked, then `random_samples` uniformly
/// random errors drawn from `seed`.
pub fn syndrome_compatibility_check(
    big: &CssCode,
    small: &CssCode,
    lineage: &PunctureLineage,
    random_samples: usize,
    seed: u64,
) -> Result<CompatibilityReport, PunctureError> {
    if big.id() != lineage.origin || big.n() != lineage.origin_n {
        return Err(PunctureError::OriginMismatch {
            expected: lineage.origin.clone(),
            found: big.id().to_string(),
        });
    }
    let n = small.n();
    assert_eq!(
        n,
        lineage.qubits.len(),
        "lineage does not describe the small code"
    );
    assert_eq!(small.h1().nrows(), lineage.kept_x.len());
    assert_eq!(small.h2().nrows(), lineage.kept_z.len());

    let blocks = [
        (small.h1(), big.h1(), &lineage.kept_x, PunctureKind::ZType),
        (small.h2(), big.h2(), &lineage.kept_z, PunctureKind::XType),
    ];
    let mut checks = Vec::new();
    for (small_block, big_block, kept, forbidden) in blocks {
        for (row, k) in small_block.rows().iter().zip(kept.iter()) {
            let big_row = product(big_block, &k.combination);
            for &(q, kind) in &lineage.removed_qubits() {
                if kind == forbidden && big_row.get(q - 1) {
                    return Err(PunctureError::NotStabilized {
                        stabilizer: k.label,
                        qubit: q,
                    });
                }
            }
            checks.push((row, big_row, k.label));
        }
    }

    let mut errors: Vec<BinaryVector> = Vec::new();
    errors.push(BinaryVector::zeros(n));
    for i in 0..n {
        errors.push(BinaryVector::from_support(n, &[i]));
        for j in i + 1..n {
            errors.push(BinaryVector::from_support(n, &[i, j]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_samples {
        errors.push(BinaryVector::from_bits(
            (0..n).map(|_| rng.random::<bool>()),
        ));
    }

    for e in &errors {
        let padded = pad(e, &lineage.qubits, big.n());
        for (row, big_row, label) in &checks {
            if row.dot(e) != big_row.dot(&padded) {
                return Err(PunctureError::SyndromeMismatch {
                    stabilizer: *label,
                    error: e.support().iter().map(|&i| lineage.qubits[i]).collect(),
                });
            }
        }
    }

    Ok(CompatibilityReport {
        errors_checked: errors.len(),
        kept: lineage.kept_labels(),
        ignored: lineage.removed_stabilizers(),
    })
}

/// Brute-force search for puncture index sets of one kind.
///
/// Returns every `size`-subset of qubits (1-based, ascending, lexicographic
/// order) whose punctures all succeed, keep `k`, and land on exactly
/// `(target_dx, target_dz)`. Candidates are evaluated in parallel.
pub fn search_puncture_sets(
    code: &CssCode,
    kind: PunctureKind,
    size: usize,
    target_dx: usize,
    target_dz: usize,
) -> Result<Vec<Vec<usize>>, PunctureError> {
    if code.n() > SEARCH_MAX_N || size > SEARCH_MAX_SUBSET {
        return Err(PunctureError::SearchTooLarge { n: code.n(), size });
    }
    let start = PuncturedCode::origin(code)?;
    let candidates: Vec<Vec<usize>> = (1..=code.n()).combinations(size).collect();
    Ok(candidates
        .into_par_iter()
        .filter(|set| {
            let derived = set.iter().try_fold(start.clone(), |acc, &index| {
                acc.puncture_original(StepSpec { kind, index })
            });
            derived.is_ok_and(|d| {
                let c = d.code();
                c.k() == code.k() && c.dx() == target_dx && c.dz() == target_dz
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::builtin_registry;

    fn base() -> &'static CssCode {
        builtin_registry().get("base-17").unwrap()
    }

    #[test]
    fn step_strings() {
        let steps = parse_steps("(0|1)@1, (1|0)@12").unwrap();
        assert_eq!(
            steps,
            [
                StepSpec {
                    kind: PunctureKind::ZType,
                    index: 1
                },
                StepSpec {
                    kind: PunctureKind::XType,
                    index: 12
                }
            ]
        );
        assert_eq!(format_steps(&steps), "(0|1)@1,(1|0)@12");
        assert!(parse_steps("").unwrap().is_empty());
        for bad in ["(0|1)", "(0|1)@0", "(2|1)@3", "(0|1)@x"] {
            assert!(
                matches!(parse_steps(bad), Err(PunctureError::InvalidStep(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn labels_display() {
        assert_eq!(StabilizerLabel::x(7).to_string(), "S^X_7");
        assert_eq!(StabilizerLabel::z(8).to_string(), "S^Z_8");
    }

    #[test]
    fn first_z_step_removes_first_x_stabilizer() {
        let (code, step) = puncture_z_type(base(), 1).unwrap();
        assert_eq!(code.n(), 16);
        assert_eq!(step.removed_stabilizers, [StabilizerLabel::x(1)]);
        assert_eq!(code.dz(), 5);
        assert!(code.dx() >= 4);
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(
            puncture_z_type(base(), 18).unwrap_err(),
            PunctureError::IndexOutOfRange { index: 18, n: 17 }
        );
        assert_eq!(
            puncture_x_type(base(), 0).unwrap_err(),
            PunctureError::IndexOutOfRange { index: 0, n: 17 }
        );
    }

    #[test]
    fn removed_qubit_cannot_be_punctured_twice() {
        let once = apply_steps(base(), &parse_steps("(0|1)@3").unwrap()).unwrap();
        let again = once.puncture_original(StepSpec {
            kind: PunctureKind::XType,
            index: 3,
        });
        assert_eq!(
            again.unwrap_err(),
            PunctureError::QubitAlreadyRemoved { index: 3 }
        );
    }

    #[test]
    fn uncoded_cannot_be_punctured() {
        let uncoded = builtin_registry().get("uncoded").unwrap();
        assert!(matches!(
            puncture_z_type(uncoded, 1),
            Err(PunctureError::Degenerate { .. })
        ));
    }

    #[test]
    fn idle_column_leaves_distances_alone() {
        // No Z check of punct-8 touches qubit 8, and X_8 is itself a stabilizer.
        let p8 = builtin_registry().get("punct-8").unwrap();
        assert!(p8.h2().column(7).is_zero());
        let (after, step) = puncture_x_type(p8, 8).unwrap();
        assert_eq!((after.n(), after.k(), after.dx(), after.dz()), (7, 1, 3, 3));
        assert_eq!(step.removed_stabilizers, [StabilizerLabel::x(4)]);
    }

    #[test]
    fn redundant_rows_rejected() {
        let h: BinaryMatrix = "1111\n1111".parse().unwrap();
        let code = CssCode::new("dup", h, BinaryMatrix::empty(4)).unwrap();
        assert!(matches!(
            PuncturedCode::origin(&code),
            Err(PunctureError::RedundantChecks { block: "h1", .. })
        ));
    }

    #[test]
    fn origin_mismatch_detected() {
        let reg = builtin_registry();
        let derived = apply_steps(base(), &parse_steps("(0|1)@1").unwrap()).unwrap();
        let err = syndrome_compatibility_check(
            reg.get("steane-7").unwrap(),
            derived.code(),
            derived.lineage(),
            0,
            1,
        );
        assert!(matches!(err, Err(PunctureError::OriginMismatch { .. })));
    }

    #[test]
    fn search_guard() {
        assert!(matches!(
            search_puncture_sets(base(), PunctureKind::ZType, 7, 3, 5),
            Err(PunctureError::SearchTooLarge { .. })
        ));
    }
}
