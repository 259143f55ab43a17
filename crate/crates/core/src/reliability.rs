//! Analytic logical error under bounded-distance decoding.
//!
//! Each CSS branch is treated as a binary symmetric channel with flip
//! probability `qX = pX + pY` (resp. `qZ = pZ + pY`); decoding succeeds on a
//! branch iff at most `t` of its `n` bits flipped. The logical error is
//! `1 - P_succ,X · P_succ,Z`.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::css::CssCode;
use crate::purification::{purify, BellDiagonalState, PauliChannel, PurificationError};
use crate::registry::{CodeRegistry, PUNCTURED_FAMILY};

/// Bisection stops once the bracket is this narrow (in F0).
pub const CROSSING_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReliabilityError {
    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("correction radius {t} exceeds block length {n}")]
    RadiusTooLarge { n: usize, t: usize },
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("{code} at r = {r} never reaches P_L <= {target:e} on F0 in [{lo}, {hi}]")]
    NoCrossing {
        code: String,
        r: u32,
        target: f64,
        lo: f64,
        hi: f64,
    },
    #[error(transparent)]
    Purification(#[from] PurificationError),
}

/// `Σ_{i=0}^{t} C(n,i) (1-q)^{n-i} q^i`.
pub fn branch_success(n: usize, t: usize, q: f64) -> Result<f64, ReliabilityError> {
    if !(0.0..=1.0).contains(&q) {
        return Err(ReliabilityError::OutOfRange {
            what: "q",
            value: q,
        });
    }
    if t > n {
        return Err(ReliabilityError::RadiusTooLarge { n, t });
    }
    if t == n {
        return Ok(1.0);
    }
    let mut binom = 1.0f64;
    let mut total = 0.0;
    for i in 0..=t {
        if i > 0 {
            binom = binom * (n + 1 - i) as f64 / i as f64;
        }
        total += binom * (1.0 - q).powi((n - i) as i32) * q.powi(i as i32);
    }
    Ok(total.min(1.0))
}

fn success_pair(code: &CssCode, channel: &PauliChannel) -> (f64, f64) {
    let n = code.n();
    // qX, qZ are probabilities and tX, tZ <= n for any valid code.
    let sx = branch_success(n, code.tx().min(n), channel.qx().min(1.0)).expect("valid branch");
    let sz = branch_success(n, code.tz().min(n), channel.qz().min(1.0)).expect("valid branch");
    (sx, sz)
}

/// `1 - P_succ,X · P_succ,Z` for `code` over i.i.d. uses of `channel`.
pub fn logical_error(code: &CssCode, channel: &PauliChannel) -> f64 {
    let (sx, sz) = success_pair(code, channel);
    (1.0 - sx * sz).max(0.0)
}

/// Factorized uncoded error `1 - (1-qX)(1-qZ)` next to the exact `1 - A`.
///
/// The two differ by `qX·qZ - pY`: the branch model counts a Y error against
/// both branches independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncodedComparison {
    pub factorized: f64,
    pub exact: f64,
}

pub fn uncoded_comparison(state: &BellDiagonalState) -> UncodedComparison {
    let ch = state.to_channel();
    UncodedComparison {
        factorized: 1.0 - (1.0 - ch.qx()) * (1.0 - ch.qz()),
        exact: 1.0 - state.a(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityPoint {
    pub code_id: String,
    pub n: usize,
    pub f0: f64,
    pub r: u32,
    pub qx: f64,
    pub qz: f64,
    pub p_succ_x: f64,
    pub p_succ_z: f64,
    pub p_l: f64,
}

impl ReliabilityPoint {
    pub fn evaluate(code: &CssCode, f0: f64, r: u32) -> Result<Self, ReliabilityError> {
        let channel = purify(f0, r)?.to_channel();
        Ok(Self::with_channel(code, f0, r, &channel))
    }

    fn with_channel(code: &CssCode, f0: f64, r: u32, channel: &PauliChannel) -> Self {
        let (sx, sz) = success_pair(code, channel);
        Self {
            code_id: code.id().to_string(),
            n: code.n(),
            f0,
            r,
            qx: channel.qx(),
            qz: channel.qz(),
            p_succ_x: sx,
            p_succ_z: sz,
            p_l: (1.0 - sx * sz).max(0.0),
        }
    }
}

/// `start, start + step, ..., <= end`, each value rounded to 12 decimals so that
/// printed grids stay clean.
pub fn f0_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>, ReliabilityError> {
    if !step.is_finite() || step <= 0.0 {
        return Err(ReliabilityError::BadGrid(format!(
            "step {step} must be positive"
        )));
    }
    if start.is_nan() || end.is_nan() || start > end {
        return Err(ReliabilityError::BadGrid(format!(
            "start {start} exceeds end {end}"
        )));
    }
    for (what, v) in [("f0_start", start), ("f0_end", end)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(ReliabilityError::OutOfRange { what, value: v });
        }
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// Evaluates every `(code, r, f0)` combination.
///
/// Output order is registry order, then `r` ascending, then `f0` ascending,
/// independent of how the work is scheduled.
pub fn sweep(
    registry: &CodeRegistry,
    f0_grid: &[f64],
    rounds: &[u32],
) -> Result<Vec<ReliabilityPoint>, ReliabilityError> {
    if f0_grid.is_empty() || rounds.is_empty() || registry.is_empty() {
        return Err(ReliabilityError::BadGrid(
            "empty code list, F0 grid or round list".into(),
        ));
    }
    let mut grid = f0_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let mut rounds = rounds.to_vec();
    rounds.sort_unstable();

    let channels: Vec<(u32, f64, PauliChannel)> = rounds
        .iter()
        .flat_map(|&r| grid.iter().map(move |&f0| (r, f0)))
        .map(|(r, f0)| Ok((r, f0, purify(f0, r)?.to_channel())))
        .collect::<Result<_, ReliabilityError>>()?;

    let jobs: Vec<(&CssCode, &(u32, f64, PauliChannel))> = registry
        .iter()
        .flat_map(|code| channels.iter().map(move |ch| (code, ch)))
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(code, (r, f0, ch))| ReliabilityPoint::with_channel(code, *f0, *r, ch))
        .collect())
}

/// Smallest `f0` in `[lo, hi]` with `P_L <= target`, by bisection.
///
/// Assumes `P_L` is non-increasing in `f0` on the range. The returned value
/// always satisfies the target and is within [`CROSSING_TOLERANCE`] of the
/// true crossing.
pub fn find_crossing(
    code: &CssCode,
    r: u32,
    target: f64,
    (lo, hi): (f64, f64),
) -> Result<f64, ReliabilityError> {
    let p_l = |f0: f64| -> Result<f64, ReliabilityError> {
        Ok(logical_error(code, &purify(f0, r)?.to_channel()))
    };
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(ReliabilityError::BadGrid(format!(
            "range [{lo}, {hi}] is empty"
        )));
    }
    if p_l(lo)? <= target {
        return Ok(lo);
    }
    if p_l(hi)? > target {
        return Err(ReliabilityError::NoCrossing {
            code: code.id().to_string(),
            r,
            target,
            lo,
            hi,
        });
    }
    let (mut below, mut above) = (lo, hi);
    while above - below > CROSSING_TOLERANCE {
        let mid = 0.5 * (below + above);
        if p_l(mid)? <= target {
            above = mid;
        } else {
            below = mid;
        }
    }
    Ok(above)
}

/// Which registry codes the selector may choose from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CodeFamily {
    #[default]
    All,
    /// Uncoded plus the base code and its punctures.
    Punctured,
}

impl CodeFamily {
    pub fn restrict(self, registry: &CodeRegistry) -> CodeRegistry {
        match self {
            Self::All => registry.clone(),
            Self::Punctured => registry.subset(&PUNCTURED_FAMILY),
        }
    }
}

impl FromStr for CodeFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Self::All),
            "punctured" => Ok(Self::Punctured),
            other => Err(format!(
                "unknown code family {other:?}, expected all or punctured"
            )),
        }
    }
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::All => "all",
            Self::Punctured => "punctured",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub target: f64,
    pub f0: f64,
    pub r: u32,
    /// Every candidate, registry order.
    pub evaluated: Vec<ReliabilityPoint>,
    /// Ids with `P_L <= target`, registry order.
    pub feasible: Vec<String>,
    pub chosen: Option<String>,
    pub chosen_n: Option<usize>,
}

/// Picks the shortest code meeting `target` at `(f0, r)`; ties go to registry order.
pub fn select_code(
    registry: &CodeRegistry,
    f0: f64,
    r: u32,
    target: f64,
) -> Result<SelectionResult, ReliabilityError> {
    let channel = purify(f0, r)?.to_channel();
    let evaluated: Vec<_> = registry
        .iter()
        .map(|c| ReliabilityPoint::with_channel(c, f0, r, &channel))
        .collect();
    let feasible: Vec<&ReliabilityPoint> = evaluated.iter().filter(|p| p.p_l <= target).collect();
    // min_by_key keeps the first minimum, i.e. registry order on ties.
    let chosen = feasible.iter().min_by_key(|p| p.n);
    Ok(SelectionResult {
        target,
        f0,
        r,
        chosen: chosen.map(|p| p.code_id.clone()),
        chosen_n: chosen.map(|p| p.n),
        feasible: feasible.iter().map(|p| p.code_id.clone()).collect(),
        evaluated: evaluated.clone(),
    })
}

/// Probabilities in CSV output: 17 significant digits, round-trip exact.
pub fn format_probability(p: f64) -> String {
    format!("{p:.16e}")
}

pub const CSV_HEADER: &str = "code_id,n,r,f0,qX,qZ,pL";

/// Writes `points` as CSV with [`CSV_HEADER`].
pub fn write_csv<W: Write>(mut out: W, points: &[ReliabilityPoint]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            p.code_id,
            p.n,
            p.r,
            p.f0,
            format_probability(p.qx),
            format_probability(p.qz),
            format_probability(p.p_l)
        )?;
    }
    Ok(())
}
