//! Bell-diagonal EPR pairs, DEJMPS purification and the teleportation Pauli channel.
//!
//! Teleporting through a Bell-diagonal pair with coefficients `(A, B, C, D)` on
//! `(Φ+, Ψ-, Ψ+, Φ-)` applies `(I, Y, X, Z)` with those probabilities. One DEJMPS
//! round maps
//!
//! ```text
//! A' = (A² + B²) / N     B' = 2CD / N
//! C' = (C² + D²) / N     D' = 2AB / N      N = (A + B)² + (C + D)²
//! ```

use thiserror::Error;

/// Tolerance on `A + B + C + D = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;
/// Largest accepted round count.
pub const MAX_ROUNDS: u32 = 32;
const MIN_NORMALIZATION: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PurificationError {
    #[error("{what} = {value} is outside [0, 1]")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("Bell coefficients sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("DEJMPS normalization {0} vanished; the input is not a physical state")]
    ZeroNormalization(f64),
    #[error("{0} purification rounds requested, at most {MAX_ROUNDS} supported")]
    TooManyRounds(u32),
}

fn probability(what: &'static str, value: f64) -> Result<f64, PurificationError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(PurificationError::OutOfRange { what, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalState {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    round: u32,
}

impl BellDiagonalState {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, PurificationError> {
        let a = probability("A", a)?;
        let b = probability("B", b)?;
        let c = probability("C", c)?;
        let d = probability("D", d)?;
        let sum = a + b + c + d;
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(PurificationError::NotNormalized(sum));
        }
        Ok(Self {
            a,
            b,
            c,
            d,
            round: 0,
        })
    }

    /// Werner state: fidelity `f0` on Φ+, `(1 - f0) / 3` on each other Bell state.
    pub fn werner(f0: f64) -> Result<Self, PurificationError> {
        let f0 = probability("F0", f0)?;
        let rest = (1.0 - f0) / 3.0;
        Ok(Self {
            a: f0,
            b: rest,
            c: rest,
            d: rest,
            round: 0,
        })
    }

    /// Fidelity with Φ+.
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Purification rounds applied since initialization.
    pub fn round(&self) -> u32 {
        self.round
    }

    pub fn fidelity(&self) -> f64 {
        self.a
    }

    /// One DEJMPS round, renormalized so the coefficients sum to 1.
    pub fn dejmps_round(&self) -> Result<Self, PurificationError> {
        let Self { a, b, c, d, round } = *self;
        let norm = (a + b).powi(2) + (c + d).powi(2);
        if norm <= MIN_NORMALIZATION {
            return Err(PurificationError::ZeroNormalization(norm));
        }
        let next = [
            (a * a + b * b) / norm,
            2.0 * c * d / norm,
            (c * c + d * d) / norm,
            2.0 * a * b / norm,
        ];
        let sum: f64 = next.iter().sum();
        Ok(Self {
            a: next[0] / sum,
            b: next[1] / sum,
            c: next[2] / sum,
            d: next[3] / sum,
            round: round + 1,
        })
    }

    /// Teleportation channel: `pX = C`, `pY = B`, `pZ = D`.
    pub fn to_channel(&self) -> PauliChannel {
        PauliChannel {
            px: self.c,
            py: self.b,
            pz: self.d,
        }
    }
}

/// Werner state at `f0` after `rounds` DEJMPS rounds.
pub fn purify(f0: f64, rounds: u32) -> Result<BellDiagonalState, PurificationError> {
    if rounds > MAX_ROUNDS {
        return Err(PurificationError::TooManyRounds(rounds));
    }
    (0..rounds).try_fold(BellDiagonalState::werner(f0)?, |s, _| s.dejmps_round())
}

/// Raw pairs consumed per output pair by `rounds` ideal DEJMPS rounds (`2^r`).
///
/// Auxiliary resource figure; selection never uses it.
pub fn raw_pairs_per_output(rounds: u32) -> u64 {
    1u64 << rounds
}

/// Single-qubit Pauli channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliChannel {
    px: f64,
    py: f64,
    pz: f64,
}

impl PauliChannel {
    pub fn new(px: f64, py: f64, pz: f64) -> Result<Self, PurificationError> {
        let px = probability("pX", px)?;
        let py = probability("pY", py)?;
        let pz = probability("pZ", pz)?;
        let total = px + py + pz;
        if total > 1.0 + NORMALIZATION_TOLERANCE {
            return Err(PurificationError::OutOfRange {
                what: "pX + pY + pZ",
                value: total,
            });
        }
        Ok(Self { px, py, pz })
    }

    pub fn perfect() -> Self {
        Self {
            px: 0.0,
            py: 0.0,
            pz: 0.0,
        }
    }

    pub fn px(&self) -> f64 {
        self.px
    }

    pub fn py(&self) -> f64 {
        self.py
    }

    pub fn pz(&self) -> f64 {
        self.pz
    }

    pub fn p_identity(&self) -> f64 {
        (1.0 - self.px - self.py - self.pz).max(0.0)
    }

    /// Bit-flip probability of the X branch, `pX + pY`.
    pub fn qx(&self) -> f64 {
        self.px + self.py
    }

    /// Phase-flip probability of the Z branch, `pZ + pY`.
    pub fn qz(&self) -> f64 {
        self.pz + self.py
    }
}
