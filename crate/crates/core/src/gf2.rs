//! Dense linear algebra over GF(2).
//!
//! Entries are packed into `u64` words, least-significant bit first: entry `j`
//! lives in bit `j % 64` of word `j / 64`. Padding bits past `len` are always
//! zero, so equality and weight only ever see logical entries. All indices in
//! this module are 0-based.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const WORD_BITS: usize = 64;

/// Largest basis accepted by [`enumerate_span`] (2^24 combinations).
pub const SPAN_ENUMERATION_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis of size {size} exceeds the enumeration limit of {limit}")]
    BasisTooLarge { size: usize, limit: usize },
    #[error("ragged matrix literal: row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid symbol {symbol:?} in binary literal (line {line})")]
    InvalidSymbol { line: usize, symbol: char },
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// Vector of length `len` with ones exactly at `support`.
    ///
    /// # Panics
    ///
    /// Panics if any index is `>= len`.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector of length `len <= 64` from a bit mask (bit `j` is entry `j`).
    ///
    /// # Panics
    ///
    /// Panics if `len > 64` or the mask has bits set at or past `len`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD_BITS, "mask vectors hold at most 64 entries");
        assert!(
            len == WORD_BITS || mask >> len == 0,
            "mask has bits beyond length {len}"
        );
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask;
        }
        v
    }

    /// The entries as a bit mask, if the vector fits in one word.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check_index(&self, i: usize) {
        assert!(
            i < self.len,
            "index {i} out of range for vector of length {}",
            self.len
        );
    }

    pub fn get(&self, i: usize) -> bool {
        self.check_index(i);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.check_index(i);
        let bit = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= bit;
        } else {
            self.words[i / WORD_BITS] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.check_index(i);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Inner product over GF(2).
    ///
    /// # Panics
    ///
    /// Panics on a length mismatch.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(
            self.len, other.len,
            "dot product of vectors with different lengths"
        );
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// `self += other` over GF(2).
    ///
    /// # Panics
    ///
    /// Panics on a length mismatch.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "sum of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Copy with entry `i` deleted.
    pub fn without(&self, i: usize) -> Self {
        self.check_index(i);
        Self::from_bits(
            self.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, b)| b),
        )
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({self})")
    }
}

fn parse_row(line: &str, line_no: usize) -> Result<BinaryVector, Gf2Error> {
    let mut bits = Vec::new();
    for ch in line.chars() {
        match ch {
            '0' => bits.push(false),
            '1' => bits.push(true),
            c if c.is_whitespace() => {}
            c => {
                return Err(Gf2Error::InvalidSymbol {
                    line: line_no,
                    symbol: c,
                })
            }
        }
    }
    Ok(BinaryVector::from_bits(bits))
}

impl FromStr for BinaryVector {
    type Err = Gf2Error;

    /// Parses a string of `0`/`1` characters; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_row(s, 1)
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BinaryVector>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BinaryVector::zeros(cols); rows],
        }
    }

    /// A matrix with no rows and `cols` columns.
    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n)
                .map(|i| BinaryVector::from_support(n, &[i]))
                .collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BinaryVector>) -> Result<Self, Gf2Error> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::RaggedRow {
                    row: i + 1,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Self { cols, rows })
    }

    /// Parses the matrix literal format: one row of `0`/`1` per line, blank
    /// lines skipped, whitespace inside a row ignored. `cols` must be given for
    /// literals without rows.
    pub fn parse_with_cols(s: &str, cols: Option<usize>) -> Result<Self, Gf2Error> {
        let mut rows = Vec::new();
        for (line_no, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            rows.push(parse_row(line, line_no + 1)?);
        }
        let width = cols
            .or_else(|| rows.first().map(BinaryVector::len))
            .unwrap_or(0);
        Self::from_rows(width, rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BinaryVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BinaryVector {
        assert!(
            i < self.rows.len(),
            "row {i} out of range for {} rows",
            self.rows.len()
        );
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.row(r).get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows.len(),
            "row {r} out of range for {} rows",
            self.rows.len()
        );
        self.rows[r].set(c, value);
    }

    pub fn column(&self, c: usize) -> BinaryVector {
        BinaryVector::from_bits(self.rows.iter().map(|r| r.get(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BinaryVector::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self {
            cols: self.rows.len(),
            rows: (0..self.cols).map(|c| self.column(c)).collect(),
        }
    }

    /// Copy with column `c` deleted.
    pub fn without_column(&self, c: usize) -> Self {
        assert!(
            c < self.cols,
            "column {c} out of range for {} columns",
            self.cols
        );
        Self {
            cols: self.cols - 1,
            rows: self.rows.iter().map(|r| r.without(c)).collect(),
        }
    }

    /// `self · otherᵀ`; both operands must have the same column count.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.cols != other.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|a| BinaryVector::from_bits(other.rows.iter().map(|b| a.dot(b))))
            .collect();
        Ok(Self {
            cols: other.rows.len(),
            rows,
        })
    }

    pub fn rref(&self) -> Echelon {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// True iff both matrices span the same row space.
    pub fn row_space_eq(&self, other: &Self) -> bool {
        self.cols == other.cols && {
            let a = self.rref();
            let b = other.rref();
            a.pivots == b.pivots && a.matrix.rows[..a.rank()] == b.matrix.rows[..b.rank()]
        }
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix {}x{} [", self.rows.len(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for BinaryMatrix {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_with_cols(s, None)
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    /// Same shape as the input; nonzero rows first, zero rows at the bottom.
    pub matrix: BinaryMatrix,
    /// Pivot column of row `i`, for each nonzero row `i`.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the pivot rows; the result is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &BinaryVector) -> BinaryVector {
        let mut v = v.clone();
        for (row, &p) in self.matrix.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BinaryVector) -> Result<bool, Gf2Error> {
        if v.len() != self.matrix.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.matrix.cols,
                found: v.len(),
            });
        }
        Ok(self.reduce(v).is_zero())
    }
}

/// Gauss-Jordan elimination over GF(2).
pub fn rref(m: &BinaryMatrix) -> Echelon {
    let mut rows = m.rows.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..m.cols {
        let Some(p) = (next..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != next && r.get(c) {
                r.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    Echelon {
        matrix: BinaryMatrix { cols: m.cols, rows },
        pivots,
    }
}

pub fn rank(m: &BinaryMatrix) -> usize {
    rref(m).rank()
}

/// True iff `v` is a GF(2) combination of the rows of `m`.
pub fn in_rowspace(v: &BinaryVector, m: &BinaryMatrix) -> Result<bool, Gf2Error> {
    rref(m).contains(v)
}

/// Basis of `{x : m·x = 0}`, one vector per free column.
pub fn kernel_basis(m: &BinaryMatrix) -> Vec<BinaryVector> {
    let e = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BinaryVector::zeros(m.cols);
            v.set(f, true);
            for (row, &p) in e.matrix.rows.iter().zip(&e.pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// `h · e` over GF(2).
pub fn syndrome(h: &BinaryMatrix, e: &BinaryVector) -> Result<BinaryVector, Gf2Error> {
    if e.len() != h.cols {
        return Err(Gf2Error::DimensionMismatch {
            expected: h.cols,
            found: e.len(),
        });
    }
    Ok(BinaryVector::from_bits(h.rows.iter().map(|r| r.dot(e))))
}

/// All `2^k` combinations of a basis of vectors of length `len`, in Gray-code order
/// starting from the zero vector.
pub fn enumerate_span(basis: &[BinaryVector], len: usize) -> Result<SpanIter<'_>, Gf2Error> {
    if basis.len() > SPAN_ENUMERATION_LIMIT {
        return Err(Gf2Error::BasisTooLarge {
            size: basis.len(),
            limit: SPAN_ENUMERATION_LIMIT,
        });
    }
    if let Some(bad) = basis.iter().find(|b| b.len() != len) {
        return Err(Gf2Error::DimensionMismatch {
            expected: len,
            found: bad.len(),
        });
    }
    Ok(SpanIter {
        basis,
        current: BinaryVector::zeros(len),
        step: 0,
        total: 1u64 << basis.len(),
    })
}

pub struct SpanIter<'a> {
    basis: &'a [BinaryVector],
    current: BinaryVector,
    step: u64,
    total: u64,
}

impl Iterator for SpanIter<'_> {
    type Item = BinaryVector;

    fn next(&mut self) -> Option<BinaryVector> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current.xor_assign(&self.basis[flip]);
        }
        self.step += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SpanIter<'_> {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn m(s: &str) -> BinaryMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn duplicate_rows_collapse() {
        let e = rref(&m("11\n11"));
        assert_eq!(e.matrix, m("11\n00"));
        assert_eq!(e.pivots, vec![0]);
    }

    #[test]
    fn identity_is_fixed_point() {
        let e = rref(&BinaryMatrix::identity(3));
        assert_eq!(e.matrix, BinaryMatrix::identity(3));
        assert_eq!(e.pivots, vec![0, 1, 2]);
        assert_eq!(rank(&BinaryMatrix::identity(4)), 4);
        assert!(kernel_basis(&BinaryMatrix::identity(3)).is_empty());
    }

    #[test]
    fn zero_matrix_rank_and_kernel() {
        assert_eq!(rank(&BinaryMatrix::zeros(2, 5)), 0);
        assert_eq!(kernel_basis(&BinaryMatrix::zeros(1, 3)).len(), 3);
    }

    #[test]
    fn rowspace_membership() {
        let h = m("010\n001");
        assert!(in_rowspace(&BinaryVector::zeros(3), &h).unwrap());
        assert!(in_rowspace(h.row(0), &h).unwrap());
        assert!(!in_rowspace(&"100".parse().unwrap(), &h).unwrap());
        assert_eq!(
            in_rowspace(&"10".parse().unwrap(), &h),
            Err(Gf2Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn span_small_cases() {
        let empty: Vec<BinaryVector> = vec![];
        let all: Vec<_> = enumerate_span(&empty, 4).unwrap().collect();
        assert_eq!(all, vec![BinaryVector::zeros(4)]);
        let v: BinaryVector = "1011".parse().unwrap();
        let all: Vec<_> = enumerate_span(std::slice::from_ref(&v), 4)
            .unwrap()
            .collect();
        assert_eq!(all, vec![BinaryVector::zeros(4), v]);
    }

    #[test]
    fn span_guard() {
        let basis: Vec<_> = (0..25)
            .map(|i| BinaryVector::from_support(25, &[i]))
            .collect();
        assert!(matches!(
            enumerate_span(&basis, 25),
            Err(Gf2Error::BasisTooLarge {
                size: 25,
                limit: 24
            })
        ));
    }

    #[test]
    fn syndrome_basics() {
        let h = m("1010\n0110");
        assert!(syndrome(&h, &BinaryVector::zeros(4)).unwrap().is_zero());
        let e: BinaryVector = "0110".parse().unwrap();
        assert_eq!(syndrome(&BinaryMatrix::identity(4), &e).unwrap(), e);
        assert_eq!(
            syndrome(&h, &BinaryVector::from_support(4, &[2])).unwrap(),
            h.column(2)
        );
        assert!(syndrome(&h, &BinaryVector::zeros(3)).is_err());
    }

    #[test]
    fn literal_parser() {
        let h = m("1101 1\n\n0010 0\n");
        assert_eq!(h.nrows(), 2);
        assert_eq!(h.ncols(), 5);
        assert_eq!(
            "101\n11".parse::<BinaryMatrix>(),
            Err(Gf2Error::RaggedRow {
                row: 2,
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            "10x".parse::<BinaryMatrix>(),
            Err(Gf2Error::InvalidSymbol {
                line: 1,
                symbol: 'x'
            })
        );
        assert_eq!(h.to_string(), "11011\n00100");
    }

    #[test]
    fn wide_vectors_cross_word_boundary() {
        let mut v = BinaryVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.support(), vec![0, 64, 129]);
        let w = v.without(64);
        assert_eq!(w.len(), 129);
        assert_eq!(w.support(), vec![0, 128]);
        assert!(v.to_mask().is_none());
    }

    #[test]
    fn masks_round_trip() {
        let v = BinaryVector::from_mask(17, 0b1_0000_0000_0000_0101);
        assert_eq!(v.support(), vec![0, 2, 16]);
        assert_eq!(v.to_mask(), Some(0b1_0000_0000_0000_0101));
    }

    fn arb_matrix() -> impl Strategy<Value = BinaryMatrix> {
        (1usize..7, 1usize..10).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BinaryMatrix::from_rows(
                        c,
                        rows.into_iter().map(BinaryVector::from_bits).collect(),
                    )
                    .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in arb_matrix()) {
            let once = rref(&a);
            let twice = rref(&once.matrix);
            prop_assert_eq!(&once.matrix, &twice.matrix);
            prop_assert_eq!(once.pivots, twice.pivots);
        }

        #[test]
        fn rank_nullity(a in arb_matrix()) {
            prop_assert_eq!(rank(&a) + kernel_basis(&a).len(), a.ncols());
        }

        #[test]
        fn kernel_vectors_have_zero_syndrome(a in arb_matrix()) {
            for b in kernel_basis(&a) {
                prop_assert!(syndrome(&a, &b).unwrap().is_zero());
            }
        }

        #[test]
        fn span_of_rows_is_in_rowspace(a in arb_matrix()) {
            let span: Vec<_> = enumerate_span(a.rows(), a.ncols()).unwrap().collect();
            prop_assert_eq!(span.len(), 1 << a.nrows());
            for v in &span {
                prop_assert!(in_rowspace(v, &a).unwrap());
            }
            let distinct: HashSet<_> = span.into_iter().collect();
            prop_assert_eq!(distinct.len(), 1 << rank(&a));
        }

        #[test]
        fn rref_preserves_row_space(a in arb_matrix()) {
            prop_assert!(a.row_space_eq(&rref(&a).matrix));
        }
    }
}
