//! Dense linear algebra over GF(2).
//!
//! Vectors are packed 64 bits per word. Matrices store one packed vector per
//! row. Everything in this crate that talks about check matrices, boundary
//! maps or Pauli supports goes through these two types.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A packed bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Builds a vector of length `len` with ones at the given positions.
    ///
    /// # Panics
    ///
    /// Panics if a position is out of range.
    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from the low `len` bits of `mask` (bit `i` of the mask is entry `i`).
    pub fn from_u128(len: usize, mask: u128) -> Self {
        assert!(len <= 128, "from_u128 supports at most 128 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask as u64;
        }
        if len > 64 {
            v.words[1] = (mask >> 64) as u64;
        }
        v.clear_tail();
        v
    }

    /// Low 128 bits packed into an integer; `None` when the vector is longer.
    pub fn to_u128(&self) -> Option<u128> {
        if self.len > 128 {
            return None;
        }
        let lo = self.words.first().copied().unwrap_or(0) as u128;
        let hi = self.words.get(1).copied().unwrap_or(0) as u128;
        Some(lo | (hi << 64))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// `self ^= other`.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    /// GF(2) inner product.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc == 1
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Positions of set bits in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Sub-vector `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        let mut out = BitVec::zeros(len);
        for i in self.iter_ones().filter(|&i| i >= start && i < start + len) {
            out.set(i - start, true);
        }
        out
    }

    fn clear_tail(&mut self) {
        let extra = self.words.len() * WORD - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVec::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            }
        }
        Ok(v)
    }
}

/// Dense matrix over GF(2), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Parses rows written as `'0'/'1'` strings, e.g. `["110", "011"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows.iter().map(|r| r.parse::<BitVec>()).collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVec::len);
        Self::from_rows(cols, parsed)
    }

    /// Reads the text format: one row per line of `'0'/'1'` characters.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Self::from_strs(&rows)
    }

    /// Writes the text format read by [`BinaryMatrix::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for row in &self.data {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[BitVec] {
        &self.data
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for row in &self.data {
            for c in row.iter_ones() {
                w[c] += 1;
            }
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BinaryMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// `self · vᵀ`, one output bit per row.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Entry-wise sum (XOR).
    pub fn add(&self, other: &BinaryMatrix) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.xor(b)).collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &BinaryMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.concat(b)).collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// Vertical concatenation, `self` on top.
    pub fn vstack(&self, other: &BinaryMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Kronecker product. Entry `(i·rows(B) + j, k·cols(B) + l)` equals `A(i,k)·B(j,l)`.
    pub fn kron(&self, other: &BinaryMatrix) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for k in self.data[i].iter_ones() {
                for j in 0..other.rows {
                    for l in other.data[j].iter_ones() {
                        out.set(i * other.rows + j, k * other.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// Reduced row-echelon form and its pivot columns (strictly increasing).
    /// Zero rows are moved to the bottom; the shape is unchanged.
    pub fn row_reduce(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        (
            BinaryMatrix {
                rows: self.rows,
                cols: self.cols,
                data: rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        RowSpace::new(self).dim()
    }

    /// Basis of the null space `{v : self · vᵀ = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> BinaryMatrix {
        let (reduced, pivots) = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::zeros(self.cols);
                v.set(free, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if reduced.get(r, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect::<Vec<_>>();
        BinaryMatrix {
            rows: basis.len(),
            cols: self.cols,
            data: basis,
        }
    }

    /// True iff `v` is a GF(2) combination of the rows.
    pub fn in_rowspace(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(RowSpace::new(self).contains(v))
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// Echelon basis of a row space, kept around for repeated membership tests.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &BinaryMatrix) -> Self {
        let (reduced, pivots) = m.row_reduce();
        let basis = reduced.data.into_iter().take(pivots.len()).collect();
        Self {
            cols: m.cols,
            basis,
            pivots,
        }
    }

    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    /// Remainder of `v` after eliminating every pivot of the basis.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the space. Returns false if it was already contained.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.first_one() else {
            return false;
        };
        // Keep the basis fully reduced so `reduce` stays a single pass.
        for row in &mut self.basis {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }
}

/// Inverse of a square GF(2) matrix, if it exists.
pub fn invert(m: &BinaryMatrix) -> Option<BinaryMatrix> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let augmented = m.hstack(&BinaryMatrix::identity(n)).ok()?;
    let (reduced, pivots) = augmented.row_reduce();
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let rows = reduced.data.iter().map(|r| r.slice(n, n)).collect();
    BinaryMatrix::from_rows(n, rows).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::from_strs(rows).unwrap()
    }

    #[test]
    fn rank_of_small_repetition_checks() {
        assert_eq!(m(&["110", "011", "101"]).rank(), 2);
        assert_eq!(m(&["110", "011"]).rank(), 2);
        assert_eq!(BinaryMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn row_reduce_examples() {
        let id = BinaryMatrix::identity(4);
        let (r, p) = id.row_reduce();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2, 3]);

        let z = BinaryMatrix::zeros(2, 3);
        let (r, p) = z.row_reduce();
        assert_eq!(r, z);
        assert!(p.is_empty());

        let (r, p) = m(&["110", "011", "101"]).row_reduce();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, m(&["101", "011", "000"]));
    }

    #[test]
    fn kernel_examples() {
        let k = m(&["110", "011"]).kernel_basis();
        assert_eq!(k, m(&["111"]));
        assert_eq!(BinaryMatrix::identity(5).kernel_basis().rows(), 0);
    }

    #[test]
    fn rowspace_examples() {
        let h = m(&["110", "011"]);
        assert!(h.in_rowspace(&BitVec::zeros(3)).unwrap());
        assert!(h.in_rowspace(&"101".parse().unwrap()).unwrap());
        assert!(!h.in_rowspace(&"111".parse().unwrap()).unwrap());
        assert!(!h.in_rowspace(&"100".parse().unwrap()).unwrap());
        assert!(matches!(
            h.in_rowspace(&BitVec::zeros(4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kron_examples() {
        let a = m(&["110", "011"]);
        assert_eq!(a.kron(&BinaryMatrix::identity(1)), a);
        assert_eq!(
            BinaryMatrix::identity(2).kron(&BinaryMatrix::identity(3)),
            BinaryMatrix::identity(6)
        );
        let expected = m(&["101000", "010100", "001010", "000101"]);
        assert_eq!(a.kron(&BinaryMatrix::identity(2)), expected);
    }

    #[test]
    fn text_format_reads_back() {
        let a = m(&["1100", "0111", "0000"]);
        let text = a.to_text();
        assert_eq!(text, "1100\n0111\n0000\n");
        assert_eq!(BinaryMatrix::from_text(&format!("# comment\n{text}\n")).unwrap(), a);
        assert!(BinaryMatrix::from_text("10\n1x\n").is_err());
        assert!(BinaryMatrix::from_text("10\n101\n").is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&["110", "010", "011"]);
        let inv = invert(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), BinaryMatrix::identity(3));
        assert!(invert(&m(&["110", "011", "101"])).is_none());
    }

    #[test]
    fn rowspace_insert_tracks_dimension() {
        let mut rs = RowSpace::empty(4);
        assert!(rs.insert(&"1100".parse().unwrap()));
        assert!(rs.insert(&"0110".parse().unwrap()));
        assert!(!rs.insert(&"1010".parse().unwrap()));
        assert!(rs.contains(&"1010".parse().unwrap()));
        assert!(!rs.contains(&"0001".parse().unwrap()));
        assert_eq!(rs.dim(), 2);
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinaryMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
                BinaryMatrix::from_rows(c, rows.iter().map(|b| BitVec::from_bools(b)).collect()).unwrap()
            })
        })
    }

    fn arb_square(n: usize) -> impl Strategy<Value = BinaryMatrix> {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), n).prop_map(move |rows| {
            BinaryMatrix::from_rows(n, rows.iter().map(|b| BitVec::from_bools(b)).collect()).unwrap()
        })
    }

    /// Span by enumerating every subset of rows.
    fn brute_force_span_contains(m: &BinaryMatrix, v: &BitVec) -> bool {
        (0u32..1 << m.rows()).any(|mask| {
            let mut acc = BitVec::zeros(m.cols());
            for r in 0..m.rows() {
                if mask >> r & 1 == 1 {
                    acc.xor_assign(m.row(r));
                }
            }
            &acc == v
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in arb_matrix(8, 12)) {
            let (reduced, pivots) = a.row_reduce();
            prop_assert_eq!(reduced.rank(), a.rank());
            prop_assert_eq!(pivots.len(), a.rank());
            prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.rows(), a.cols());
            prop_assert_eq!(k.rank(), k.rows());
            for row in k.row_vecs() {
                prop_assert!(a.mul_vec(row).unwrap().is_zero());
            }
        }

        #[test]
        fn kron_mixed_product(a in arb_square(3), b in arb_square(3), c in arb_square(3), d in arb_square(3)) {
            let lhs = a.kron(&b).mul(&c.kron(&d)).unwrap();
            let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rowspace_matches_enumeration(a in arb_matrix(12, 8), bits in proptest::collection::vec(any::<bool>(), 8)) {
            let v = BitVec::from_bools(&bits[..a.cols()]);
            prop_assert_eq!(a.in_rowspace(&v).unwrap(), brute_force_span_contains(&a, &v));
        }

        #[test]
        fn text_format_round_trip(a in arb_matrix(6, 70)) {
            prop_assert_eq!(BinaryMatrix::from_text(&a.to_text()).unwrap(), a);
        }
    }
}
