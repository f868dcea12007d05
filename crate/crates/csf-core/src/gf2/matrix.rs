//! Bit-packed vectors and matrices over the two-element field.
//!
//! Matrices are stored row-major, 64 entries per word. Row reduction always
//! picks the first nonzero pivot in scan order, so echelon forms, kernels and
//! solutions are deterministic and reproducible across runs.

use std::fmt;

use super::Gf2Error;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Dense vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the AND with `other`; the GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let base = wi * WORD_BITS;
            let len = self.len;
            let mut bits = w;
            std::iter::from_fn(move || {
                while bits != 0 {
                    let tz = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let idx = base + tz;
                    if idx < len {
                        return Some(idx);
                    }
                }
                None
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.ones().count()
    }

    fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    width: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let width = words_for(cols);
        BitMatrix {
            rows,
            cols,
            width,
            words: vec![0; rows * width],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from `(row, col)` entry pairs; duplicates toggle.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: &[(usize, usize)],
    ) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, cols);
        for &(r, c) in entries {
            if r >= rows || c >= cols {
                return Err(Gf2Error::EntryOutOfRange { row: r, col: c, rows, cols });
            }
            m.set(r, c, !m.get(r, c));
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.words[r * self.width + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let mask = 1u64 << (c % WORD_BITS);
        let w = &mut self.words[r * self.width + c / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.width..(r + 1) * self.width]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        let dst = &mut self.words[r * self.width..(r + 1) * self.width];
        dst.copy_from_slice(v.words());
    }

    pub fn from_rows(rows: &[BitVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, v) in rows.iter().enumerate() {
            m.set_row(i, v);
        }
        m
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.width, src * self.width);
        for k in 0..self.width {
            let w = self.words[s + k];
            self.words[d + k] ^= w;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.width {
            self.words.swap(a * self.width + k, b * self.width + k);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
        out
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch in mul");
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let base = i * out.width;
            for k in self.row(i).ones() {
                let src = k * rhs.width;
                for w in 0..rhs.width {
                    out.words[base + w] ^= rhs.words[src + w];
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "vector length mismatch in mul_vec");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.row_words(r).iter().zip(v.words()) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn hstack(&self, right: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, right.rows, "row count mismatch in hstack");
        let mut out = BitMatrix::zeros(self.rows, self.cols + right.cols);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                out.set(r, c, true);
            }
            for c in right.row(r).ones() {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    pub fn vstack(&self, below: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, below.cols, "column count mismatch in vstack");
        let mut out = BitMatrix::zeros(self.rows + below.rows, self.cols);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out.words[self.words.len()..].copy_from_slice(&below.words);
        out
    }

    /// Selects the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    /// In-place Gauss–Jordan elimination; returns pivot column indices.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row >= self.rows {
                break;
            }
            let Some(p) = (next_row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(next_row, p);
            for r in 0..self.rows {
                if r != next_row && self.get(r, col) {
                    self.xor_rows(r, next_row);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.eliminate().len()
    }

    /// Reduced row echelon form with zero rows trimmed.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut work = self.clone();
        let pivots = work.eliminate();
        let mut trimmed = BitMatrix::zeros(pivots.len(), self.cols);
        for i in 0..pivots.len() {
            let v = work.row(i);
            trimmed.set_row(i, &v);
        }
        (trimmed, pivots)
    }

    /// Basis for `{x : A x = 0}` (column-vector kernel), one row per basis
    /// vector, ordered by the free column they carry.
    pub fn kernel_basis(&self) -> BitMatrix {
        let (rref, pivots) = self.rref();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !pivot_set[c]).collect();
        let mut out = BitMatrix::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if rref.get(r, f) {
                    out.set(i, p, true);
                }
            }
        }
        out
    }

    /// Solves `A X = B` for all columns of `B` at once. `None` if any column
    /// is inconsistent. Free variables are set to zero.
    pub fn solve_columns(&self, rhs: &BitMatrix) -> Option<BitMatrix> {
        assert_eq!(self.rows, rhs.rows, "rhs row count mismatch in solve");
        let mut aug = self.hstack(rhs);
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row >= aug.rows {
                break;
            }
            let Some(p) = (next_row..aug.rows).find(|&r| aug.get(r, col)) else {
                continue;
            };
            aug.swap_rows(next_row, p);
            for r in 0..aug.rows {
                if r != next_row && aug.get(r, col) {
                    aug.xor_rows(r, next_row);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        // Rows past the pivot count must be zero on the rhs side too.
        for r in next_row..aug.rows {
            for c in self.cols..aug.cols {
                if aug.get(r, c) {
                    return None;
                }
            }
        }
        let mut x = BitMatrix::zeros(self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                if aug.get(r, self.cols + c) {
                    x.set(p, c, true);
                }
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, rhs: &BitVec) -> Option<BitVec> {
        let mut b = BitMatrix::zeros(self.rows, 1);
        for i in rhs.ones() {
            b.set(i, 0, true);
        }
        let x = self.solve_columns(&b)?;
        Some(BitVec::from_fn(self.cols, |i| x.get(i, 0)))
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_columns(&BitMatrix::identity(self.rows))?;
        if self.mul(&x) == BitMatrix::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reduced row-echelon basis of a subspace of GF(2)^n, with pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn from_matrix_rows(m: &BitMatrix) -> Echelon {
        let (basis, pivots) = m.rref();
        Echelon { basis, pivots }
    }

    pub fn from_vecs(rows: &[BitVec], n: usize) -> Echelon {
        Self::from_matrix_rows(&BitMatrix::from_rows(rows, n))
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminates the pivot coordinates of `v`.
    pub fn reduce(&self, v: &mut BitVec) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                v.xor_assign(&self.basis.row(i));
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside
    /// the span. In reduced echelon form the coefficient of basis row `i` is
    /// the bit of `v` at pivot `i`.
    pub fn coords(&self, v: &BitVec) -> Option<BitVec> {
        let mut w = v.clone();
        let mut coords = BitVec::zeros(self.dim());
        for (i, &p) in self.pivots.iter().enumerate() {
            if w.get(p) {
                coords.set(i, true);
                w.xor_assign(&self.basis.row(i));
            }
        }
        if w.is_zero() {
            Some(coords)
        } else {
            None
        }
    }
}
