//! Packed bit vectors and matrices over F2, with Gaussian elimination.

use std::fmt;

use super::AlgebraError;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(WORD)] }
    }

    #[must_use]
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + t)
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }

    fn first_one_from(&self, start: usize) -> Option<usize> {
        if start >= self.len {
            return None;
        }
        let mut wi = start / WORD;
        let mut w = self.words[wi] & (!0u64 << (start % WORD));
        loop {
            if w != 0 {
                let i = wi * WORD + w.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
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

/// Dense matrix over F2 stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl F2Matrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, data: vec![BitVec::zeros(cols); rows] }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values; all rows must share one length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::Ragged);
        }
        Ok(F2Matrix { rows: rows.len(), cols, data: rows.iter().map(|r| BitVec::from_bits(r)).collect() })
    }

    pub fn from_bitrows(cols: usize, data: Vec<BitVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.len() == cols));
        F2Matrix { rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    /// Computes `A x` for a column vector `x`.
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        debug_assert_eq!(x.len(), self.cols);
        let mut out = BitVec::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(x) {
                out.set(r, true);
            }
        }
        out
    }

    /// Computes the row vector `x A`.
    pub fn vec_mul(&self, x: &BitVec) -> BitVec {
        debug_assert_eq!(x.len(), self.rows);
        let mut out = BitVec::zeros(self.cols);
        for r in x.ones() {
            out.xor_assign(&self.data[r]);
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "F2Matrix::mul shape mismatch");
        let data = self.data.iter().map(|row| other.vec_mul(row)).collect();
        F2Matrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        rref(&mut rows, self.cols).len()
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<F2Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<BitVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut v = BitVec::zeros(2 * n);
                for c in row.ones() {
                    v.set(c, true);
                }
                v.set(n + i, true);
                v
            })
            .collect();
        let pivots = rref(&mut aug, n);
        if pivots.len() < n {
            return None;
        }
        let data = aug
            .iter()
            .map(|row| {
                let mut v = BitVec::zeros(n);
                for c in row.ones().filter(|&c| c >= n) {
                    v.set(c - n, true);
                }
                v
            })
            .collect();
        Some(F2Matrix { rows: n, cols: n, data })
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let mut rows = self.data.clone();
        let pivots = rref(&mut rows, self.cols);
        kernel_from_rref(&rows, &pivots, self.cols)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Row-reduces `rows` in place to reduced echelon form over the first `ncols`
/// columns and returns the pivot column of each leading row.
fn rref(rows: &mut [BitVec], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    let mut col = 0;
    while col < ncols && rank < rows.len() {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            // jump to the next column that has a one below `rank`
            let next = (rank..rows.len()).filter_map(|r| rows[r].first_one_from(col + 1)).min();
            match next {
                Some(c) if c < ncols => {
                    col = c;
                    continue;
                }
                _ => break,
            }
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        col += 1;
    }
    pivots
}

fn kernel_from_rref(rows: &[BitVec], pivots: &[usize], ncols: usize) -> Vec<BitVec> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = BitVec::zeros(ncols);
        v.set(free, true);
        for (i, &p) in pivots.iter().enumerate() {
            if rows[i].get(free) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}

/// Outcome of an affine system `A x = b` over F2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineOutcome {
    Solved {
        particular: BitVec,
        kernel: Vec<BitVec>,
    },
    /// A set of equations (row indices of `A`) whose sum reads `0 = 1`.
    Inconsistent {
        certificate: Vec<usize>,
    },
}

impl AffineOutcome {
    pub fn is_consistent(&self) -> bool {
        matches!(self, AffineOutcome::Solved { .. })
    }
}

/// Solves `A x = b`, returning a particular solution and a kernel basis, or
/// `None` when the system is inconsistent.
pub fn solve_affine_f2(a: &F2Matrix, b: &BitVec) -> Result<Option<(BitVec, Vec<BitVec>)>, AlgebraError> {
    Ok(match solve_affine_certified(a, b)? {
        AffineOutcome::Solved { particular, kernel } => Some((particular, kernel)),
        AffineOutcome::Inconsistent { .. } => None,
    })
}

/// Like [`solve_affine_f2`] but an inconsistent system comes back with the
/// rows whose sum is `0 = 1`.
pub fn solve_affine_certified(a: &F2Matrix, b: &BitVec) -> Result<AffineOutcome, AlgebraError> {
    if b.len() != a.rows() {
        return Err(AlgebraError::DimensionMismatch { rows: a.rows(), rhs: b.len() });
    }
    let n = a.cols();
    let mut aug: Vec<BitVec> = a
        .data
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = BitVec::zeros(n + 1);
            for c in row.ones() {
                v.set(c, true);
            }
            if b.get(r) {
                v.set(n, true);
            }
            v
        })
        .collect();
    let pivots = rref(&mut aug, n);
    let inconsistent = aug.iter().skip(pivots.len()).any(|row| row.get(n));
    if inconsistent {
        return Ok(AffineOutcome::Inconsistent { certificate: certificate(a, b) });
    }
    let mut particular = BitVec::zeros(n);
    for (i, &p) in pivots.iter().enumerate() {
        if aug[i].get(n) {
            particular.set(p, true);
        }
    }
    let kernel = kernel_from_rref(&aug, &pivots, n);
    Ok(AffineOutcome::Solved { particular, kernel })
}

/// Finds `y` with `y A = 0` and `y . b = 1` by solving the transposed system.
fn certificate(a: &F2Matrix, b: &BitVec) -> Vec<usize> {
    let m = a.rows();
    let mut sys = a.transpose().data;
    let mut last = BitVec::zeros(m);
    for r in b.ones() {
        last.set(r, true);
    }
    sys.push(last);
    let mut aug: Vec<BitVec> = sys
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = BitVec::zeros(m + 1);
            for c in row.ones() {
                v.set(c, true);
            }
            if i == a.cols() {
                v.set(m, true);
            }
            v
        })
        .collect();
    let pivots = rref(&mut aug, m);
    let mut y = BitVec::zeros(m);
    for (i, &p) in pivots.iter().enumerate() {
        if aug[i].get(m) {
            y.set(p, true);
        }
    }
    y.ones().collect()
}
