use super::bitvec::{words_for, BitVec, WORD_BITS};
use crate::error::{Error, Result};
use std::fmt;

/// Dense row-major bit-packed matrix over GF(2).
///
/// Every row occupies `stride` words; bits past `cols` in the last word of a
/// row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub reduced: BinaryMatrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, bits: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows; all rows must share the length `cols`.
    pub fn from_rows(rows: &[BitVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has length {} not {cols}", r.len());
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Builds a matrix from `0`/`1` row strings. Panics on malformed input;
    /// meant for literals in tests and constructions.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<BitVec> = rows
            .iter()
            .map(|r| BitVec::parse_bitstring(r).expect("rows must be 0/1 strings"))
            .collect();
        Self::from_rows(&vecs, cols)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
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
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of {}x{}", self.rows, self.cols);
        (self.bits[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of {}x{}", self.rows, self.cols);
        let w = &mut self.bits[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.bits[r * self.stride + c / WORD_BITS] ^= 1u64 << (c % WORD_BITS);
    }

    #[inline]
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.bits[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_support(&self, r: usize) -> Vec<usize> {
        self.row(r).support()
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

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Number of ones in the whole matrix.
    pub fn weight(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.bits.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// row[dst] ^= row[src]
    fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (d0, s0) = (dst * s, src * s);
        for w in 0..s {
            let v = self.bits[s0 + w];
            self.bits[d0 + w] ^= v;
        }
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn matmul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.rows {
            return Err(Error::contract(
                "matmul",
                format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        let mut out = BinaryMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row(r).ones() {
                let src = other.row_words(k);
                let dst = &mut out.bits[r * out.stride..(r + 1) * out.stride];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        Ok(out)
    }

    /// M·v.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::contract("mul_vec", format!("vector length {} vs {} columns", v.len(), self.cols)));
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self.row_words(r).iter().zip(v.words()).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// vᵀ·M, i.e. the sum of the rows selected by `v`.
    pub fn combine_rows(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.rows {
            return Err(Error::contract("combine_rows", format!("vector length {} vs {} rows", v.len(), self.rows)));
        }
        let mut out = BitVec::zeros(self.cols);
        for r in v.ones() {
            for (d, s) in out.words_mut().iter_mut().zip(self.row_words(r)) {
                *d ^= s;
            }
        }
        Ok(out)
    }

    /// Kronecker product with entry `(iA·rows_B + iB, jA·cols_B + jB)`.
    pub fn kron(&self, other: &BinaryMatrix) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for ia in 0..self.rows {
            for ja in self.row(ia).ones() {
                for ib in 0..other.rows {
                    for jb in other.row(ib).ones() {
                        out.set(ia * other.rows + ib, ja * other.cols + jb, true);
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.rows != other.rows {
            return Err(Error::contract("hstack", format!("{} vs {} rows", self.rows, other.rows)));
        }
        let mut out = BinaryMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                out.set(r, c, true);
            }
            for c in other.row(r).ones() {
                out.set(r, self.cols + c, true);
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.cols {
            return Err(Error::contract("vstack", format!("{} vs {} columns", self.cols, other.cols)));
        }
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Ok(BinaryMatrix { rows: self.rows + other.rows, cols: self.cols, stride: self.stride, bits })
    }

    /// Submatrix keeping the given columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> BinaryMatrix {
        let vecs: Vec<BitVec> = rows.iter().map(|&r| self.row(r)).collect();
        BinaryMatrix::from_rows(&vecs, self.cols)
    }

    /// Reduced row-echelon form. Pivots are taken leftmost column first and,
    /// within a column, topmost remaining row; columns are never permuted.
    pub fn rref(&self) -> RrefResult {
        let mut m = self.clone();
        let pivot_columns = m.rref_in_place(self.cols);
        let rank = pivot_columns.len();
        RrefResult { reduced: m, pivot_columns, rank }
    }

    /// Eliminates in place over the first `limit` columns; returns pivots.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..limit {
            if next == self.rows {
                break;
            }
            let (w, mask) = (c / WORD_BITS, 1u64 << (c % WORD_BITS));
            let Some(p) = (next..self.rows).find(|&r| self.bits[r * self.stride + w] & mask != 0) else {
                continue;
            };
            self.swap_rows(next, p);
            for r in 0..self.rows {
                if r != next && self.bits[r * self.stride + w] & mask != 0 {
                    self.xor_row(r, next);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place(self.cols).len()
    }

    /// Basis of `{v : M·v = 0}` as rows, one per free column in ascending order.
    pub fn kernel_basis(&self) -> BinaryMatrix {
        let RrefResult { reduced, pivot_columns, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_columns {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = BinaryMatrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (i, &p) in pivot_columns.iter().enumerate() {
                if reduced.get(i, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }

    /// Some `x` with `M·x = b`, free variables zero; `None` when inconsistent.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.rows {
            return Err(Error::contract("solve", format!("rhs length {} vs {} rows", b.len(), self.rows)));
        }
        let mut aug = self.hstack(&BinaryMatrix::from_rows(std::slice::from_ref(b), self.rows).transpose())?;
        let pivots = aug.rref_in_place(self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if aug.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<BinaryMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&BinaryMatrix::identity(n)).ok()?;
        if aug.rref_in_place(n).len() < n {
            return None;
        }
        Some(BinaryMatrix::from_fn(n, n, |r, c| aug.get(r, n + c)))
    }

    /// Sparse view: the support of every row.
    pub fn to_sparse_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|r| self.row_support(r)).collect()
    }

    pub fn from_sparse_rows(rows: &[Vec<usize>], cols: usize) -> Result<Self> {
        let mut m = BinaryMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for &c in row {
                if c >= cols {
                    return Err(Error::contract("from_sparse_rows", format!("column {c} out of {cols}")));
                }
                m.flip(r, c);
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained echelon basis of a subspace; used for coset
/// membership tests and for extending a basis of a subspace to a larger one.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<(usize, BitVec)>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new() }
    }

    pub fn from_matrix(m: &BinaryMatrix) -> Self {
        let mut b = Self::new(m.cols());
        for r in 0..m.rows() {
            b.insert(m.row(r));
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `(pivot, row)` pairs in insertion order.
    pub fn rows(&self) -> &[(usize, BitVec)] {
        &self.rows
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len);
        let r = self.reduce(&v);
        let first = r.ones().next();
        match first {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor_assign(&r);
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }
}
