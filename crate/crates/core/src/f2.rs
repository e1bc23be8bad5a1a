//! Dense linear algebra over GF(2).
//!
//! Vectors are packed into 64-bit words. Matrices are stored row-major as a
//! list of packed rows. Every Kronecker-style index in this crate uses the same
//! convention: the left factor is the outermost (slowest varying) index, so the
//! entry `((r1, r2), (c1, c2))` of `kron(A, B)` sits at row `r1 * B.rows() + r2`
//! and column `c1 * B.cols() + c2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{mismatch, Error, Result};

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = !0;
        }
        v.clear_tail();
        v
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits<I>(bits: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<u8>,
    {
        let bits: Vec<u8> = bits.into_iter().map(Into::into).collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    /// Builds a vector of length `len <= 64` from the low bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD_BITS, "from_mask needs len <= 64");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask;
            v.clear_tail();
        }
        v
    }

    /// Packs a vector of length at most 64 into a mask.
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= WORD_BITS, "to_mask needs len <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        let bit = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= bit;
        } else {
            self.words[i / WORD_BITS] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + tz)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of unequal lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Weight of `self + other` without allocating.
    pub fn distance(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// True if every one of `self` is also a one of `other`.
    pub fn is_subset_of(&self, other: &BitVector) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn kron(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len * other.len);
        for i in self.iter_ones() {
            for j in other.iter_ones() {
                out.set(i * other.len + j, true);
            }
        }
        out
    }

    pub fn concat(parts: &[&BitVector]) -> BitVector {
        let len = parts.iter().map(|p| p.len).sum();
        let mut out = BitVector::zeros(len);
        let mut offset = 0;
        for p in parts {
            for i in p.iter_ones() {
                out.set(offset + i, true);
            }
            offset += p.len;
        }
        out
    }

    pub fn slice(&self, offset: usize, len: usize) -> BitVector {
        assert!(offset + len <= self.len, "slice out of range");
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(offset + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Writes `part` into `self[offset..offset + part.len()]`.
    pub fn write_at(&mut self, offset: usize, part: &BitVector) {
        assert!(offset + part.len <= self.len, "write_at out of range");
        for i in 0..part.len {
            self.set(offset + i, part.get(i));
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVector::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unexpected character {other:?} in bit string"),
                    })
                }
            }
        }
        Ok(v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed so that zero-row matrices keep their width.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(mismatch("from_rows", format!("row of length {}", bad.len()), format!("{cols} columns")));
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Parses rows written as `"0110"` strings. Panics on malformed input; meant for literals.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.parse::<BitVector>().expect("bit string literal"))
            .collect();
        Self::from_rows(cols, data).expect("rows of equal length")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVector> {
        self.data.iter()
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<BitVector> {
        self.transpose().data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BitVector::weight).sum()
    }

    pub fn max_row_weight(&self) -> usize {
        self.data.iter().map(BitVector::weight).max().unwrap_or(0)
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

    pub fn max_column_weight(&self) -> usize {
        self.column_weights().into_iter().max().unwrap_or(0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mat_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(mismatch("mat_vec", format!("{}x{} matrix", self.rows, self.cols), format!("vector of length {}", v.len())));
        }
        let mut out = BitVector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(mismatch("mul", format!("{}x{}", self.rows, self.cols), format!("{}x{}", other.rows, other.cols)));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in self.data[r1].iter_ones() {
                for r2 in 0..other.rows {
                    for c2 in other.data[r2].iter_ones() {
                        out.set(r1 * other.rows + r2, c1 * other.cols + c2, true);
                    }
                }
            }
        }
        out
    }

    /// Kronecker product of a list of matrices, leftmost factor outermost.
    pub fn kron_all(factors: &[&BitMatrix]) -> BitMatrix {
        factors
            .iter()
            .fold(BitMatrix::identity(1), |acc, m| acc.kron(m))
    }

    pub fn hstack(parts: &[&BitMatrix]) -> Result<BitMatrix> {
        let rows = parts.first().map_or(0, |p| p.rows);
        if let Some(bad) = parts.iter().find(|p| p.rows != rows) {
            return Err(mismatch("hstack", format!("{rows} rows"), format!("{} rows", bad.rows)));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        let mut offset = 0;
        for p in parts {
            for r in 0..rows {
                for c in p.data[r].iter_ones() {
                    out.set(r, offset + c, true);
                }
            }
            offset += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&BitMatrix]) -> Result<BitMatrix> {
        let cols = parts.first().map_or(0, |p| p.cols);
        if let Some(bad) = parts.iter().find(|p| p.cols != cols) {
            return Err(mismatch("vstack", format!("{cols} columns"), format!("{} columns", bad.cols)));
        }
        let data = parts.iter().flat_map(|p| p.data.iter().cloned()).collect();
        BitMatrix::from_rows(cols, data)
    }

    /// Copies `block` into the sub-matrix starting at `(row, col)`.
    pub fn place(&mut self, row: usize, col: usize, block: &BitMatrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in block.data[r].iter_ones() {
                self.set(row + r, col + c, true);
            }
        }
    }

    pub fn sub_matrix(&self, row: usize, col: usize, rows: usize, cols: usize) -> BitMatrix {
        let data = (row..row + rows).map(|r| self.data[r].slice(col, cols)).collect();
        BitMatrix { rows, cols, data }
    }

    pub fn rank(&self) -> usize {
        let mut basis = XorBasis::new(self.cols);
        for row in &self.data {
            basis.insert(row.clone());
        }
        basis.rank()
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(self.cols);
        (m, pivots)
    }

    /// Gauss-Jordan elimination restricted to the first `pivot_cols` columns.
    fn eliminate(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..pivot_cols {
            let Some(p) = (next..self.rows).find(|&r| self.data[r].get(c)) else {
                continue;
            };
            self.data.swap(next, p);
            let pivot_row = self.data[next].clone();
            for r in 0..self.rows {
                if r != next && self.data[r].get(c) {
                    self.data[r].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
            if next == self.rows {
                break;
            }
        }
        pivots
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitVector::unit(self.cols, f);
                for (i, &p) in pivots.iter().enumerate() {
                    if r.data[i].get(f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// Some `x` with `A x = b`, or `None` when `b` is outside the column space.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>> {
        if b.len() != self.rows {
            return Err(mismatch("solve", format!("{}x{} matrix", self.rows, self.cols), format!("right-hand side of length {}", b.len())));
        }
        let aug_rows = (0..self.rows)
            .map(|r| {
                let mut row = BitVector::zeros(self.cols + 1);
                row.write_at(0, &self.data[r]);
                row.set(self.cols, b.get(r));
                row
            })
            .collect();
        let mut aug = BitMatrix::from_rows(self.cols + 1, aug_rows)?;
        let pivots = aug.eliminate(self.cols);
        if (pivots.len()..self.rows).any(|r| aug.data[r].get(self.cols)) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if aug.data[i].get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis of the row space as an echelon structure, for membership tests.
    pub fn row_space(&self) -> XorBasis {
        let mut basis = XorBasis::new(self.cols);
        for row in &self.data {
            basis.insert(row.clone());
        }
        basis
    }

    /// Basis of the column space (the image of the map).
    pub fn column_space(&self) -> XorBasis {
        self.transpose().row_space()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// Incrementally built basis of a subspace, kept in echelon form.
///
/// Each stored vector has a distinct pivot (its lowest set index at insertion time),
/// and later vectors are zero at earlier pivots. Reduction walks the vectors in
/// insertion order.
#[derive(Clone, Debug)]
pub struct XorBasis {
    len: usize,
    vectors: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl XorBasis {
    pub fn new(len: usize) -> Self {
        XorBasis {
            len,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[BitVector] {
        &self.vectors
    }

    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for (p, b) in self.pivots.iter().zip(&self.vectors) {
            if v.get(*p) {
                v.xor_assign(b);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns false if it was already contained.
    pub fn insert(&mut self, v: BitVector) -> bool {
        assert_eq!(v.len(), self.len, "basis vector length");
        let r = self.reduce(&v);
        match r.first_one() {
            None => false,
            Some(p) => {
                self.pivots.push(p);
                self.vectors.push(r);
                true
            }
        }
    }
}

/// Visits every nonzero element of the span of `basis` in Gray-code order.
///
/// The callback receives the Gray code (bit `i` set iff `basis[i]` is included) and the
/// combination. Returning `false` stops the walk.
pub fn for_each_span(basis: &[BitVector], len: usize, mut visit: impl FnMut(u64, &BitVector) -> bool) {
    assert!(basis.len() < 64, "span too large to enumerate");
    let mut current = BitVector::zeros(len);
    let total: u64 = 1 << basis.len();
    for i in 1..total {
        let bit = i.trailing_zeros() as usize;
        current.xor_assign(&basis[bit]);
        let gray = i ^ (i >> 1);
        if !visit(gray, &current) {
            return;
        }
    }
}

/// Dense 3-index array over GF(2), index `(i, j, k)` stored at `(i * n2 + j) * n3 + k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3 {
    dims: (usize, usize, usize),
    data: BitVector,
}

impl Tensor3 {
    pub fn zeros(dims: (usize, usize, usize)) -> Self {
        Tensor3 {
            dims,
            data: BitVector::zeros(dims.0 * dims.1 * dims.2),
        }
    }

    /// Reshapes a flat vector using the Kronecker index convention.
    pub fn reshape(v: &BitVector, dims: (usize, usize, usize)) -> Result<Self> {
        if v.len() != dims.0 * dims.1 * dims.2 {
            return Err(mismatch("reshape3", format!("vector of length {}", v.len()), format!("dims {dims:?}")));
        }
        Ok(Tensor3 {
            dims,
            data: v.clone(),
        })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims.1 + j) * self.dims.2 + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> bool {
        self.data.get(self.index(i, j, k))
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: bool) {
        let idx = self.index(i, j, k);
        self.data.set(idx, value);
    }

    pub fn flatten(&self) -> BitVector {
        self.data.clone()
    }

    pub fn weight(&self) -> usize {
        self.data.weight()
    }

    /// Applies `A`, `B`, `C` along the three modes: the reshaped form of `(A ⊗ B ⊗ C) v`.
    pub fn mode_product(a: &BitMatrix, b: &BitMatrix, c: &BitMatrix, v: &Tensor3) -> Result<Tensor3> {
        let (n1, n2, n3) = v.dims;
        if a.cols() != n1 || b.cols() != n2 || c.cols() != n3 {
            return Err(mismatch(
                "mode_product",
                format!("factor columns ({}, {}, {})", a.cols(), b.cols(), c.cols()),
                format!("tensor dims {:?}", v.dims),
            ));
        }
        let (m1, m2, m3) = (a.rows(), b.rows(), c.rows());
        // mode 1
        let mut t1 = Tensor3::zeros((m1, n2, n3));
        for p in 0..m1 {
            for i in a.row(p).iter_ones() {
                for j in 0..n2 {
                    for k in 0..n3 {
                        if v.get(i, j, k) {
                            let cur = t1.get(p, j, k);
                            t1.set(p, j, k, !cur);
                        }
                    }
                }
            }
        }
        // mode 2
        let mut t2 = Tensor3::zeros((m1, m2, n3));
        for q in 0..m2 {
            for j in b.row(q).iter_ones() {
                for p in 0..m1 {
                    for k in 0..n3 {
                        if t1.get(p, j, k) {
                            let cur = t2.get(p, q, k);
                            t2.set(p, q, k, !cur);
                        }
                    }
                }
            }
        }
        // mode 3
        let mut t3 = Tensor3::zeros((m1, m2, m3));
        for s in 0..m3 {
            for k in c.row(s).iter_ones() {
                for p in 0..m1 {
                    for q in 0..m2 {
                        if t2.get(p, q, k) {
                            let cur = t3.get(p, q, s);
                            t3.set(p, q, s, !cur);
                        }
                    }
                }
            }
        }
        Ok(t3)
    }
}
