//! Dense bit-packed linear algebra over the two-element field.
//!
//! Pivoting is deterministic everywhere (lowest column, then lowest row), so
//! kernel bases, homology representatives and diagnostics are reproducible.

use std::fmt;

const WORD: usize = 64;

/// A vector over F2 packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(WORD)], len }
    }

    pub fn unit(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    pub fn from_indices(len: usize, bits: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for b in bits {
            v.flip(b);
        }
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
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, &w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + b)
                }
            })
        })
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row-major F2 matrix, one [`BitVec`] per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BitVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Self { rows: rows.len(), cols, data: rows }
    }

    /// Builds a matrix from a column list.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for r in col.ones() {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| BitVec::from_indices(cols, (0..cols).filter(|&c| r[c] != 0))).collect();
        Self { rows: rows.len(), cols, data }
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

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r].set(c, v);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn columns(&self) -> Vec<BitVec> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> F2Matrix {
        F2Matrix::from_rows(self.rows, self.columns())
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut out = BitVec::zeros(other.cols);
                for k in row.ones() {
                    out.xor_assign(&other.data[k]);
                }
                out
            })
            .collect();
        F2Matrix { rows: self.rows, cols: other.cols, data }
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.data[r].dot(v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        row_reduce(self).rank
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct EchelonForm {
    pub reduced: F2Matrix,
    pub pivots: Vec<(usize, usize)>,
    pub rank: usize,
    /// Row operations applied: `reduced == transform * original`.
    pub transform: F2Matrix,
}

/// Reduced row-echelon form with the row transform recorded.
pub fn row_reduce(m: &F2Matrix) -> EchelonForm {
    let mut reduced = m.clone();
    let mut transform = F2Matrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..m.cols {
        if next_row == m.rows {
            break;
        }
        let Some(pr) = (next_row..m.rows).find(|&r| reduced.get(r, col)) else {
            continue;
        };
        reduced.data.swap(pr, next_row);
        transform.data.swap(pr, next_row);
        let (pivot_row, pivot_t) = (reduced.data[next_row].clone(), transform.data[next_row].clone());
        for r in 0..m.rows {
            if r != next_row && reduced.get(r, col) {
                reduced.data[r].xor_assign(&pivot_row);
                transform.data[r].xor_assign(&pivot_t);
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    EchelonForm { reduced, rank: pivots.len(), pivots, transform }
}

/// Column reduction of a list of vectors (the `R = D V` decomposition).
///
/// `reduced[c]` is column `c` after adding earlier columns; nonzero reduced
/// columns have distinct pivots (lowest set bit) and span the column space.
/// `combos[c]` records which original columns were summed.
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    pub reduced: Vec<BitVec>,
    pub combos: Vec<BitVec>,
}

impl ColumnReduction {
    pub fn new(columns: &[BitVec]) -> Self {
        let n = columns.len();
        let mut reduced: Vec<BitVec> = columns.to_vec();
        let mut combos: Vec<BitVec> = (0..n).map(|c| BitVec::unit(n, c)).collect();
        let mut owner: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        for c in 0..n {
            while let Some(p) = reduced[c].first_one() {
                match owner.get(&p) {
                    Some(&o) => {
                        let (rc, cc) = (reduced[o].clone(), combos[o].clone());
                        reduced[c].xor_assign(&rc);
                        combos[c].xor_assign(&cc);
                    }
                    None => {
                        owner.insert(p, c);
                        break;
                    }
                }
            }
        }
        Self { reduced, combos }
    }

    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_zero()).count()
    }

    /// Basis of the null space: combinations of columns summing to zero.
    pub fn kernel(&self) -> Vec<BitVec> {
        self.reduced.iter().zip(&self.combos).filter(|(r, _)| r.is_zero()).map(|(_, v)| v.clone()).collect()
    }

    pub fn image(&self) -> Vec<BitVec> {
        self.reduced.iter().filter(|c| !c.is_zero()).cloned().collect()
    }
}

/// Incrementally built basis of a subspace, kept fully reduced: each basis
/// vector owns one pivot bit that no other basis vector has set.
#[derive(Clone, Debug, Default)]
pub struct SpanBasis {
    dim: usize,
    vectors: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        Self { dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut b = Self::new(dim);
        for v in vs {
            b.insert(v.clone());
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` modulo the span; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(b);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.dim);
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for (b, _) in self.vectors.iter_mut().zip(&self.pivots) {
            if b.get(p) {
                b.xor_assign(&r);
            }
        }
        self.vectors.push(r);
        self.pivots.push(p);
        true
    }

    pub fn vectors(&self) -> &[BitVec] {
        &self.vectors
    }
}

/// Reduced basis where each vector carries a coordinate tag, used to express
/// cycles in terms of chosen homology representatives.
#[derive(Clone, Debug)]
pub struct TaggedBasis {
    vectors: Vec<(BitVec, BitVec)>,
    pivots: Vec<usize>,
    tag_len: usize,
}

impl TaggedBasis {
    pub fn new(tag_len: usize) -> Self {
        Self { vectors: Vec::new(), pivots: Vec::new(), tag_len }
    }

    pub fn tag_len(&self) -> usize {
        self.tag_len
    }

    /// Returns the reduced remainder and accumulated tag.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut out = v.clone();
        let mut tag = BitVec::zeros(self.tag_len);
        for ((b, t), &p) in self.vectors.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(b);
                tag.xor_assign(t);
            }
        }
        (out, tag)
    }

    pub fn insert(&mut self, v: BitVec, tag: BitVec) -> bool {
        let (r, acc) = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        let mut t = tag;
        t.xor_assign(&acc);
        self.vectors.push((r, t));
        self.pivots.push(p);
        true
    }
}
