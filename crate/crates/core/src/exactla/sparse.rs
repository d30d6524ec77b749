//! Sparse vectors and column-major sparse matrices over [`Scalar`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Scalar;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, Scalar::ONE)],
        }
    }

    /// Builds a vector from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(mut entries: Vec<(usize, Scalar)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += &v,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((i, v));
                }
            }
        }
        if matches!(out.last(), Some(l) if l.1.is_zero()) {
            out.pop();
        }
        Self { entries: out }
    }

    /// Builds from entries already sorted by index with no duplicates or zeros.
    pub fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero()));
        Self { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::ZERO; len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Scalar::ZERO,
        }
    }

    /// Largest index carrying a nonzero entry.
    pub fn last_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn last(&self) -> Option<&(usize, Scalar)> {
        self.entries.last()
    }

    pub fn max_index_bound(&self) -> usize {
        self.entries.last().map_or(0, |e| e.0 + 1)
    }

    pub fn scale(&mut self, c: &Scalar) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for e in &mut self.entries {
            e.1 *= c;
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Scalar, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.entries = other.entries.iter().map(|(i, v)| (*i, v * c)).collect();
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = core::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        out.push(a.next().unwrap());
                    } else if x.0 > y.0 {
                        let (i, v) = b.next().unwrap();
                        out.push((*i, v * c));
                    } else {
                        let (i, mut v) = a.next().unwrap();
                        let (_, w) = b.next().unwrap();
                        v += &(w * c);
                        if !v.is_zero() {
                            out.push((i, v));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (i, v) = b.next().unwrap();
                    out.push((*i, v * c));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(&Scalar::ONE, other);
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(&-Scalar::ONE, other);
        out
    }

    pub fn neg(&self) -> SparseVec {
        self.scaled(&-Scalar::ONE)
    }

    /// Re-indexes entries through `f`; entries mapped to `None` are dropped.
    pub fn reindex(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, v)| f(*i).map(|j| (j, v.clone())))
                .collect(),
        )
    }

    /// Shifts every index up by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (i + offset, v.clone()))
                .collect(),
        }
    }

    pub fn push_unchecked(&mut self, i: usize, v: Scalar) {
        debug_assert!(self.entries.last().is_none_or(|l| l.0 < i));
        if !v.is_zero() {
            self.entries.push((i, v));
        }
    }
}

/// A column-major sparse matrix with fixed dimensions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn scalar_identity(n: usize, c: &Scalar) -> Self {
        Self {
            rows: n,
            cols: (0..n)
                .map(|i| {
                    let mut v = SparseVec::new();
                    v.push_unchecked(i, c.clone());
                    v
                })
                .collect(),
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index_bound() <= rows));
        Self { rows, cols }
    }

    pub fn from_triplets(
        rows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut per_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); ncols];
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < ncols,
                "triplet ({r},{c}) outside {rows}x{ncols}"
            );
            per_col[c].push((r, v));
        }
        Self {
            rows,
            cols: per_col.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    /// Builds from row-major dense data.
    pub fn from_dense_rows(data: &[Vec<Scalar>]) -> Self {
        let rows = data.len();
        let ncols = data.first().map_or(0, |r| r.len());
        Self::from_triplets(
            rows,
            ncols,
            data.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), ncols, "ragged dense matrix");
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(c, v)| (r, c, v.clone()))
            }),
        )
    }

    pub fn from_i64_rows(data: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> = data
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
            .collect();
        if dense.is_empty() {
            return Self::zeros(0, 0);
        }
        Self::from_dense_rows(&dense)
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::ZERO; self.ncols()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col.iter() {
                out[r][c] = v.clone();
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols.len())
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.cols[c].get(r)
    }

    pub fn set_col(&mut self, j: usize, v: SparseVec) {
        debug_assert!(v.max_index_bound() <= self.rows);
        self.cols[j] = v;
    }

    pub fn push_col(&mut self, v: SparseVec) {
        debug_assert!(v.max_index_bound() <= self.rows);
        self.cols.push(v);
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.ncols()
            && self
                .cols
                .iter()
                .enumerate()
                .all(|(j, c)| c.nnz() == 1 && c.entries()[0].0 == j && c.entries()[0].1.is_one())
    }

    /// Iterates nonzero entries as `(row, col, value)`.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (r, c, v)))
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (k, xv) in x.iter() {
            for (r, v) in self.cols[k].iter() {
                terms.push((r, v * xv));
            }
        }
        SparseVec::from_entries(terms)
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            self.ncols(),
            rhs.rows,
            "shape mismatch {:?} * {:?}",
            self.shape(),
            rhs.shape()
        );
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.axpy(&Scalar::ONE, rhs)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.axpy(&-Scalar::ONE, rhs)
    }

    /// `self + c * rhs`
    pub fn axpy(&self, c: &Scalar, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        SparseMatrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&rhs.cols)
                .map(|(a, b)| {
                    let mut a = a.clone();
                    a.axpy(c, b);
                    a
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseMatrix {
        self.scale(&-Scalar::ONE)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col.iter() {
                per_row[r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.ncols(),
            cols: per_row.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut cols = self.cols.clone();
        cols.extend(rhs.cols.iter().cloned());
        SparseMatrix {
            rows: self.rows,
            cols,
        }
    }

    /// Vertical concatenation `[self ; rhs]`.
    pub fn vstack(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), rhs.ncols());
        SparseMatrix {
            rows: self.rows + rhs.rows,
            cols: self
                .cols
                .iter()
                .zip(&rhs.cols)
                .map(|(a, b)| {
                    let mut e = a.entries().to_vec();
                    e.extend(b.shifted(self.rows).into_entries());
                    SparseVec::from_sorted(e)
                })
                .collect(),
        }
    }

    pub fn block_diag(blocks: &[SparseMatrix]) -> SparseMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut cols = Vec::new();
        let mut off = 0;
        for b in blocks {
            cols.extend(b.cols.iter().map(|c| c.shifted(off)));
            off += b.rows;
        }
        SparseMatrix { rows, cols }
    }

    /// Keeps the listed rows (in the given order) and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (new, &old) in rows.iter().enumerate() {
            row_pos[old] = new;
        }
        SparseMatrix {
            rows: rows.len(),
            cols: cols
                .iter()
                .map(|&c| {
                    self.cols[c].reindex(|r| {
                        let p = row_pos[r];
                        (p != usize::MAX).then_some(p)
                    })
                })
                .collect(),
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: cols.iter().map(|&c| self.cols[c].clone()).collect(),
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        super::echelon::Echelon::from_vectors(self.rows, self.cols.iter().cloned()).rank()
    }

    pub fn pow(&self, k: usize) -> SparseMatrix {
        assert_eq!(self.rows, self.ncols());
        let mut out = SparseMatrix::identity(self.rows);
        for _ in 0..k {
            out = self.mul(&out);
        }
        out
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.ncols())?;
        if self.rows * self.ncols() <= 400 {
            for row in self.to_dense_rows() {
                write!(f, "  ")?;
                for v in row {
                    write!(f, "{v:>5} ")?;
                }
                writeln!(f)?;
            }
        } else {
            for (r, c, v) in self.triplets().take(50) {
                writeln!(f, "  ({r},{c}) = {v}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels_to_empty() {
        let mut a = SparseVec::from_entries(vec![(1, Scalar::from_int(2)), (3, Scalar::ONE)]);
        let b = a.clone();
        a.axpy(&-Scalar::ONE, &b);
        assert!(a.is_zero());
    }

    #[test]
    fn from_entries_merges_duplicates() {
        let v = SparseVec::from_entries(vec![
            (2, Scalar::ONE),
            (0, Scalar::from_int(3)),
            (2, -Scalar::ONE),
        ]);
        assert_eq!(v.entries(), &[(0, Scalar::from_int(3))]);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_i64_rows(&[&[1, 2], &[0, 1], &[3, 0]]);
        let b = SparseMatrix::from_i64_rows(&[&[1, 0, 1], &[1, 1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(
            ab,
            SparseMatrix::from_i64_rows(&[&[3, 2, 1], &[1, 1, 0], &[3, 0, 3]])
        );
        assert_eq!(ab.transpose().transpose(), ab);
        assert_eq!(b.transpose().mul(&a.transpose()), ab.transpose());
    }

    #[test]
    fn stacking() {
        let a = SparseMatrix::identity(2);
        let s = a.vstack(&a.scale(&Scalar::from_int(2)));
        assert_eq!(s.shape(), (4, 2));
        assert_eq!(s.get(3, 1), Scalar::from_int(2));
        let d = SparseMatrix::block_diag(&[a.clone(), SparseMatrix::zeros(1, 1)]);
        assert_eq!(d.shape(), (3, 3));
        assert_eq!(d.rank(), 2);
    }
}
