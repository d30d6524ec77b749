//! Incremental echelon bases.
//!
//! Vectors are kept with distinct *lows* (largest nonzero index) and leading
//! coefficient one. Every stored vector may carry a tag vector that records
//! the same linear combination in another coordinate space; reduction updates
//! the tag in lockstep, which is how kernels, solutions and homology classes
//! are read off.

use alloc::vec;
use alloc::vec::Vec;

use super::{SparseMatrix, SparseVec};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    pivot_of: Vec<usize>,
    vecs: Vec<SparseVec>,
    tags: Vec<SparseVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            pivot_of: vec![NONE; dim],
            vecs: Vec::new(),
            tags: Vec::new(),
        }
    }

    pub fn from_vectors(dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Self::new(dim);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vecs
    }

    pub fn tags(&self) -> &[SparseVec] {
        &self.tags
    }

    /// Drops all tags, keeping the basis.
    pub fn untagged(mut self) -> Self {
        for t in &mut self.tags {
            *t = SparseVec::new();
        }
        self
    }

    /// Whether some stored vector has its low at `row`.
    pub fn has_low(&self, row: usize) -> bool {
        self.pivot_of[row] != NONE
    }

    pub fn lows(&self) -> impl Iterator<Item = usize> + '_ {
        self.vecs.iter().map(|v| v.last_index().unwrap())
    }

    /// Returns `(v - Σ c_i p_i, tag - Σ c_i τ_i)` where the residual has no
    /// entry at any stored low.
    pub fn reduce(&self, mut v: SparseVec, mut tag: SparseVec) -> (SparseVec, SparseVec) {
        debug_assert!(v.max_index_bound() <= self.dim);
        let mut bound = usize::MAX;
        loop {
            let entries = v.entries();
            let end = entries.partition_point(|e| e.0 < bound);
            let hit = entries[..end]
                .iter()
                .rev()
                .find(|e| self.pivot_of[e.0] != NONE)
                .map(|e| (e.0, e.1.clone()));
            let Some((row, c)) = hit else { break };
            let slot = self.pivot_of[row];
            let neg = -c;
            v.axpy(&neg, &self.vecs[slot]);
            tag.axpy(&neg, &self.tags[slot]);
            bound = row;
        }
        (v, tag)
    }

    pub fn reduce_untagged(&self, v: SparseVec) -> SparseVec {
        self.reduce(v, SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_untagged(v.clone()).is_zero()
    }

    /// Inserts `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_tagged(v, SparseVec::new()).is_ok()
    }

    /// Inserts `v` with `tag`. On dependence returns the reduced tag, i.e. the
    /// tag combination that represents zero.
    pub fn insert_tagged(&mut self, v: SparseVec, tag: SparseVec) -> Result<usize, SparseVec> {
        let (res, tag) = self.reduce(v, tag);
        if res.is_zero() {
            return Err(tag);
        }
        Ok(self.push_reduced(res, tag))
    }

    /// Inserts a vector whose low is not yet a pivot without further reduction.
    pub fn insert_unreduced(&mut self, v: SparseVec, tag: SparseVec) -> usize {
        let low = v.last_index().expect("zero vector");
        assert!(self.pivot_of[low] == NONE, "low {low} already taken");
        self.push_reduced(v, tag)
    }

    fn push_reduced(&mut self, mut res: SparseVec, mut tag: SparseVec) -> usize {
        let (low, lead) = res.last().map(|e| (e.0, e.1.clone())).unwrap();
        if !lead.is_one() {
            let inv = lead.recip().unwrap();
            res.scale(&inv);
            tag.scale(&inv);
        }
        let slot = self.vecs.len();
        self.pivot_of[low] = slot;
        self.vecs.push(res);
        self.tags.push(tag);
        slot
    }

    /// Indices that are not lows; the corresponding unit vectors span a
    /// complement of this subspace.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.pivot_of[i] == NONE)
            .collect()
    }

    pub fn to_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.dim, self.vecs.clone())
    }
}

/// Result of reducing the columns of a matrix.
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    /// Echelon basis of the column space, tagged as requested.
    pub image: Echelon,
    /// For each column that reduced to zero: its index and reduced tag.
    pub dependent: Vec<(usize, SparseVec)>,
    /// Columns skipped because their index was a known low.
    pub cleared: Vec<usize>,
}

/// Tag supplied for each column during [`reduce_columns`].
pub enum Tagging<'a> {
    None,
    /// Tag column `j` with the unit vector `e_j`; dependent tags are kernel vectors.
    Identity,
    Custom(&'a dyn Fn(usize) -> SparseVec),
}

/// Column-reduces `m`. Columns whose index is a low of `clear` are skipped:
/// they are known to be dependent on earlier columns.
pub fn reduce_columns(
    m: &SparseMatrix,
    clear: Option<&Echelon>,
    tagging: Tagging<'_>,
) -> ColumnReduction {
    let mut image = Echelon::new(m.nrows());
    let mut dependent = Vec::new();
    let mut cleared = Vec::new();
    for j in 0..m.ncols() {
        if let Some(c) = clear {
            if c.has_low(j) {
                cleared.push(j);
                continue;
            }
        }
        let tag = match &tagging {
            Tagging::None => SparseVec::new(),
            Tagging::Identity => SparseVec::unit(j),
            Tagging::Custom(f) => f(j),
        };
        if let Err(t) = image.insert_tagged(m.col(j).clone(), tag) {
            dependent.push((j, t));
        }
    }
    ColumnReduction {
        image,
        dependent,
        cleared,
    }
}

/// Solves `m x = y` for some `x`, if a solution exists.
pub struct Solver {
    ech: Echelon,
    ncols: usize,
}

impl Solver {
    pub fn new(m: &SparseMatrix) -> Self {
        let r = reduce_columns(m, None, Tagging::Identity);
        Self {
            ech: r.image,
            ncols: m.ncols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(m: &SparseMatrix) -> Option<SparseMatrix> {
        let n = m.ncols();
        if m.nrows() != n {
            return None;
        }
        let s = Self::new(m);
        if s.rank() != n {
            return None;
        }
        let cols = (0..n)
            .map(|i| s.solve(&SparseVec::unit(i)))
            .collect::<Option<Vec<_>>>()?;
        Some(SparseMatrix::from_columns(n, cols))
    }

    pub fn solve(&self, y: &SparseVec) -> Option<SparseVec> {
        let (res, tag) = self.ech.reduce(y.clone(), SparseVec::new());
        if !res.is_zero() {
            return None;
        }
        let x = tag.neg();
        debug_assert!(x.max_index_bound() <= self.ncols);
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Scalar;

    #[test]
    fn inverse_round_trip() {
        let m = SparseMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = Solver::inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Solver::inverse(&SparseMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_recovers_preimage() {
        let m = SparseMatrix::from_i64_rows(&[&[1, 2, 0], &[0, 1, 1], &[1, 3, 1]]);
        let s = Solver::new(&m);
        assert_eq!(s.rank(), 2);
        let y = m.mul_vec(&SparseVec::from_entries(vec![
            (0, Scalar::ONE),
            (2, Scalar::from_int(5)),
        ]));
        let x = s.solve(&y).unwrap();
        assert_eq!(m.mul_vec(&x), y);
        assert!(s.solve(&SparseVec::unit(0)).is_none());
    }

    #[test]
    fn kernel_tags_are_kernel_vectors() {
        let m = SparseMatrix::from_i64_rows(&[&[1, 2, 3, 4], &[2, 4, 6, 8]]);
        let r = reduce_columns(&m, None, Tagging::Identity);
        assert_eq!(r.image.rank(), 1);
        assert_eq!(r.dependent.len(), 3);
        for (_, k) in &r.dependent {
            assert!(m.mul_vec(k).is_zero());
        }
    }
}
