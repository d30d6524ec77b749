use alloc::vec::Vec;

use super::echelon::{reduce_columns, Echelon, Tagging};
use super::{Scalar, SparseMatrix, SparseVec};

/// A linear subspace of `ℚ^n`, stored by an explicit basis of independent columns.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: SparseMatrix,
    // reduced copies of the basis, tagged with coordinates in `basis`
    ech: Echelon,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            basis: SparseMatrix::zeros(ambient, 0),
            ech: Echelon::new(ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::spanned_by(ambient, (0..ambient).map(SparseVec::unit))
    }

    /// Span of the given vectors; dependent vectors are discarded.
    pub fn spanned_by(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut ech = Echelon::new(ambient);
        let mut basis = SparseMatrix::zeros(ambient, 0);
        for v in vectors {
            let k = basis.ncols();
            if ech.insert_tagged(v.clone(), SparseVec::unit(k)).is_ok() {
                basis.push_col(v);
            }
        }
        Self { basis, ech }
    }

    pub fn column_space(m: &SparseMatrix) -> Self {
        Self::spanned_by(m.nrows(), m.columns().iter().cloned())
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &SparseMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> &[SparseVec] {
        self.basis.columns()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.ech.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Coordinates of `v` with respect to [`Self::basis`], if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let (res, tag) = self.ech.reduce(v.clone(), SparseVec::new());
        res.is_zero().then(|| tag.neg())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        Self::spanned_by(
            self.ambient_dim(),
            self.basis_vectors()
                .iter()
                .chain(other.basis_vectors())
                .cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        let stacked = self.basis.hstack(&other.basis.neg());
        let red = reduce_columns(&stacked, None, Tagging::Identity);
        let k = self.dim();
        let vecs = red.dependent.into_iter().map(|(_, kv)| {
            let alpha = kv.reindex(|i| (i < k).then_some(i));
            self.basis.mul_vec(&alpha)
        });
        Self::spanned_by(self.ambient_dim(), vecs)
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &SparseMatrix) -> Subspace {
        assert_eq!(m.ncols(), self.ambient_dim());
        Self::spanned_by(m.nrows(), self.basis_vectors().iter().map(|v| m.mul_vec(v)))
    }

    /// Standard unit vectors at these indices span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        self.ech.complement_indices()
    }
}

/// Rank, kernel and image of a matrix.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub rank: usize,
    pub kernel: Subspace,
    pub image: Subspace,
}

pub fn decompose(m: &SparseMatrix) -> Decomposition {
    let red = reduce_columns(m, None, Tagging::Identity);
    let rank = red.image.rank();
    let kernel = Subspace::spanned_by(m.ncols(), red.dependent.into_iter().map(|(_, k)| k));
    let image = Subspace::spanned_by(m.nrows(), red.image.vectors().iter().cloned());
    Decomposition {
        rank,
        kernel,
        image,
    }
}

/// Checks `m` against an explicit scalar multiple of the identity.
pub fn is_scalar_identity(m: &SparseMatrix, c: &Scalar) -> bool {
    m.nrows() == m.ncols() && *m == SparseMatrix::scalar_identity(m.nrows(), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn decompose_examples() {
        let d = decompose(&SparseMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]));
        assert_eq!((d.rank, d.kernel.dim(), d.image.dim()), (1, 1, 1));
        let d = decompose(&SparseMatrix::identity(3));
        assert_eq!((d.rank, d.kernel.dim()), (3, 0));
        let d = decompose(&SparseMatrix::zeros(2, 5));
        assert_eq!((d.rank, d.kernel.dim(), d.image.dim()), (0, 5, 0));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::spanned_by(3, vec![SparseVec::unit(0), SparseVec::unit(1)]);
        let b = Subspace::spanned_by(3, vec![SparseVec::unit(1), SparseVec::unit(2)]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&SparseVec::unit(1)));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn coordinates_round_trip() {
        let v1 = SparseVec::from_entries(vec![(0, Scalar::ONE), (1, Scalar::from_int(2))]);
        let v2 = SparseVec::from_entries(vec![(1, Scalar::ONE), (2, Scalar::ONE)]);
        let s = Subspace::spanned_by(3, vec![v1.clone(), v2.clone()]);
        let mut w = v1.scaled(&Scalar::from_int(3));
        w.axpy(&Scalar::new(-1, 2).unwrap(), &v2);
        let c = s.coordinates(&w).unwrap();
        assert_eq!(s.basis().mul_vec(&c), w);
        assert!(s.coordinates(&SparseVec::unit(2)).is_none());
    }
}
