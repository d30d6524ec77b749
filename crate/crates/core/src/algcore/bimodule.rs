use alloc::format;
use alloc::vec::Vec;

use super::{Algebra, AlgebraError, Ideal};
use crate::exactla::{Scalar, SparseMatrix, SparseVec};

/// A finite-dimensional bimodule; `left[i]` and `right[i]` are the matrices of
/// `m ↦ e_i m` and `m ↦ m e_i`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    dim: usize,
    left: Vec<SparseMatrix>,
    right: Vec<SparseMatrix>,
}

impl Bimodule {
    /// Builds and validates against `a`.
    pub fn new(
        a: &Algebra,
        dim: usize,
        left: Vec<SparseMatrix>,
        right: Vec<SparseMatrix>,
    ) -> Result<Self, AlgebraError> {
        let m = Self { dim, left, right };
        m.validate(a)?;
        Ok(m)
    }

    /// `A` acting on itself from both sides.
    pub fn regular(a: &Algebra) -> Self {
        let n = a.dim();
        Self {
            dim: n,
            left: (0..n).map(|i| a.left_mult(&SparseVec::unit(i))).collect(),
            right: (0..n).map(|i| a.right_mult(&SparseVec::unit(i))).collect(),
        }
    }

    /// `ℚ^dim` on which `e_i` acts on both sides by the scalar `aug(e_i)`,
    /// for an algebra map `aug: A → ℚ` given as a row of values.
    pub fn via_augmentation(a: &Algebra, aug: &[Scalar], dim: usize) -> Result<Self, AlgebraError> {
        if aug.len() != a.dim() {
            return Err(AlgebraError::Shape("augmentation has the wrong length"));
        }
        let mats: Vec<SparseMatrix> = aug
            .iter()
            .map(|c| SparseMatrix::scalar_identity(dim, c))
            .collect();
        Self::new(a, dim, mats.clone(), mats)
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Bimodule {
        Bimodule {
            dim: self.dim + other.dim,
            left: self
                .left
                .iter()
                .zip(&other.left)
                .map(|(x, y)| SparseMatrix::block_diag(&[x.clone(), y.clone()]))
                .collect(),
            right: self
                .right
                .iter()
                .zip(&other.right)
                .map(|(x, y)| SparseMatrix::block_diag(&[x.clone(), y.clone()]))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self, i: usize) -> &SparseMatrix {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &SparseMatrix {
        &self.right[i]
    }

    /// Actions are associative, commute with each other, and the unit acts trivially.
    pub fn validate(&self, a: &Algebra) -> Result<(), AlgebraError> {
        let n = a.dim();
        if self.left.len() != n || self.right.len() != n {
            return Err(AlgebraError::Shape(
                "one action matrix per algebra basis element",
            ));
        }
        if self
            .left
            .iter()
            .chain(&self.right)
            .any(|m| m.shape() != (self.dim, self.dim))
        {
            return Err(AlgebraError::Shape("action matrices must be dim x dim"));
        }
        let act = |mats: &[SparseMatrix], x: &SparseVec| {
            let mut acc = SparseMatrix::zeros(self.dim, self.dim);
            for (i, c) in x.iter() {
                acc = acc.axpy(c, &mats[i]);
            }
            acc
        };
        for i in 0..n {
            for j in 0..n {
                let ij = a.mul_basis(i, j);
                if act(&self.left, ij) != self.left[i].mul(&self.left[j]) {
                    return Err(AlgebraError::BadAction(format!(
                        "left action not associative at ({i}, {j})"
                    )));
                }
                if act(&self.right, ij) != self.right[j].mul(&self.right[i]) {
                    return Err(AlgebraError::BadAction(format!(
                        "right action not associative at ({i}, {j})"
                    )));
                }
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    return Err(AlgebraError::BadAction(format!(
                        "actions do not commute at ({i}, {j})"
                    )));
                }
            }
        }
        let id = SparseMatrix::identity(self.dim);
        if act(&self.left, a.unit()) != id || act(&self.right, a.unit()) != id {
            return Err(AlgebraError::BadAction(
                "unit does not act as the identity".into(),
            ));
        }
        Ok(())
    }
}

/// `B ⋉ M` on `B ⊕ M` with `(b, m)(b', m') = (bb', bm' + mb')`, together
/// with the square-zero ideal `M`.
pub fn square_zero_extension(b: &Algebra, m: &Bimodule) -> Result<(Algebra, Ideal), AlgebraError> {
    m.validate(b)?;
    let (nb, nm) = (b.dim(), m.dim());
    let n = nb + nm;
    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let v = match (i < nb, j < nb) {
                (true, true) => b.mul_basis(i, j).clone(),
                (true, false) => m.left(i).col(j - nb).shifted(nb),
                (false, true) => m.right(j).col(i - nb).shifted(nb),
                (false, false) => SparseVec::new(),
            };
            row.push(v);
        }
        table.push(row);
    }
    let mut labels = b.labels().to_vec();
    labels.extend((0..nm).map(|k| format!("m{k}")));
    let a = Algebra::new(labels, table, b.unit().clone())?;
    let ideal = Ideal::from_vectors(&a, (nb..n).map(SparseVec::unit))?;
    Ok((a, ideal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::{ideal_power, truncated_polynomial};

    #[test]
    fn dual_numbers_from_extension() {
        let q = Algebra::rationals();
        let m = Bimodule::via_augmentation(&q, &[Scalar::ONE], 1).unwrap();
        let (a, i) = square_zero_extension(&q, &m).unwrap();
        let (d, _) = truncated_polynomial(2).unwrap();
        assert_eq!(a.dim(), 2);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(a.mul_basis(x, y), d.mul_basis(x, y));
            }
        }
        assert_eq!(ideal_power(&a, &i, 2).dim(), 0);
    }

    #[test]
    fn two_dim_module_over_q() {
        let q = Algebra::rationals();
        let m = Bimodule::via_augmentation(&q, &[Scalar::ONE], 2).unwrap();
        let (a, i) = square_zero_extension(&q, &m).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(ideal_power(&a, &i, 2).dim(), 0);
    }

    #[test]
    fn regular_over_dual_numbers() {
        let (b, _) = truncated_polynomial(2).unwrap();
        let m = Bimodule::regular(&b);
        let (a, i) = square_zero_extension(&b, &m).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(ideal_power(&a, &i, 2).dim(), 0);
        // independent product check: (x, 0)(0, 1) = (0, x)
        assert_eq!(*a.mul_basis(1, 2), SparseVec::unit(3));
        assert_eq!(*a.mul_basis(2, 1), SparseVec::unit(3));
    }

    #[test]
    fn bad_action_rejected() {
        let q = Algebra::rationals();
        let two = SparseMatrix::scalar_identity(1, &Scalar::from_int(2));
        assert!(Bimodule::new(&q, 1, alloc::vec![two.clone()], alloc::vec![two]).is_err());
    }
}
