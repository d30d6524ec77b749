use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use super::{multiplicativity_failure, Algebra, AlgebraError, AlgebraMap, Ideal};
use crate::exactla::{decompose, SparseMatrix, SparseVec, Subspace};

/// A pullback square `A⁰ = A¹ ×_{A¹²} A²` of split surjections.
///
/// The corner is stored on the basis `I(0) ∪ I(1) ∪ I(2)`: first the pairs
/// `(s¹z, s²z)` for `z` running over the basis of `A¹²`, then `(k, 0)` for `k`
/// in a basis of `ker f¹`, then `(0, k)` for `k` in a basis of `ker f²`.
#[derive(Clone, Debug)]
pub struct SplitSquare {
    pub corner: Algebra,
    pub a1: Algebra,
    pub a2: Algebra,
    pub a12: Algebra,
    pub f1: AlgebraMap,
    pub f2: AlgebraMap,
    pub s1: SparseMatrix,
    pub s2: SparseMatrix,
    /// Projections `A⁰ → A¹` and `A⁰ → A²`.
    pub p1: AlgebraMap,
    pub p2: AlgebraMap,
    /// `I(1) = ker(A⁰ → A²) ≅ ker f¹` and `I(2) = ker(A⁰ → A¹) ≅ ker f²`.
    pub ideal1: Ideal,
    pub ideal2: Ideal,
    /// Basis index ranges of `I(0)`, `I(1)`, `I(2)` inside the corner.
    pub ranges: [Range<usize>; 3],
    /// Whether both sections are unital algebra maps, making `I(0)` a subalgebra.
    pub multiplicative_sections: bool,
}

impl SplitSquare {
    /// Label of a corner basis element: 0, 1 or 2.
    pub fn piece_of(&self, b: usize) -> u8 {
        if self.ranges[0].contains(&b) {
            0
        } else if self.ranges[1].contains(&b) {
            1
        } else {
            2
        }
    }

    pub fn piece_labels(&self) -> Vec<u8> {
        (0..self.corner.dim()).map(|b| self.piece_of(b)).collect()
    }
}

/// Assembles the fiber product of `f1: A¹ → A¹²` and `f2: A² → A¹²` with
/// linear sections `s1`, `s2`.
pub fn split_square(
    a1: &Algebra,
    a2: &Algebra,
    a12: &Algebra,
    f1: &AlgebraMap,
    f2: &AlgebraMap,
    s1: &SparseMatrix,
    s2: &SparseMatrix,
) -> Result<SplitSquare, AlgebraError> {
    let f1 = AlgebraMap::new(a1, a12, f1.matrix.clone())?;
    let f2 = AlgebraMap::new(a2, a12, f2.matrix.clone())?;
    if !f1.is_surjective() || !f2.is_surjective() {
        return Err(AlgebraError::NotSurjective);
    }
    let (n1, n2, n12) = (a1.dim(), a2.dim(), a12.dim());
    if s1.shape() != (n1, n12) || s2.shape() != (n2, n12) {
        return Err(AlgebraError::Shape("sections must map A12 into A1 and A2"));
    }
    if !f1.matrix.mul(s1).is_identity() || !f2.matrix.mul(s2).is_identity() {
        return Err(AlgebraError::BadSection);
    }
    let k1 = decompose(&f1.matrix).kernel;
    let k2 = decompose(&f2.matrix).kernel;

    let mut basis: Vec<SparseVec> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for z in 0..n12 {
        let mut v = s1.col(z).clone();
        v.axpy(&crate::exactla::Scalar::ONE, &s2.col(z).shifted(n1));
        basis.push(v);
        labels.push(format!("({})", a12.labels()[z]));
    }
    for (k, v) in k1.basis_vectors().iter().enumerate() {
        basis.push(v.clone());
        labels.push(single_label(a1, v).unwrap_or_else(|| format!("k1_{k}")));
    }
    for (k, v) in k2.basis_vectors().iter().enumerate() {
        basis.push(v.shifted(n1));
        labels.push(format!(
            "{}'",
            single_label(a2, v).unwrap_or_else(|| format!("k2_{k}"))
        ));
    }
    let n0 = basis.len();
    let span = Subspace::spanned_by(n1 + n2, basis.iter().cloned());
    debug_assert_eq!(span.dim(), n0);

    let product = a1.product(a2);
    let mut table = Vec::with_capacity(n0);
    for x in &basis {
        let mut row = Vec::with_capacity(n0);
        for y in &basis {
            let c = span
                .coordinates(&product.mul(x, y))
                .ok_or(AlgebraError::BadSection)?;
            row.push(c);
        }
        table.push(row);
    }
    let unit = span
        .coordinates(product.unit())
        .ok_or(AlgebraError::BadSection)?;
    let corner = Algebra::new(labels, table, unit)?;

    let take = |lo: usize, len: usize| {
        SparseMatrix::from_columns(
            len,
            basis
                .iter()
                .map(|v| v.reindex(|i| (i >= lo && i < lo + len).then(|| i - lo)))
                .collect(),
        )
    };
    let p1 = AlgebraMap::new(&corner, a1, take(0, n1))?;
    let p2 = AlgebraMap::new(&corner, a2, take(n1, n2))?;

    let r0 = 0..n12;
    let r1 = n12..n12 + k1.dim();
    let r2 = n12 + k1.dim()..n0;
    let ideal1 = Ideal::from_vectors(&corner, r1.clone().map(SparseVec::unit))?;
    let ideal2 = Ideal::from_vectors(&corner, r2.clone().map(SparseVec::unit))?;
    if !ideal1.intersection(&ideal2).is_zero() || !ideal1.product(&corner, &ideal2).is_zero() {
        return Err(AlgebraError::BadSection);
    }
    let multiplicative_sections = multiplicativity_failure(a12, a1, s1).is_none()
        && multiplicativity_failure(a12, a2, s2).is_none()
        && s1.mul_vec(a12.unit()) == *a1.unit()
        && s2.mul_vec(a12.unit()) == *a2.unit();

    Ok(SplitSquare {
        corner,
        a1: a1.clone(),
        a2: a2.clone(),
        a12: a12.clone(),
        f1,
        f2,
        s1: s1.clone(),
        s2: s2.clone(),
        p1,
        p2,
        ideal1,
        ideal2,
        ranges: [r0, r1, r2],
        multiplicative_sections,
    })
}

fn single_label(a: &Algebra, v: &SparseVec) -> Option<String> {
    match v.entries() {
        [(i, c)] if c.is_one() => Some(a.labels()[*i].clone()),
        _ => None,
    }
}
