use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Algebra, AlgebraError, AlgebraMap};
use crate::exactla::{Scalar, SparseMatrix, SparseVec, Subspace};

/// A two-sided ideal, stored as a subspace of its parent algebra.
#[derive(Clone, Debug)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    pub fn zero(a: &Algebra) -> Self {
        Self {
            space: Subspace::zero(a.dim()),
        }
    }

    pub fn whole(a: &Algebra) -> Self {
        Self {
            space: Subspace::full(a.dim()),
        }
    }

    /// The span of `vectors`, which must already be closed under two-sided multiplication.
    pub fn from_vectors(
        a: &Algebra,
        vectors: impl IntoIterator<Item = SparseVec>,
    ) -> Result<Self, AlgebraError> {
        let space = Subspace::spanned_by(a.dim(), vectors);
        for v in space.basis_vectors() {
            for i in 0..a.dim() {
                let e = SparseVec::unit(i);
                if !space.contains(&a.mul(&e, v)) || !space.contains(&a.mul(v, &e)) {
                    return Err(AlgebraError::NotIdeal);
                }
            }
        }
        Ok(Self { space })
    }

    /// The smallest two-sided ideal containing `gens`.
    pub fn generated_by(a: &Algebra, gens: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut space = Subspace::spanned_by(a.dim(), gens);
        let mut done = 0;
        while done < space.dim() {
            let v = space.basis_vectors()[done].clone();
            done += 1;
            let mut fresh = Vec::new();
            for i in 0..a.dim() {
                let e = SparseVec::unit(i);
                for w in [a.mul(&e, &v), a.mul(&v, &e)] {
                    if !space.contains(&w) {
                        fresh.push(w);
                    }
                }
            }
            if !fresh.is_empty() {
                let old = space.basis_vectors().to_vec();
                space = Subspace::spanned_by(a.dim(), old.into_iter().chain(fresh));
            }
        }
        Self { space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis_vectors(&self) -> &[SparseVec] {
        self.space.basis_vectors()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.space.contains(v)
    }

    pub fn is_zero(&self) -> bool {
        self.space.dim() == 0
    }

    /// Span of all products `x y` with `x ∈ self`, `y ∈ other`.
    pub fn product(&self, a: &Algebra, other: &Ideal) -> Ideal {
        let mut prods = Vec::new();
        for x in self.basis_vectors() {
            for y in other.basis_vectors() {
                prods.push(a.mul(x, y));
            }
        }
        Ideal {
            space: Subspace::spanned_by(a.dim(), prods),
        }
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal {
            space: self.space.intersection(&other.space),
        }
    }
}

/// `I^n`, with `I^0` the whole algebra.
pub fn ideal_power(a: &Algebra, i: &Ideal, n: usize) -> Ideal {
    let mut p = Ideal::whole(a);
    for _ in 0..n {
        p = p.product(a, i);
        if p.is_zero() {
            break;
        }
    }
    p
}

/// Smallest `n` with `I^n = 0`, searching up to `dim + 1`.
pub fn nilpotency_index(a: &Algebra, i: &Ideal) -> Option<usize> {
    let mut p = Ideal::whole(a);
    for n in 0..=a.dim() + 1 {
        if p.is_zero() {
            return Some(n);
        }
        p = p.product(a, i);
    }
    None
}

/// `ℚ[x]/(x^n)` with basis `1, x, …, x^{n−1}`, and the ideal `(x)`.
pub fn truncated_polynomial(n: usize) -> Result<(Algebra, Ideal), AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::InvalidArgument(
            "truncation degree must be at least 1",
        ));
    }
    let labels: Vec<String> = (0..n)
        .map(|k| match k {
            0 => String::from("1"),
            1 => String::from("x"),
            _ => format!("x^{k}"),
        })
        .collect();
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i + j < n {
                        SparseVec::unit(i + j)
                    } else {
                        SparseVec::new()
                    }
                })
                .collect()
        })
        .collect();
    let a = Algebra::new(labels, table, SparseVec::unit(0))?;
    let ideal = Ideal::from_vectors(&a, (1..n).map(SparseVec::unit))?;
    Ok((a, ideal))
}

/// `A/I` on the basis of unit vectors complementary to `I`, with the projection.
pub fn quotient_by_ideal(a: &Algebra, i: &Ideal) -> (Algebra, AlgebraMap) {
    let keep = i.space().complement_indices();
    let pos = |k: usize| keep.iter().position(|&x| x == k);
    let proj_vec = |v: &SparseVec| i.space().echelon().reduce_untagged(v.clone()).reindex(pos);
    let n = a.dim();
    let proj = SparseMatrix::from_columns(
        keep.len(),
        (0..n).map(|k| proj_vec(&SparseVec::unit(k))).collect(),
    );
    let table = keep
        .iter()
        .map(|&x| keep.iter().map(|&y| proj_vec(a.mul_basis(x, y))).collect())
        .collect();
    let labels = keep.iter().map(|&k| a.labels()[k].clone()).collect();
    let q = Algebra::from_table(labels, table, proj_vec(a.unit())).expect("quotient table shape");
    (q, AlgebraMap { matrix: proj })
}

/// A basis of `A` compatible with the powers of a nilpotent ideal: the
/// vectors of level `≥ n` span `I^n`.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    /// Columns are the basis vectors in the original coordinates, sorted by level.
    pub change: SparseMatrix,
    pub levels: Vec<usize>,
    /// Smallest `n` with `I^n = 0`.
    pub nilpotency: usize,
}

pub fn adapted_basis(a: &Algebra, i: &Ideal) -> Result<AdaptedBasis, AlgebraError> {
    let n = nilpotency_index(a, i).ok_or(AlgebraError::NotNilpotent)?;
    let powers: Vec<Ideal> = (0..=n).map(|k| ideal_power(a, i, k)).collect();
    // collect from the deepest power upward so each level extends the next
    let mut chosen: Vec<(usize, SparseVec)> = Vec::new();
    let mut span = Subspace::zero(a.dim());
    for level in (0..n).rev() {
        for v in powers[level].basis_vectors() {
            if !span.contains(v) {
                span = span.sum(&Subspace::spanned_by(a.dim(), [v.clone()]));
                chosen.push((level, v.clone()));
            }
        }
    }
    chosen.reverse();
    chosen.sort_by_key(|c| c.0);
    let levels = chosen.iter().map(|c| c.0).collect();
    let change = SparseMatrix::from_columns(a.dim(), chosen.into_iter().map(|c| c.1).collect());
    Ok(AdaptedBasis {
        change,
        levels,
        nilpotency: n,
    })
}

/// An algebra with a homogeneous basis: `degrees[b]` is the degree of basis
/// element `b` and multiplication adds degrees.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub algebra: Algebra,
    pub degrees: Vec<usize>,
}

impl GradedAlgebra {
    pub fn new(algebra: Algebra, degrees: Vec<usize>) -> Result<Self, AlgebraError> {
        let g = Self { algebra, degrees };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let a = &self.algebra;
        if self.degrees.len() != a.dim() {
            return Err(AlgebraError::Shape("one degree per basis element"));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let d = self.degrees[i] + self.degrees[j];
                if a.mul_basis(i, j).iter().any(|(k, _)| self.degrees[k] != d) {
                    return Err(AlgebraError::NotGraded(i, j));
                }
            }
        }
        if a.unit().iter().any(|(k, _)| self.degrees[k] != 0) {
            return Err(AlgebraError::NotGraded(0, 0));
        }
        Ok(())
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// The degree-`n` pieces as subspaces.
    pub fn pieces(&self) -> Vec<Subspace> {
        let dim = self.algebra.dim();
        (0..=self.top_degree())
            .map(|n| {
                Subspace::spanned_by(
                    dim,
                    (0..dim)
                        .filter(|&b| self.degrees[b] == n)
                        .map(SparseVec::unit),
                )
            })
            .collect()
    }

    /// The ideal of positive degree.
    pub fn positive_ideal(&self) -> Ideal {
        let dim = self.algebra.dim();
        Ideal::from_vectors(
            &self.algebra,
            (0..dim)
                .filter(|&b| self.degrees[b] > 0)
                .map(SparseVec::unit),
        )
        .expect("positive part of a graded algebra is an ideal")
    }
}

/// `gr(A, I) = ⊕ I^j / I^{j+1}` on an adapted basis.
pub fn associated_graded(a: &Algebra, i: &Ideal) -> Result<GradedAlgebra, AlgebraError> {
    let ab = adapted_basis(a, i)?;
    let n = a.dim();
    let basis = Subspace::column_space(&ab.change);
    let mut table = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let target = ab.levels[x] + ab.levels[y];
            let prod = a.mul(ab.change.col(x), ab.change.col(y));
            let coords = basis.coordinates(&prod).expect("adapted basis spans");
            let kept: Vec<(usize, Scalar)> = coords
                .into_entries()
                .into_iter()
                .filter(|(k, _)| ab.levels[*k] == target)
                .collect();
            row.push(SparseVec::from_sorted(kept));
        }
        table.push(row);
    }
    let unit = basis.coordinates(a.unit()).expect("adapted basis spans");
    let unit = SparseVec::from_sorted(
        unit.into_entries()
            .into_iter()
            .filter(|(k, _)| ab.levels[*k] == 0)
            .collect(),
    );
    let labels = adapted_labels(a, &ab);
    let g = Algebra::new(labels, table, unit)?;
    GradedAlgebra::new(g, ab.levels)
}

pub(crate) fn adapted_labels(a: &Algebra, ab: &AdaptedBasis) -> Vec<String> {
    ab.change
        .columns()
        .iter()
        .enumerate()
        .map(|(k, v)| match v.entries() {
            [(i, c)] if c.is_one() => a.labels()[*i].clone(),
            _ => format!("b{k}"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomials() {
        let (a, i) = truncated_polynomial(1).unwrap();
        assert_eq!((a.dim(), i.dim()), (1, 0));
        let (a, i) = truncated_polynomial(3).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(ideal_power(&a, &i, 3).dim(), 0);
        let sq = ideal_power(&a, &i, 2);
        assert_eq!(sq.dim(), 1);
        assert!(sq.contains(&SparseVec::unit(2)));
        assert!(truncated_polynomial(0).is_err());
        assert_eq!(ideal_power(&a, &i, 0).dim(), 3);
    }

    #[test]
    fn powers_multiply() {
        let (a, i) = truncated_polynomial(5).unwrap();
        for p in 0..5 {
            for q in 0..5 {
                let prod = ideal_power(&a, &i, p).product(&a, &ideal_power(&a, &i, q));
                let big = ideal_power(&a, &i, p + q);
                assert!(big.space().contains_subspace(prod.space()));
            }
        }
    }

    #[test]
    fn quotients() {
        let (a, i) = truncated_polynomial(2).unwrap();
        let (q, p) = quotient_by_ideal(&a, &i);
        assert_eq!(q.dim(), 1);
        assert!(AlgebraMap::new(&a, &q, p.matrix).is_ok());

        let (q, p) = quotient_by_ideal(&a, &Ideal::zero(&a));
        assert_eq!(q, a);
        assert!(p.matrix.is_identity());

        let ut = Algebra::upper_triangular(2);
        let strict = Ideal::generated_by(&ut, [SparseVec::unit(1)]);
        assert_eq!(strict.dim(), 1);
        let (q, p) = quotient_by_ideal(&ut, &strict);
        assert_eq!(q.dim(), 2);
        assert!(q.is_commutative());
        assert!(AlgebraMap::new(&ut, &q, p.matrix).is_ok());
        // ℚ × ℚ: two orthogonal idempotents summing to 1
        assert_eq!(*q.mul_basis(0, 1), SparseVec::new());
        assert_eq!(*q.mul_basis(0, 0), SparseVec::unit(0));
    }

    #[test]
    fn generated_ideal_closes() {
        let ut = Algebra::upper_triangular(2);
        let i = Ideal::generated_by(&ut, [SparseVec::unit(0)]);
        assert_eq!(i.dim(), 2); // E11 and E12
    }

    #[test]
    fn graded_pieces() {
        let (a, i) = truncated_polynomial(3).unwrap();
        let g = associated_graded(&a, &i).unwrap();
        let dims: Vec<usize> = g.pieces().iter().map(Subspace::dim).collect();
        assert_eq!(dims, [1, 1, 1]);
        let (a, _) = truncated_polynomial(3).unwrap();
        let g = associated_graded(&a, &Ideal::zero(&a)).unwrap();
        assert_eq!(g.pieces().len(), 1);
        assert_eq!(g.pieces()[0].dim(), 3);
        let (d, i) = truncated_polynomial(2).unwrap();
        let dims: Vec<usize> = associated_graded(&d, &i)
            .unwrap()
            .pieces()
            .iter()
            .map(Subspace::dim)
            .collect();
        assert_eq!(dims, [1, 1]);
    }

    #[test]
    fn non_nilpotent_rejected() {
        let ut = Algebra::upper_triangular(2);
        let i = Ideal::generated_by(&ut, [SparseVec::unit(0)]);
        assert!(matches!(
            associated_graded(&ut, &i),
            Err(AlgebraError::NotNilpotent)
        ));
    }
}
