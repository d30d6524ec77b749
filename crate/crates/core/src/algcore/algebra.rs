use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::AlgebraError;
use crate::exactla::{Scalar, SparseMatrix, SparseVec, Subspace};

/// A finite-dimensional unital associative ℚ-algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    // table[i * dim + j] = e_i · e_j
    table: Vec<SparseVec>,
    unit: SparseVec,
}

/// Outcome of [`validate_algebra`]; `None` fields mean the check passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub dim: usize,
    /// First basis triple `(i, j, k)` with `(e_i e_j) e_k ≠ e_i (e_j e_k)`.
    pub non_associative: Option<(usize, usize, usize)>,
    /// First basis element on which the unit fails to act as identity.
    pub unit_failure: Option<usize>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.non_associative.is_none() && self.unit_failure.is_none()
    }
}

impl Algebra {
    /// Builds an algebra from `table[i][j] = e_i e_j` without checking the axioms.
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<SparseVec>>,
        unit: SparseVec,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::Shape("structure table must be dim x dim"));
        }
        let flat: Vec<SparseVec> = table.into_iter().flatten().collect();
        if flat
            .iter()
            .chain(core::iter::once(&unit))
            .any(|v| v.max_index_bound() > n)
        {
            return Err(AlgebraError::Shape(
                "structure constant refers to a missing basis element",
            ));
        }
        Ok(Self {
            labels,
            table: flat,
            unit,
        })
    }

    /// Builds and validates.
    pub fn new(
        labels: Vec<String>,
        table: Vec<Vec<SparseVec>>,
        unit: SparseVec,
    ) -> Result<Self, AlgebraError> {
        let a = Self::from_table(labels, table, unit)?;
        a.check()?;
        Ok(a)
    }

    pub fn check(&self) -> Result<(), AlgebraError> {
        let r = validate_algebra(self);
        if let Some((i, j, k)) = r.non_associative {
            return Err(AlgebraError::NotAssociative(i, j, k));
        }
        if let Some(i) = r.unit_failure {
            return Err(AlgebraError::UnitFailure(i));
        }
        Ok(())
    }

    /// The field ℚ with basis `1`.
    pub fn rationals() -> Self {
        Self {
            labels: alloc::vec![String::from("1")],
            table: alloc::vec![SparseVec::unit(0)],
            unit: SparseVec::unit(0),
        }
    }

    /// Upper-triangular `n × n` matrices with basis `E_ij`, `i ≤ j`.
    pub fn upper_triangular(n: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                pairs.push((i, j));
            }
        }
        let idx = |p: (usize, usize)| pairs.iter().position(|&q| q == p).unwrap();
        let dim = pairs.len();
        let mut table = Vec::with_capacity(dim * dim);
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                table.push(if b == c {
                    SparseVec::unit(idx((a, d)))
                } else {
                    SparseVec::new()
                });
            }
        }
        let unit = SparseVec::from_entries((0..n).map(|i| (idx((i, i)), Scalar::ONE)).collect());
        Self {
            labels: pairs
                .iter()
                .map(|(i, j)| format!("E{}{}", i + 1, j + 1))
                .collect(),
            table,
            unit,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    /// `e_i · e_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for (k, c) in self.mul_basis(i, j).iter() {
                    terms.push((k, &ab * c));
                }
            }
        }
        SparseVec::from_entries(terms)
    }

    /// Matrix of `y ↦ x y`.
    pub fn left_mult(&self, x: &SparseVec) -> SparseMatrix {
        let n = self.dim();
        SparseMatrix::from_columns(
            n,
            (0..n).map(|j| self.mul(x, &SparseVec::unit(j))).collect(),
        )
    }

    /// Matrix of `y ↦ y x`.
    pub fn right_mult(&self, x: &SparseVec) -> SparseMatrix {
        let n = self.dim();
        SparseMatrix::from_columns(
            n,
            (0..n).map(|j| self.mul(&SparseVec::unit(j), x)).collect(),
        )
    }

    /// The same algebra in the basis given by the columns of the invertible
    /// matrix `p` (old coordinates). Labels are supplied by the caller.
    pub fn change_basis(
        &self,
        p: &SparseMatrix,
        labels: Vec<String>,
    ) -> Result<Algebra, AlgebraError> {
        let n = self.dim();
        if p.shape() != (n, n) || labels.len() != n {
            return Err(AlgebraError::Shape("basis change must be square"));
        }
        let span = Subspace::column_space(p);
        if span.dim() != n {
            return Err(AlgebraError::Shape("basis change is not invertible"));
        }
        let coords = |v: &SparseVec| span.coordinates(v).unwrap();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(coords(&self.mul(p.col(i), p.col(j))));
            }
        }
        Ok(Algebra {
            labels,
            table,
            unit: coords(&self.unit),
        })
    }

    /// Finite product `A × B` with basis `A`'s then `B`'s.
    pub fn product(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim(), other.dim());
        let mut table = Vec::with_capacity((n + m) * (n + m));
        for i in 0..n + m {
            for j in 0..n + m {
                let v = match (i < n, j < n) {
                    (true, true) => self.mul_basis(i, j).clone(),
                    (false, false) => other.mul_basis(i - n, j - n).shifted(n),
                    _ => SparseVec::new(),
                };
                table.push(v);
            }
        }
        let mut unit = self.unit.clone();
        unit.axpy(&Scalar::ONE, &other.unit.shifted(n));
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Algebra {
            labels,
            table,
            unit,
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }
}

/// Checks associativity on all basis triples and two-sidedness of the unit.
pub fn validate_algebra(a: &Algebra) -> AlgebraReport {
    let n = a.dim();
    let mut report = AlgebraReport {
        dim: n,
        non_associative: None,
        unit_failure: None,
    };
    'outer: for i in 0..n {
        for j in 0..n {
            let ij = a.mul_basis(i, j);
            for k in 0..n {
                let left = a.mul(ij, &SparseVec::unit(k));
                let right = a.mul(&SparseVec::unit(i), a.mul_basis(j, k));
                if left != right {
                    report.non_associative = Some((i, j, k));
                    break 'outer;
                }
            }
        }
    }
    for i in 0..n {
        let e = SparseVec::unit(i);
        if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
            report.unit_failure = Some(i);
            break;
        }
    }
    report
}

/// A unital algebra homomorphism, stored as a matrix `dim(target) × dim(source)`.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub matrix: SparseMatrix,
}

impl AlgebraMap {
    /// Validates multiplicativity on all basis pairs and preservation of the unit.
    pub fn new(
        source: &Algebra,
        target: &Algebra,
        matrix: SparseMatrix,
    ) -> Result<Self, AlgebraError> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(AlgebraError::Shape("map matrix has the wrong shape"));
        }
        if let Some((i, j)) = multiplicativity_failure(source, target, &matrix) {
            return Err(AlgebraError::NotMultiplicative(i, j));
        }
        if matrix.mul_vec(source.unit()) != *target.unit() {
            return Err(AlgebraError::NotUnital);
        }
        Ok(Self { matrix })
    }

    pub fn identity(a: &Algebra) -> Self {
        Self {
            matrix: SparseMatrix::identity(a.dim()),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.mul_vec(v)
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.matrix.nrows()
    }

    pub fn compose(&self, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            matrix: self.matrix.mul(&first.matrix),
        }
    }
}

/// First basis pair `(i, j)` with `f(e_i e_j) ≠ f(e_i) f(e_j)`.
pub fn multiplicativity_failure(
    source: &Algebra,
    target: &Algebra,
    f: &SparseMatrix,
) -> Option<(usize, usize)> {
    let n = source.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = f.mul_vec(source.mul_basis(i, j));
            let rhs = target.mul(f.col(i), f.col(j));
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn broken() -> Algebra {
        // e0 = 1, e1 e1 = e2, e2 e1 = e1, e1 e2 = 0
        let z = SparseVec::new;
        let u = SparseVec::unit;
        Algebra::from_table(
            vec!["1".into(), "a".into(), "b".into()],
            vec![
                vec![u(0), u(1), u(2)],
                vec![u(1), u(2), z()],
                vec![u(2), u(1), z()],
            ],
            u(0),
        )
        .unwrap()
    }

    #[test]
    fn rationals_valid() {
        assert!(validate_algebra(&Algebra::rationals()).is_valid());
    }

    #[test]
    fn non_associative_reported() {
        let r = validate_algebra(&broken());
        assert!(r.non_associative.is_some());
        assert!(r.unit_failure.is_none());
    }

    #[test]
    fn upper_triangular_triples() {
        let a = Algebra::upper_triangular(2);
        assert_eq!(a.dim(), 3);
        // oracle: multiply explicit 2x2 matrices for every triple
        let mats: Vec<[[i64; 2]; 2]> = vec![[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]];
        let mm = |x: [[i64; 2]; 2], y: [[i64; 2]; 2]| {
            let mut r = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        r[i][j] += x[i][k] * y[k][j];
                    }
                }
            }
            r
        };
        for i in 0..3 {
            for j in 0..3 {
                let p = mm(mats[i], mats[j]);
                let expect: Vec<(usize, Scalar)> = (0..3)
                    .filter_map(|k| {
                        let m = mats[k];
                        let pos = if m[0][0] == 1 {
                            (0, 0)
                        } else if m[0][1] == 1 {
                            (0, 1)
                        } else {
                            (1, 1)
                        };
                        let c = p[pos.0][pos.1];
                        (c != 0).then(|| (k, Scalar::from_int(c)))
                    })
                    .collect();
                assert_eq!(*a.mul_basis(i, j), SparseVec::from_entries(expect));
            }
        }
        assert!(validate_algebra(&a).is_valid());
    }

    #[test]
    fn change_basis_keeps_validity() {
        let a = Algebra::upper_triangular(2);
        let p = SparseMatrix::from_i64_rows(&[&[1, 0, 1], &[1, 1, 0], &[0, 0, 1]]);
        let b = a
            .change_basis(&p, vec!["u".into(), "v".into(), "w".into()])
            .unwrap();
        assert!(validate_algebra(&b).is_valid());
    }
}
