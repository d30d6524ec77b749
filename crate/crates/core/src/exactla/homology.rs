//! Homology of finite chain complexes over ℚ.

use alloc::vec;
use alloc::vec::Vec;

use super::echelon::{reduce_columns, Echelon, Tagging};
use super::{LinAlgError, SparseMatrix, SparseVec};

/// Homology at one spot of a complex `C' --d_in--> C --d_out--> C''`.
///
/// Holds chosen cycle representatives for a basis of `ker d_out / im d_in`
/// and an echelon basis of all cycles tagged by class coordinates, so the
/// class of any cycle is one reduction away.
#[derive(Clone, Debug)]
pub struct Homology {
    ambient: usize,
    boundary_rank: usize,
    reps: Vec<SparseVec>,
    classes: Echelon,
}

impl Homology {
    /// Builds homology from the echelon of `im d_in` and the outgoing
    /// differential. Also returns the echelon of `im d_out`, which is the
    /// boundary space one degree down.
    pub fn from_boundaries(boundaries: Echelon, d_out: &SparseMatrix) -> (Homology, Echelon) {
        assert_eq!(boundaries.ambient_dim(), d_out.ncols());
        let red = reduce_columns(d_out, Some(&boundaries), Tagging::Identity);
        let boundary_rank = boundaries.rank();
        let mut classes = boundaries.untagged();
        let mut reps = Vec::with_capacity(red.dependent.len());
        for (k, (_, z)) in red.dependent.into_iter().enumerate() {
            let ok = classes.insert_tagged(z.clone(), SparseVec::unit(k));
            debug_assert!(ok.is_ok(), "kernel vector fell into boundaries");
            reps.push(z);
        }
        (
            Homology {
                ambient: d_out.ncols(),
                boundary_rank,
                reps,
                classes,
            },
            red.image,
        )
    }

    /// Homology of a space with no outgoing differential: every vector is a cycle.
    pub fn top(boundaries: Echelon) -> Homology {
        let n = boundaries.ambient_dim();
        Self::from_boundaries(boundaries, &SparseMatrix::zeros(0, n)).0
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn cycles_dim(&self) -> usize {
        self.boundary_rank + self.reps.len()
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundary_rank
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.reps
    }

    pub fn boundary_basis(&self) -> &[SparseVec] {
        &self.classes.vectors()[..self.boundary_rank]
    }

    /// Class coordinates of a cycle.
    pub fn class_of(&self, z: &SparseVec) -> Result<SparseVec, LinAlgError> {
        let (res, tag) = self.classes.reduce(z.clone(), SparseVec::new());
        if !res.is_zero() {
            return Err(LinAlgError::NotACycle {
                index: res.last_index().unwrap(),
            });
        }
        Ok(tag.neg())
    }

    /// Linear map defined on the whole chain space that agrees with
    /// [`Self::class_of`] on cycles (zero on a fixed complement of the cycles).
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.classes.reduce(v.clone(), SparseVec::new()).1.neg()
    }

    pub fn is_boundary(&self, z: &SparseVec) -> bool {
        matches!(self.class_of(z), Ok(c) if c.is_zero())
    }

    /// Matrix of class coordinates for a matrix whose columns are cycles.
    pub fn projection(&self, cycles: &SparseMatrix) -> Result<SparseMatrix, LinAlgError> {
        let cols = cycles
            .columns()
            .iter()
            .map(|z| self.class_of(z))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }
}

/// `H` at `C' --d_in--> C --d_out--> C''`. Rejects pairs with `d_out ∘ d_in ≠ 0`.
pub fn homology_at(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<Homology, LinAlgError> {
    if d_in.nrows() != d_out.ncols() {
        return Err(LinAlgError::ShapeMismatch {
            left: d_out.shape(),
            right: d_in.shape(),
        });
    }
    let comp = d_out.mul(d_in);
    let bad = comp.triplets().next().map(|(r, c, _)| (r, c));
    if let Some((row, col)) = bad {
        return Err(LinAlgError::NotAComplex { row, col });
    }
    let b = reduce_columns(d_in, None, Tagging::None).image;
    Ok(Homology::from_boundaries(b, d_out).0)
}

/// Map on homology induced by a chain-level map `f: C → D` in one degree.
///
/// Fails if `f` sends a cycle to a non-cycle or a boundary to a nonzero class.
pub fn induced_map(
    f: &SparseMatrix,
    source: &Homology,
    target: &Homology,
) -> Result<SparseMatrix, LinAlgError> {
    if f.ncols() != source.ambient_dim() || f.nrows() != target.ambient_dim() {
        return Err(LinAlgError::ShapeMismatch {
            left: f.shape(),
            right: (source.ambient_dim(), target.ambient_dim()),
        });
    }
    for b in source.boundary_basis() {
        let c = target.class_of(&f.mul_vec(b))?;
        if !c.is_zero() {
            return Err(LinAlgError::BoundaryNotPreserved);
        }
    }
    let cols = source
        .representatives()
        .iter()
        .map(|z| target.class_of(&f.mul_vec(z)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SparseMatrix::from_columns(target.dim(), cols))
}

/// A bounded chain complex `C_lo ← … ← C_hi` with `d_n: C_n → C_{n-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    min_degree: i64,
    dims: Vec<usize>,
    // diffs[i] : C_{min+i} → C_{min+i-1}
    diffs: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `diffs[i]` is the differential out of degree `min_degree + i`; the
    /// first one must have zero rows.
    pub fn new(min_degree: i64, diffs: Vec<SparseMatrix>) -> Result<Self, LinAlgError> {
        let dims: Vec<usize> = diffs.iter().map(SparseMatrix::ncols).collect();
        for (i, d) in diffs.iter().enumerate() {
            let expect = if i == 0 { 0 } else { dims[i - 1] };
            if d.nrows() != expect {
                return Err(LinAlgError::ShapeMismatch {
                    left: d.shape(),
                    right: (expect, dims[i]),
                });
            }
        }
        Ok(Self {
            min_degree,
            dims,
            diffs,
        })
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |i| self.dims[i])
    }

    fn index(&self, n: i64) -> Option<usize> {
        let i = n - self.min_degree;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    /// The differential out of degree `n` (a zero map outside the stored range).
    pub fn differential(&self, n: i64) -> SparseMatrix {
        match self.index(n) {
            Some(i) => self.diffs[i].clone(),
            None => SparseMatrix::zeros(self.dim(n - 1), self.dim(n)),
        }
    }

    pub fn differential_ref(&self, n: i64) -> Option<&SparseMatrix> {
        self.index(n).map(|i| &self.diffs[i])
    }

    /// Checks `d ∘ d = 0` everywhere; reports the first offending degree.
    pub fn validate(&self) -> Result<(), LinAlgError> {
        for i in 1..self.diffs.len() {
            let comp = self.diffs[i - 1].mul(&self.diffs[i]);
            let bad = comp.triplets().next().map(|(r, c, _)| (r, c));
            if let Some((row, col)) = bad {
                return Err(LinAlgError::NotAComplex { row, col });
            }
        }
        Ok(())
    }

    /// Homology in every degree below the top one (the top degree has no
    /// incoming differential available and is returned as cycles mod nothing
    /// only if `include_top`).
    pub fn homology(&self, include_top: bool) -> ComplexHomology {
        let n = self.dims.len();
        let mut groups: Vec<Option<Homology>> = vec![None; n];
        if n == 0 {
            return ComplexHomology {
                min_degree: self.min_degree,
                groups: Vec::new(),
            };
        }
        let mut boundaries = Echelon::new(self.dims[n - 1]);
        for i in (0..n).rev() {
            let (h, img) = Homology::from_boundaries(boundaries, &self.diffs[i]);
            if i + 1 < n || include_top {
                groups[i] = Some(h);
            }
            boundaries = img;
        }
        ComplexHomology {
            min_degree: self.min_degree,
            groups,
        }
    }
}

/// Homology groups of a [`ChainComplex`], indexed by degree.
#[derive(Clone, Debug)]
pub struct ComplexHomology {
    min_degree: i64,
    groups: Vec<Option<Homology>>,
}

impl ComplexHomology {
    pub fn get(&self, n: i64) -> Option<&Homology> {
        let i = n - self.min_degree;
        if i < 0 {
            return None;
        }
        self.groups.get(i as usize).and_then(Option::as_ref)
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.groups
            .iter()
            .enumerate()
            .filter_map(|(i, h)| h.as_ref().map(|h| (self.min_degree + i as i64, h.dim())))
            .collect()
    }
}

/// `g` then `h` is exact at a space of dimension `dim`: `h∘g = 0` and
/// `rank g + rank h = dim`.
pub fn is_exact_at(g: &SparseMatrix, h: &SparseMatrix, dim: usize) -> bool {
    g.nrows() == dim && h.ncols() == dim && h.mul(g).is_zero() && g.rank() + h.rank() == dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Scalar;

    // 0 ← ℚ² ← ℚ² ← ℚ with the middle map of rank 1: boundaries passed down
    // the ladder must have class zero.
    #[test]
    fn boundaries_have_zero_class() {
        let d2 = SparseMatrix::from_i64_rows(&[&[1, 1], &[0, 0]]);
        let d3 = SparseMatrix::from_i64_rows(&[&[1], &[-1]]);
        let cx = ChainComplex::new(1, alloc::vec![SparseMatrix::zeros(0, 2), d2, d3]).unwrap();
        let h = cx.homology(false);
        let h1 = h.get(1).unwrap();
        assert_eq!(h1.dim(), 1);
        let b = SparseVec::unit(0);
        assert!(h1.class_of(&b).unwrap().is_zero());
        assert!(h1.project(&b).is_zero());
    }

    #[test]
    fn acyclic_and_trivial() {
        let h = homology_at(&SparseMatrix::zeros(1, 1), &SparseMatrix::identity(1)).unwrap();
        assert_eq!(h.dim(), 0);
        let h = homology_at(&SparseMatrix::zeros(2, 2), &SparseMatrix::zeros(2, 2)).unwrap();
        assert_eq!(h.dim(), 2);
    }

    #[test]
    fn rejects_non_complex() {
        let e = homology_at(&SparseMatrix::identity(1), &SparseMatrix::identity(1));
        assert!(matches!(e, Err(LinAlgError::NotAComplex { .. })));
    }

    #[test]
    fn class_coordinates() {
        // C_1 = ℚ² --(1 1)--> C_0 = ℚ ; H_1 = span(e0 - e1)
        let d1 = SparseMatrix::from_i64_rows(&[&[1, 1]]);
        let h = homology_at(&SparseMatrix::zeros(2, 0), &d1).unwrap();
        assert_eq!(h.dim(), 1);
        let z = SparseVec::from_entries(vec![(0, Scalar::from_int(3)), (1, Scalar::from_int(-3))]);
        let c = h.class_of(&z).unwrap();
        let rep = &h.representatives()[0];
        let mut back = rep.scaled(&c.get(0));
        back.axpy(&-Scalar::ONE, &z);
        assert!(back.is_zero());
        assert!(h.class_of(&SparseVec::unit(0)).is_err());
    }

    #[test]
    fn induced_identity_and_zero() {
        let d1 = SparseMatrix::from_i64_rows(&[&[1, -1]]);
        let h = homology_at(&SparseMatrix::zeros(2, 0), &d1).unwrap();
        let id = induced_map(&SparseMatrix::identity(2), &h, &h).unwrap();
        assert!(id.is_identity());
        let z = induced_map(&SparseMatrix::zeros(2, 2), &h, &h).unwrap();
        assert!(z.is_zero());
    }
}
