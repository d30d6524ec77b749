use alloc::vec::Vec;

use super::{CyclicModule, CyclicMorphism, SimplicialModule};
use crate::exactla::{SparseMatrix, SparseVec};

/// Index of the pair `(t^s, a)` in degree `q` of `j_*X`.
pub fn free_index(dim_q: usize, s: usize, a: usize) -> usize {
    s * dim_q + a
}

/// The free cyclic module `j_*X`: in degree `q`, `q + 1` copies of `X_q`
/// indexed by `t^s`, `0 ≤ s ≤ q`.
pub fn free_cyclic(x: &SimplicialModule) -> CyclicModule {
    let d = x.max_degree();
    let dims: Vec<usize> = (0..=d).map(|q| (q + 1) * x.dim(q)).collect();
    let mut faces = Vec::with_capacity(d + 1);
    let mut degens = Vec::with_capacity(d);
    let mut t = Vec::with_capacity(d + 1);
    for q in 0..=d {
        let n = x.dim(q);
        if q == 0 {
            faces.push(Vec::new());
        } else {
            let m = x.dim(q - 1);
            let row: Vec<SparseMatrix> = (0..=q)
                .map(|r| {
                    let cols = (0..=q)
                        .flat_map(|s| (0..n).map(move |a| (s, a)))
                        .map(|(s, a)| {
                            let (s2, i) = if s <= r {
                                (s % q, r - s)
                            } else {
                                (s - 1, q + 1 + r - s)
                            };
                            x.face(q, i).col(a).shifted(s2 * m)
                        })
                        .collect();
                    SparseMatrix::from_columns(q * m, cols)
                })
                .collect();
            faces.push(row);
        }
        if q < d {
            let m = x.dim(q + 1);
            let row: Vec<SparseMatrix> = (0..=q)
                .map(|r| {
                    let cols = (0..=q)
                        .flat_map(|s| (0..n).map(move |a| (s, a)))
                        .map(|(s, a)| {
                            let (s2, i) = if s <= r {
                                (s, r - s)
                            } else {
                                (s + 1, q + 1 + r - s)
                            };
                            x.degeneracy(q, i).col(a).shifted(s2 * m)
                        })
                        .collect();
                    SparseMatrix::from_columns((q + 2) * m, cols)
                })
                .collect();
            degens.push(row);
        }
        let cols = (0..=q)
            .flat_map(|s| (0..n).map(move |a| (s, a)))
            .map(|(s, a)| SparseVec::unit(free_index(n, (s + 1) % (q + 1), a)))
            .collect();
        t.push(SparseMatrix::from_columns(dims[q], cols));
    }
    CyclicModule {
        simplicial: SimplicialModule {
            dims,
            faces,
            degens,
        },
        t,
    }
}

/// `j_*(j^*Y) → Y`, `(t^s, y) ↦ t^s y`.
pub fn counit(y: &CyclicModule) -> CyclicMorphism {
    let maps = (0..=y.max_degree())
        .map(|q| {
            let n = y.dim(q);
            let mut cols = Vec::with_capacity((q + 1) * n);
            let mut power = SparseMatrix::identity(n);
            for _ in 0..=q {
                cols.extend(power.columns().iter().cloned());
                power = y.cyclic(q).mul(&power);
            }
            SparseMatrix::from_columns(n, cols)
        })
        .collect();
    CyclicMorphism { maps }
}

/// Inclusion of the `t^0` summand `X_q → (j_*X)_q`.
pub fn base_inclusion(x: &SimplicialModule) -> Vec<SparseMatrix> {
    (0..=x.max_degree())
        .map(|q| {
            let n = x.dim(q);
            SparseMatrix::from_columns((q + 1) * n, (0..n).map(SparseVec::unit).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyccat::{morphism_map, validate_cyclic};

    #[test]
    fn free_on_constant() {
        let x = SimplicialModule::constant(5, 1);
        let j = free_cyclic(&x);
        assert_eq!(j.dims(), &[1, 2, 3, 4, 5, 6]);
        assert!(validate_cyclic(&j).is_valid());
        let zero = free_cyclic(&SimplicialModule::constant(3, 0));
        assert!(zero.is_zero());
    }

    #[test]
    fn counit_on_constant_sums() {
        let y = CyclicModule::constant(4);
        let e = counit(&y);
        for q in 0..=4 {
            assert_eq!(e.maps[q].shape(), (1, q + 1));
            assert!(e.maps[q].columns().iter().all(|c| *c == SparseVec::unit(0)));
        }
        let j = free_cyclic(&y.simplicial);
        assert!(morphism_map(e.maps, &j, &y).is_ok());
    }

    #[test]
    fn counit_on_free_is_surjective() {
        let x = SimplicialModule::constant(4, 1);
        let y = free_cyclic(&x);
        let j = free_cyclic(&y.simplicial);
        let e = morphism_map(counit(&y).maps, &j, &y).unwrap();
        for q in 0..=4 {
            assert_eq!(e.maps[q].rank(), y.dim(q));
            let back = e.maps[q].mul(&base_inclusion(&y.simplicial)[q]);
            assert!(back.is_identity());
        }
    }
}
