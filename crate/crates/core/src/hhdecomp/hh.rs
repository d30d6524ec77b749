use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::HhError;
use crate::algcore::{Algebra, AlgebraMap};
use crate::cyccat::{CyclicModule, CyclicMorphism, SimplicialModule};
use crate::exactla::{SparseMatrix, SparseVec};

pub const DEFAULT_WORD_BUDGET: usize = 2_000_000;

/// `[q] ↦ A^{⊗(q+1)}` on tensor words of basis elements.
///
/// The word `e_{i_0} ⊗ … ⊗ e_{i_q}` has index `Σ i_j n^{q−j}`, so words are
/// in lexicographic order with position 0 most significant.
#[derive(Clone, Debug)]
pub struct HochschildModule {
    pub algebra_dim: usize,
    pub module: CyclicModule,
}

impl HochschildModule {
    pub fn max_degree(&self) -> usize {
        self.module.max_degree()
    }

    pub fn word(&self, q: usize, index: usize) -> Vec<usize> {
        word_of(self.algebra_dim, q, index)
    }

    pub fn index(&self, word: &[usize]) -> usize {
        index_of(self.algebra_dim, word)
    }

    /// Words of degree `q` in index order.
    pub fn words(&self, q: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.module.dim(q)).map(move |i| self.word(q, i))
    }

    /// `a⊗b⊗c` using the algebra's basis labels.
    pub fn word_label(&self, a: &Algebra, q: usize, index: usize) -> String {
        let mut s = String::new();
        for (k, b) in self.word(q, index).into_iter().enumerate() {
            if k > 0 {
                s.push('⊗');
            }
            s.push_str(&a.labels()[b]);
        }
        s
    }

    /// Pattern `f(j) = labels[i_j]` of a word.
    pub fn pattern(&self, labels: &[u8], q: usize, index: usize) -> Vec<u8> {
        self.word(q, index).into_iter().map(|b| labels[b]).collect()
    }

    /// Basis indices per degree whose pattern satisfies `keep`.
    pub fn select(&self, labels: &[u8], mut keep: impl FnMut(&[u8]) -> bool) -> Vec<Vec<usize>> {
        (0..=self.max_degree())
            .map(|q| {
                (0..self.module.dim(q))
                    .filter(|&i| keep(&self.pattern(labels, q, i)))
                    .collect()
            })
            .collect()
    }
}

pub fn word_of(n: usize, q: usize, mut index: usize) -> Vec<usize> {
    let mut w = vec![0; q + 1];
    if n == 0 {
        return w;
    }
    for pos in (0..=q).rev() {
        w[pos] = index % n;
        index /= n;
    }
    w
}

pub fn index_of(n: usize, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &b| acc * n + b)
}

fn word_count(n: usize, q: usize) -> Option<usize> {
    n.checked_pow(q as u32 + 1)
}

/// The Hochschild cyclic module of `a` up to degree `max_degree`.
pub fn hh(a: &Algebra, max_degree: usize, budget: usize) -> Result<HochschildModule, HhError> {
    let n = a.dim();
    let mut dims = Vec::with_capacity(max_degree + 1);
    for q in 0..=max_degree {
        match word_count(n, q) {
            Some(c) if c <= budget => dims.push(c),
            c => {
                return Err(HhError::Budget {
                    degree: q,
                    words: c.unwrap_or(usize::MAX),
                    budget,
                })
            }
        }
    }
    let mut faces = Vec::with_capacity(max_degree + 1);
    let mut degens = Vec::with_capacity(max_degree);
    let mut t = Vec::with_capacity(max_degree + 1);
    for q in 0..=max_degree {
        if q == 0 {
            faces.push(Vec::new());
        } else {
            faces.push((0..=q).map(|i| face_matrix(a, q, i, dims[q - 1])).collect());
        }
        if q < max_degree {
            degens.push(
                (0..=q)
                    .map(|i| degeneracy_matrix(a, q, i, dims[q + 1]))
                    .collect(),
            );
        }
        let cols = (0..dims[q])
            .map(|idx| {
                let last = idx % n;
                SparseVec::unit(last * n.pow(q as u32) + idx / n)
            })
            .collect();
        t.push(SparseMatrix::from_columns(dims[q], cols));
    }
    Ok(HochschildModule {
        algebra_dim: n,
        module: CyclicModule {
            simplicial: SimplicialModule {
                dims,
                faces,
                degens,
            },
            t,
        },
    })
}

fn face_matrix(a: &Algebra, q: usize, i: usize, rows: usize) -> SparseMatrix {
    let n = a.dim();
    let cols = (0..n.pow(q as u32 + 1))
        .map(|idx| {
            let w = word_of(n, q, idx);
            let (prod, mut rest) = if i < q {
                let mut rest = w.clone();
                rest.remove(i + 1);
                (a.mul_basis(w[i], w[i + 1]), rest)
            } else {
                let mut rest = w[..q].to_vec();
                rest[0] = 0;
                (a.mul_basis(w[q], w[0]), rest)
            };
            let slot = if i < q { i } else { 0 };
            let entries = prod
                .iter()
                .map(|(x, c)| {
                    rest[slot] = x;
                    (index_of(n, &rest), c.clone())
                })
                .collect();
            SparseVec::from_entries(entries)
        })
        .collect();
    SparseMatrix::from_columns(rows, cols)
}

fn degeneracy_matrix(a: &Algebra, q: usize, i: usize, rows: usize) -> SparseMatrix {
    let n = a.dim();
    let cols = (0..n.pow(q as u32 + 1))
        .map(|idx| {
            let mut w = word_of(n, q, idx);
            w.insert(i + 1, 0);
            let entries = a
                .unit()
                .iter()
                .map(|(x, c)| {
                    w[i + 1] = x;
                    (index_of(n, &w), c.clone())
                })
                .collect();
            SparseVec::from_entries(entries)
        })
        .collect();
    SparseMatrix::from_columns(rows, cols)
}

/// `f^{⊗(q+1)}` in every degree, for a linear map between algebras.
pub fn tensor_power_maps(f: &SparseMatrix, max_degree: usize) -> Vec<SparseMatrix> {
    let (m, n) = f.shape();
    (0..=max_degree)
        .map(|q| {
            let cols = (0..n.pow(q as u32 + 1))
                .map(|idx| {
                    let w = word_of(n, q, idx);
                    let mut acc: Vec<(usize, crate::exactla::Scalar)> =
                        vec![(0, crate::exactla::Scalar::ONE)];
                    for &b in &w {
                        let img = f.col(b);
                        let mut next = Vec::with_capacity(acc.len() * img.nnz());
                        for (i, c) in &acc {
                            for (x, d) in img.iter() {
                                next.push((i * m + x, c * d));
                            }
                        }
                        acc = next;
                    }
                    SparseVec::from_entries(acc)
                })
                .collect();
            SparseMatrix::from_columns(m.pow(q as u32 + 1), cols)
        })
        .collect()
}

/// The cyclic map `HH(A) → HH(B)` induced by an algebra map.
pub fn hh_map(f: &AlgebraMap, max_degree: usize) -> CyclicMorphism {
    CyclicMorphism {
        maps: tensor_power_maps(&f.matrix, max_degree),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::truncated_polynomial;
    use crate::cyccat::{morphism_map, validate_cyclic};
    use crate::exactla::{homology_at, SparseMatrix};

    fn dual() -> Algebra {
        truncated_polynomial(2).unwrap().0
    }

    #[test]
    fn rationals_are_constant() {
        let h = hh(&Algebra::rationals(), 4, DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!(h.module.dims(), &[1, 1, 1, 1, 1]);
        for q in 1..=4 {
            for i in 0..=q {
                assert!(h.module.face(q, i).is_identity());
            }
            assert!(h.module.cyclic(q).is_identity());
        }
    }

    #[test]
    fn dual_number_dims_and_validity() {
        let h = hh(&dual(), 3, DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!(h.module.dims(), &[2, 4, 8, 16]);
        assert!(validate_cyclic(&h.module).is_valid());
    }

    #[test]
    fn word_indexing_round_trips() {
        for idx in 0..27 {
            assert_eq!(index_of(3, &word_of(3, 2, idx)), idx);
        }
        let h = hh(&dual(), 2, DEFAULT_WORD_BUDGET).unwrap();
        // t(1⊗x⊗x) = x⊗1⊗x
        let src = h.index(&[0, 1, 1]);
        let dst = h.index(&[1, 0, 1]);
        assert_eq!(h.module.cyclic(2).col(src), &SparseVec::unit(dst));
        assert_eq!(h.word_label(&dual(), 2, dst), "x⊗1⊗x");
    }

    #[test]
    fn last_face_wraps() {
        let h = hh(&dual(), 2, DEFAULT_WORD_BUDGET).unwrap();
        // d_2(x⊗1⊗1) = x⊗1, d_2(1⊗1⊗x) = x⊗1, d_2(x⊗1⊗x) = 0
        let d2 = h.module.face(2, 2);
        assert_eq!(d2.col(h.index(&[1, 0, 0])), &SparseVec::unit(2));
        assert_eq!(d2.col(h.index(&[0, 0, 1])), &SparseVec::unit(2));
        assert!(d2.col(h.index(&[1, 0, 1])).is_zero());
    }

    #[test]
    fn budget_guard() {
        let err = hh(&dual(), 5, 32).unwrap_err();
        assert_eq!(
            err,
            HhError::Budget {
                degree: 5,
                words: 64,
                budget: 32
            }
        );
    }

    #[test]
    fn moore_homology_of_dual_numbers() {
        let h = hh(&dual(), 6, DEFAULT_WORD_BUDGET).unwrap();
        let b = |q: usize| {
            let mut acc = SparseMatrix::zeros(h.module.dim(q - 1), h.module.dim(q));
            for i in 0..=q {
                let sign = if i % 2 == 0 {
                    crate::exactla::Scalar::ONE
                } else {
                    -crate::exactla::Scalar::ONE
                };
                acc = acc.axpy(&sign, h.module.face(q, i));
            }
            acc
        };
        let mut dims = vec![homology_at(&b(1), &SparseMatrix::zeros(0, 2))
            .unwrap()
            .dim()];
        for q in 1..=5 {
            dims.push(homology_at(&b(q + 1), &b(q)).unwrap().dim());
        }
        assert_eq!(dims, vec![2, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn induced_map_is_cyclic() {
        let (a, i) = truncated_polynomial(3).unwrap();
        let (q, p) = crate::algcore::quotient_by_ideal(&a, &i);
        let src = hh(&a, 3, DEFAULT_WORD_BUDGET).unwrap();
        let dst = hh(&q, 3, DEFAULT_WORD_BUDGET).unwrap();
        assert!(morphism_map(hh_map(&p, 3).maps, &src.module, &dst.module).is_ok());
    }
}
