//! Seeded random simplicial modules for property suites.

use cychom_core::cyccat::{change_basis, dold_kan, SimplicialModule};
use cychom_core::exactla::{decompose, Scalar, SparseMatrix, SparseVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_int(rng.gen_range(-2..=2))
}

/// A chain complex `C_0 ← C_1 ← C_2` with `dim C_k ≤ max_dim` and random
/// differentials; `d_2` has columns in `ker d_1`.
pub fn chain_complex(rng: &mut ChaCha8Rng, max_dim: usize) -> Vec<SparseMatrix> {
    let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=max_dim)).collect();
    let d1 = SparseMatrix::from_columns(
        dims[0],
        (0..dims[1])
            .map(|_| SparseVec::from_entries((0..dims[0]).map(|i| (i, small(rng))).collect()))
            .collect(),
    );
    let kernel = decompose(&d1).kernel;
    let d2 = SparseMatrix::from_columns(
        dims[1],
        (0..dims[2])
            .map(|_| {
                let mut v = SparseVec::new();
                for b in kernel.basis_vectors() {
                    v.axpy(&small(rng), b);
                }
                v
            })
            .collect(),
    );
    vec![SparseMatrix::zeros(0, dims[0]), d1, d2]
}

/// Invertible `n × n` matrix: a product of `n` random transvections.
pub fn basis_change(rng: &mut ChaCha8Rng, n: usize) -> SparseMatrix {
    let mut cols: Vec<SparseVec> = (0..n).map(SparseVec::unit).collect();
    if n > 1 {
        for _ in 0..n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = Scalar::from_int(rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 });
            let cj = cols[j].clone();
            cols[i].axpy(&c, &cj);
        }
    }
    SparseMatrix::from_columns(n, cols)
}

/// `Γ(C)` of a random chain complex up to degree `depth`, written in a random basis.
pub fn simplicial_module(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    depth: usize,
) -> (Vec<usize>, SimplicialModule) {
    let diffs = chain_complex(rng, max_dim);
    let chain_dims = diffs.iter().map(SparseMatrix::ncols).collect();
    let m = dold_kan(&diffs, depth);
    let p: Vec<SparseMatrix> = m.dims.iter().map(|&n| basis_change(rng, n)).collect();
    let m = change_basis(&m, &p).expect("transvections are invertible");
    (chain_dims, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modules_are_simplicial_and_reproducible() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..5 {
            let (da, ma) = simplicial_module(&mut a, 2, 4);
            let (db, mb) = simplicial_module(&mut b, 2, 4);
            assert_eq!(da, db);
            assert_eq!(ma, mb);
            assert_eq!(ma.first_violation(), None);
            assert!(da.iter().all(|&d| d <= 2));
        }
    }

    #[test]
    fn chain_differentials_compose_to_zero() {
        let mut r = rng(1);
        for _ in 0..20 {
            let d = chain_complex(&mut r, 2);
            assert!(d[1].mul(&d[2]).is_zero());
        }
    }
}
