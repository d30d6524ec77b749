#![allow(clippy::needless_range_loop)]

use cychom_core::algcore::truncated_polynomial;
use cychom_core::cyccat::{dold_kan, free_cyclic, validate_cyclic};
use cychom_core::cychom::{cp_window, HcLadder};
use cychom_core::exactla::{decompose, homology_at, Scalar, Solver, SparseMatrix, SparseVec};
use cychom_core::hhdecomp::{gap_set, hh, partitions};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> SparseMatrix {
    SparseMatrix::from_triplets(
        rows,
        cols,
        (0..rows * cols).map(|k| {
            (
                k / cols,
                k % cols,
                Scalar::from_int(entries[k % entries.len()]),
            )
        }),
    )
}

fn small_matrix() -> impl Strategy<Value = SparseMatrix> {
    (
        1usize..5,
        1usize..5,
        prop::collection::vec(-3i64..=3, 1..25),
    )
        .prop_map(|(r, c, e)| matrix(r, c, &e))
}

/// Number of partitions of `k` by the recurrence on the largest part.
fn partition_count(k: usize) -> usize {
    let mut p = vec![vec![0usize; k + 1]; k + 1];
    for m in 0..=k {
        p[0][m] = 1;
    }
    for n in 1..=k {
        for m in 1..=k {
            p[n][m] = p[n][m - 1] + if m <= n { p[n - m][m] } else { 0 };
        }
    }
    p[k][k]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_transpose_invariant(m in small_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.nrows().min(m.ncols()));
    }

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let h = homology_at(&SparseMatrix::zeros(m.ncols(), 0), &m).unwrap();
        prop_assert_eq!(h.dim() + m.rank(), m.ncols());
        let k = decompose(&m).kernel;
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn inverse_of_unitriangular(n in 1usize..6, e in prop::collection::vec(-4i64..=4, 1..36)) {
        let m = SparseMatrix::from_triplets(
            n,
            n,
            (0..n).flat_map(|i| (0..=i).map(move |j| (i, j))).map(|(i, j)| {
                (i, j, if i == j { Scalar::from_int(1) } else { Scalar::from_int(e[(i * n + j) % e.len()]) })
            }),
        );
        let inv = Solver::inverse(&m).expect("unitriangular matrices are invertible");
        prop_assert!(m.mul(&inv).is_identity());
        prop_assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn solver_finds_preimages(m in small_matrix(), x in prop::collection::vec(-3i64..=3, 4)) {
        let v = SparseVec::from_entries((0..m.ncols()).map(|i| (i, Scalar::from_int(x[i]))).collect());
        let y = m.mul_vec(&v);
        let s = Solver::new(&m).solve(&y).expect("y is in the image");
        prop_assert_eq!(m.mul_vec(&s), y);
    }

    #[test]
    fn partitions_are_counted_and_ordered(k in 1usize..9) {
        let ps = partitions(k);
        prop_assert_eq!(ps.len(), partition_count(k));
        prop_assert!(ps.iter().all(|p| p.weight() == k));
        prop_assert!(ps.windows(2).all(|w| w[0].norm() > w[1].norm()));
    }

    #[test]
    fn gap_sets_rotate(f in prop::collection::vec(0u8..3, 1..12), r in 0usize..12) {
        let n = f.len();
        let r = r % n;
        let rotated: Vec<u8> = (0..n).map(|i| f[(i + r) % n]).collect();
        let mut expect: Vec<usize> = gap_set(&f).members.iter().map(|&j| (j + n - r) % n).collect();
        expect.sort_unstable();
        prop_assert_eq!(gap_set(&rotated).members, expect);
        prop_assert!(gap_set(&f).members.iter().all(|&j| f[j] == 2));
    }

    #[test]
    fn dold_kan_modules_are_simplicial(
        dims in prop::collection::vec(0usize..3, 3),
        e in prop::collection::vec(-2i64..=2, 1..9),
    ) {
        let d1 = matrix(dims[0], dims[1], &e);
        let kernel = decompose(&d1).kernel;
        let basis = kernel.basis_vectors();
        let d2 = SparseMatrix::from_columns(
            dims[1],
            (0..dims[2])
                .map(|j| {
                    let mut v = SparseVec::new();
                    for (i, b) in basis.iter().enumerate() {
                        v.axpy(&Scalar::from_int(e[(i + j) % e.len()]), b);
                    }
                    v
                })
                .collect(),
        );
        let n = dold_kan(&[SparseMatrix::zeros(0, dims[0]), d1, d2], 4);
        prop_assert!(n.first_violation().is_none());
        let m = free_cyclic(&n);
        prop_assert!(validate_cyclic(&m).is_valid());
        let w = cp_window(&m, -2, 4).unwrap();
        prop_assert_eq!(w.square_zero_failure(), None);
    }
}

#[test]
fn truncated_polynomials_have_valid_bicomplexes() {
    for n in 1..=4 {
        let (a, _) = truncated_polynomial(n).unwrap();
        let m = hh(&a, 4, usize::MAX).unwrap().module;
        assert!(validate_cyclic(&m).is_valid());
        assert_eq!(cp_window(&m, -4, 4).unwrap().square_zero_failure(), None);
        // HC_0 = A for a commutative algebra
        assert_eq!(HcLadder::new(&m).dims()[0], n);
    }
}
