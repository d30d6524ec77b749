//! Simplicial modules from chain complexes.

use alloc::vec;
use alloc::vec::Vec;

use super::module::SimplicialModule;
use crate::exactla::{Solver, SparseMatrix, SparseVec};

/// Order-preserving surjections `[q] ↠ [k]` as value sequences, in
/// lexicographic order.
fn surjections(q: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    fn go(q: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *cur.last().unwrap();
        if cur.len() == q + 1 {
            if last == k {
                out.push(cur.clone());
            }
            return;
        }
        let remaining = q + 1 - cur.len();
        for step in 0..=1 {
            let next = last + step;
            if next <= k && k - next < remaining {
                cur.push(next);
                go(q, k, cur, out);
                cur.pop();
            }
        }
    }
    if k <= q {
        go(q, k, &mut cur, &mut out);
    }
    out
}

/// `Γ(C)` for a chain complex `C_0 ← C_1 ← … ← C_K`, truncated at degree `D`:
/// `Γ(C)_q = ⊕_{σ: [q] ↠ [k]} C_k`. The face `d_i` sends `(σ, x)` to
/// `(τ, x)` when `σδ_i = τ` is still surjective, to `(τ, dx)` when
/// `σδ_i = δ_k τ` misses only the last value, and to 0 otherwise.
///
/// `diffs[k]` is `d: C_k → C_{k−1}` (with `diffs[0]` having zero rows).
pub fn dold_kan(diffs: &[SparseMatrix], max_degree: usize) -> SimplicialModule {
    let top = diffs.len().saturating_sub(1);
    let cdim = |k: usize| if k < diffs.len() { diffs[k].ncols() } else { 0 };
    // per degree: list of (k, σ, offset)
    let mut layout: Vec<Vec<(usize, Vec<usize>, usize)>> = Vec::with_capacity(max_degree + 1);
    let mut dims = Vec::with_capacity(max_degree + 1);
    for q in 0..=max_degree {
        let mut parts = Vec::new();
        let mut off = 0;
        for k in 0..=top.min(q) {
            for s in surjections(q, k) {
                parts.push((k, s, off));
                off += cdim(k);
            }
        }
        layout.push(parts);
        dims.push(off);
    }
    let find = |q: usize, s: &[usize]| -> usize {
        layout[q]
            .iter()
            .find(|p| p.1 == s)
            .map(|p| p.2)
            .expect("surjection listed")
    };
    let mut faces = vec![Vec::new()];
    for q in 1..=max_degree {
        let mut fq = Vec::with_capacity(q + 1);
        for i in 0..=q {
            let mut cols = vec![SparseVec::new(); dims[q]];
            for (k, s, off) in &layout[q] {
                // σ ∘ δ_i: drop position i
                let comp: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &v)| v)
                    .collect();
                let mut image: Vec<usize> = comp.clone();
                image.dedup();
                let missing: Vec<usize> = (0..=*k).filter(|v| !image.contains(v)).collect();
                match missing.as_slice() {
                    [] => {
                        let dst = find(q - 1, &comp);
                        for x in 0..cdim(*k) {
                            cols[off + x] = SparseVec::unit(dst + x);
                        }
                    }
                    [m] if *m == *k && *k > 0 => {
                        let dst = find(q - 1, &comp);
                        for x in 0..cdim(*k) {
                            cols[off + x] = diffs[*k].col(x).shifted(dst);
                        }
                    }
                    _ => {}
                }
            }
            fq.push(SparseMatrix::from_columns(dims[q - 1], cols));
        }
        faces.push(fq);
    }
    let mut degens = Vec::with_capacity(max_degree);
    for q in 0..max_degree {
        let mut sq = Vec::with_capacity(q + 1);
        for i in 0..=q {
            let mut cols = vec![SparseVec::new(); dims[q]];
            for (k, s, off) in &layout[q] {
                // σ ∘ σ_i repeats position i
                let mut comp = s.clone();
                comp.insert(i, s[i]);
                let dst = find(q + 1, &comp);
                for x in 0..cdim(*k) {
                    cols[off + x] = SparseVec::unit(dst + x);
                }
            }
            sq.push(SparseMatrix::from_columns(dims[q + 1], cols));
        }
        degens.push(sq);
    }
    SimplicialModule {
        dims,
        faces,
        degens,
    }
}

/// Conjugates every structure map by invertible `p[q]: new basis → old basis`.
pub fn change_basis(m: &SimplicialModule, p: &[SparseMatrix]) -> Option<SimplicialModule> {
    let inv = p.iter().map(Solver::inverse).collect::<Option<Vec<_>>>()?;
    let d = m.max_degree();
    let faces = (0..=d)
        .map(|q| {
            m.faces[q]
                .iter()
                .map(|f| inv[q - 1].mul(f).mul(&p[q]))
                .collect()
        })
        .collect();
    let degens = (0..d)
        .map(|q| {
            m.degens[q]
                .iter()
                .map(|s| inv[q + 1].mul(s).mul(&p[q]))
                .collect()
        })
        .collect();
    Some(SimplicialModule {
        dims: m.dims.clone(),
        faces,
        degens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyccat::{free_cyclic, validate_cyclic};
    use crate::exactla::{homology_at, Scalar};

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn surjection_counts() {
        for q in 0..6 {
            for k in 0..=q {
                assert_eq!(surjections(q, k).len(), binom(q, k));
            }
        }
    }

    #[test]
    fn point_is_constant() {
        let m = dold_kan(&[SparseMatrix::zeros(0, 1)], 4);
        assert_eq!(m, SimplicialModule::constant(4, 1));
    }

    #[test]
    fn identities_hold() {
        let d1 = SparseMatrix::from_i64_rows(&[&[1, 0], &[2, 0]]);
        let d2 = SparseMatrix::from_i64_rows(&[&[0], &[3]]);
        let m = dold_kan(&[SparseMatrix::zeros(0, 2), d1, d2], 5);
        assert_eq!(m.first_violation(), None);
        assert_eq!(m.dims[2], 2 + 2 * 2 + 1);
        assert!(validate_cyclic(&free_cyclic(&m)).is_valid());
    }

    #[test]
    fn moore_homology_matches_chain_homology() {
        // C: ℚ ← ℚ, d = 0, so H_0 = H_1 = ℚ
        let m = dold_kan(&[SparseMatrix::zeros(0, 1), SparseMatrix::zeros(1, 1)], 4);
        let b = |q: usize| {
            let mut acc = SparseMatrix::zeros(m.dims[q - 1], m.dims[q]);
            for (i, f) in m.faces[q].iter().enumerate() {
                let sign = if i % 2 == 0 {
                    Scalar::ONE
                } else {
                    -Scalar::ONE
                };
                acc = acc.axpy(&sign, f);
            }
            acc
        };
        assert_eq!(homology_at(&b(2), &b(1)).unwrap().dim(), 1);
        assert_eq!(homology_at(&b(3), &b(2)).unwrap().dim(), 0);
    }

    #[test]
    fn basis_change_keeps_identities() {
        let m = dold_kan(&[SparseMatrix::zeros(0, 1), SparseMatrix::zeros(1, 1)], 3);
        let p: Vec<SparseMatrix> = m
            .dims
            .iter()
            .map(|&n| {
                let mut t = SparseMatrix::identity(n);
                if n > 1 {
                    t.set_col(
                        1,
                        SparseVec::from_entries(alloc::vec![
                            (0, Scalar::from_int(3)),
                            (1, Scalar::ONE)
                        ]),
                    );
                }
                t
            })
            .collect();
        let c = change_basis(&m, &p).unwrap();
        assert_eq!(c.first_violation(), None);
        assert_ne!(c, m);
    }
}
