//! The Mayer–Vietoris sequence of `HP` for a split square
//! `A⁰ = A¹ ×_{A¹²} A²`.
//!
//! `A¹` and `A²` are rebased onto the images of the corner pieces, so that
//! every map in sight sends basis words to basis words or to zero. With `K`
//! the words of `A⁰` containing an `I(1)` letter and `L` the words of `A¹`
//! containing a `ker f¹` letter, there are short exact sequences
//! `0 → K → HH(A⁰) → HH(A²) → 0`, `0 → L → HH(A¹) → HH(A¹²) → 0` and
//! `0 → ifib → K → L → 0`. Once `HP(ifib) = 0`, `HP(K) ≅ HP(L)` and the
//! boundary is `HP_n(A¹²) → HP_{n−1}(L) ≅ HP_{n−1}(K) → HP_{n−1}(A⁰)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::hp::{hp_of_ladder, restrict_to_images, HpReport};
use super::ladder::{apply_degreewise, HcLadder};
use crate::algcore::{AlgebraError, AlgebraMap, SplitSquare};
use crate::cyccat::CyclicModule;
use crate::exactla::{LinAlgError, Solver, SparseMatrix, SparseVec, Subspace};
use crate::hhdecomp::{hh, split_square_ifib, tensor_power_maps, HhError};

#[derive(Clone, Debug, PartialEq)]
pub enum ExcisionError {
    Hh(HhError),
    Algebra(AlgebraError),
    LinAlg(LinAlgError),
    /// Some tower needed for the sequence did not stabilize.
    Unstabilized(String),
    /// No degrees where all towers are stable on both sides of a node.
    NoStableDegrees,
    /// `HP(K) → HP(L)` is not an isomorphism.
    ComparisonNotIso {
        degree: usize,
    },
    /// The boundary leaves an eventual image, so naturality failed.
    NotNatural(String),
}

impl fmt::Display for ExcisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExcisionError::Hh(e) => write!(f, "{e}"),
            ExcisionError::Algebra(e) => write!(f, "{e}"),
            ExcisionError::LinAlg(e) => write!(f, "{e}"),
            ExcisionError::Unstabilized(w) => write!(f, "tower of {w} did not stabilize"),
            ExcisionError::NoStableDegrees => {
                f.write_str("no degree has stable towers on both sides")
            }
            ExcisionError::ComparisonNotIso { degree } => {
                write!(f, "HP(K) → HP(L) is not an isomorphism in degree {degree}")
            }
            ExcisionError::NotNatural(w) => write!(f, "{w} leaves the eventual image"),
        }
    }
}

impl core::error::Error for ExcisionError {}

impl From<HhError> for ExcisionError {
    fn from(e: HhError) -> Self {
        ExcisionError::Hh(e)
    }
}

impl From<AlgebraError> for ExcisionError {
    fn from(e: AlgebraError) -> Self {
        ExcisionError::Algebra(e)
    }
}

impl From<LinAlgError> for ExcisionError {
    fn from(e: LinAlgError) -> Self {
        ExcisionError::LinAlg(e)
    }
}

/// Position in `HP(A⁰) → HP(A¹) ⊕ HP(A²) → HP(A¹²) → HP(A⁰)[−1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MvPosition {
    Corner,
    Sides,
    Base,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvNode {
    pub position: MvPosition,
    pub degree: usize,
    pub dim: usize,
    pub incoming_rank: usize,
    pub outgoing_rank: usize,
    pub composite_zero: bool,
}

impl MvNode {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.incoming_rank + self.outgoing_rank == self.dim
    }
}

#[derive(Clone, Debug)]
pub struct ExcisionReport {
    pub max_degree: usize,
    pub window: usize,
    pub corner: HpReport,
    pub a1: HpReport,
    pub a2: HpReport,
    pub a12: HpReport,
    pub k: HpReport,
    pub l: HpReport,
    pub fiber: HpReport,
    /// `HP(ifib) = 0` in both parities.
    pub fiber_vanishes: bool,
    /// Every `H(k)` retracts through a free cyclic module with composite `k`.
    pub fiber_retracts_hold: bool,
    /// The degrees where the even and odd nodes are read off.
    pub node_degrees: [usize; 2],
    pub nodes: Vec<MvNode>,
}

impl ExcisionReport {
    pub fn all_exact(&self) -> bool {
        self.nodes.iter().all(MvNode::exact)
    }
}

/// A map of algebras sending basis element `b` to basis element `f(b)` or 0.
fn letter_matrix(n_src: usize, n_dst: usize, f: impl Fn(usize) -> Option<usize>) -> SparseMatrix {
    SparseMatrix::from_columns(
        n_dst,
        (0..n_src)
            .map(|b| f(b).map_or_else(SparseVec::new, SparseVec::unit))
            .collect(),
    )
}

/// Degreewise matrices of a cyclic map between two selections of words,
/// given the ambient degreewise maps.
fn restricted_maps(
    ambient: &[SparseMatrix],
    src_keep: &[Vec<usize>],
    dst_keep: &[Vec<usize>],
    dst_dims: &[usize],
) -> Vec<SparseMatrix> {
    ambient
        .iter()
        .enumerate()
        .map(|(q, m)| {
            let mut pos = vec![usize::MAX; dst_dims[q]];
            for (i, &w) in dst_keep[q].iter().enumerate() {
                pos[w] = i;
            }
            let cols = src_keep[q]
                .iter()
                .map(|&w| {
                    m.col(w)
                        .reindex(|r| (pos[r] != usize::MAX).then_some(pos[r]))
                })
                .collect();
            SparseMatrix::from_columns(dst_keep[q].len(), cols)
        })
        .collect()
}

fn inclusion_maps(keep: &[Vec<usize>], dims: &[usize]) -> Vec<SparseMatrix> {
    keep.iter()
        .zip(dims)
        .map(|(k, &n)| {
            SparseMatrix::from_columns(n, k.iter().map(|&w| SparseVec::unit(w)).collect())
        })
        .collect()
}

fn projection_maps(keep: &[Vec<usize>], dims: &[usize]) -> Vec<SparseMatrix> {
    keep.iter()
        .zip(dims)
        .map(|(k, &n)| {
            let mut cols = vec![SparseVec::new(); n];
            for (i, &w) in k.iter().enumerate() {
                cols[w] = SparseVec::unit(i);
            }
            SparseMatrix::from_columns(k.len(), cols)
        })
        .collect()
}

struct Piece {
    ladder: HcLadder,
    hp: HpReport,
}

impl Piece {
    fn new(m: &CyclicModule, window: usize) -> Self {
        let ladder = HcLadder::new(m);
        let hp = hp_of_ladder(&ladder, window);
        Self { ladder, hp }
    }

    fn image(&self, n: usize) -> Subspace {
        let p = n % 2;
        self.ladder
            .tower(p)
            .tower
            .eventual_images()
            .swap_remove((n - p) / 2)
    }

    /// Degrees of the stable tail of a parity.
    fn tail(&self, p: usize, window: usize) -> Vec<usize> {
        let r = &self.hp.parities[p];
        match r.stable_stage {
            Some(s) => r
                .degrees
                .iter()
                .skip(s)
                .take(window.max(1))
                .copied()
                .collect(),
            None => Vec::new(),
        }
    }
}

/// Map on eventual images induced by degreewise maps.
fn image_map(
    f: &[SparseMatrix],
    src: &Piece,
    dst: &Piece,
    n: usize,
    what: &str,
) -> Result<SparseMatrix, ExcisionError> {
    let m = src.ladder.induced_map(f, &dst.ladder, n)?;
    restrict_to_images(&m, &src.image(n), &dst.image(n))
        .ok_or_else(|| ExcisionError::NotNatural(format!("{what} in degree {n}")))
}

/// Checks the Mayer–Vietoris sequence of `HP` on eventual images of the
/// `S`-towers at depth `D`, one node of each kind per parity.
pub fn mayer_vietoris(
    s: &SplitSquare,
    max_degree: usize,
    window: usize,
    budget: usize,
) -> Result<ExcisionReport, ExcisionError> {
    let d = max_degree;
    let n12 = s.a12.dim();
    let k1 = s.ranges[1].len();
    let k2 = s.ranges[2].len();
    let n0 = s.corner.dim();

    // A¹ on p¹(I(0) ∪ I(1)) and A² on p²(I(0) ∪ I(2)); labels follow the corner.
    let side1: Vec<usize> = (0..n12 + k1).collect();
    let side2: Vec<usize> = (0..n12).chain(n12 + k1..n0).collect();
    let label = |i: &usize| s.corner.labels()[*i].clone();
    let a1 = s.a1.change_basis(
        &s.p1.matrix.select_cols(&side1),
        side1.iter().map(label).collect(),
    )?;
    let a2 = s.a2.change_basis(
        &s.p2.matrix.select_cols(&side2),
        side2.iter().map(label).collect(),
    )?;
    let p1 = AlgebraMap::new(
        &s.corner,
        &a1,
        letter_matrix(n0, n12 + k1, |b| (b < n12 + k1).then_some(b)),
    )?;
    let p2 = AlgebraMap::new(
        &s.corner,
        &a2,
        letter_matrix(n0, n12 + k2, |b| {
            if b < n12 {
                Some(b)
            } else if b >= n12 + k1 {
                Some(b - k1)
            } else {
                None
            }
        }),
    )?;
    let f1 = AlgebraMap::new(
        &a1,
        &s.a12,
        letter_matrix(n12 + k1, n12, |b| (b < n12).then_some(b)),
    )?;
    let f2 = AlgebraMap::new(
        &a2,
        &s.a12,
        letter_matrix(n12 + k2, n12, |b| (b < n12).then_some(b)),
    )?;
    let section = letter_matrix(n12, n12 + k1, Some);

    let h0 = hh(&s.corner, d, budget)?;
    let h1 = hh(&a1, d, budget)?;
    let h2 = hh(&a2, d, budget)?;
    let h12 = hh(&s.a12, d, budget)?;
    let labels0 = s.piece_labels();
    let labels1: Vec<u8> = (0..n12 + k1).map(|b| u8::from(b >= n12)).collect();
    let keep_k = h0.select(&labels0, |f| f.contains(&1));
    let keep_l = h1.select(&labels1, |f| f.contains(&1));
    let fib = split_square_ifib(s, d, budget)?;

    let corner = Piece::new(&h0.module, window);
    let side_a1 = Piece::new(&h1.module, window);
    let side_a2 = Piece::new(&h2.module, window);
    let base = Piece::new(&h12.module, window);
    let kp = Piece::new(&h0.module.restrict(&keep_k), window);
    let lp = Piece::new(&h1.module.restrict(&keep_l), window);
    let fiber = hp_of_ladder(&HcLadder::new(&fib.module), window);
    let fiber_vanishes = fiber.hp_dim(0) == Some(0) && fiber.hp_dim(1) == Some(0);
    let fiber_retracts_hold = fib
        .pieces
        .iter()
        .all(|(_, p)| p.retract.as_ref().is_some_and(|r| r.composite_holds()));

    let named = [
        ("A⁰", &corner),
        ("A¹", &side_a1),
        ("A²", &side_a2),
        ("A¹²", &base),
        ("K", &kp),
        ("L", &lp),
    ];
    for (name, p) in named {
        if !p.hp.all_stabilized() {
            return Err(ExcisionError::Unstabilized(String::from(name)));
        }
    }
    let common_tail = |p: usize| -> Vec<usize> {
        let mut t = corner.tail(p, window);
        for (_, q) in named {
            let other = q.tail(p, window);
            t.retain(|x| other.contains(x));
        }
        t
    };
    let tails = [common_tail(0), common_tail(1)];
    let pick = |p: usize| {
        tails[p]
            .iter()
            .copied()
            .find(|&n| n >= 1 && tails[1 - p].contains(&(n - 1)) && tails[1 - p].contains(&(n + 1)))
    };
    let (Some(even), Some(odd)) = (pick(0), pick(1)) else {
        return Err(ExcisionError::NoStableDegrees);
    };

    let p1_maps = hh_maps(&p1, d);
    let p2_maps = hh_maps(&p2, d);
    let f1_maps = hh_maps(&f1, d);
    let f2_maps = hh_maps(&f2, d);
    let section_maps = tensor_power_maps(&section, d);
    let k_to_l = restricted_maps(&p1_maps, &keep_k, &keep_l, h1.module.dims());
    let k_in_corner = inclusion_maps(&keep_k, h0.module.dims());
    let onto_l = projection_maps(&keep_l, h1.module.dims());

    let alpha = |n: usize| -> Result<SparseMatrix, ExcisionError> {
        Ok(image_map(&p1_maps, &corner, &side_a1, n, "p¹")?
            .vstack(&image_map(&p2_maps, &corner, &side_a2, n, "p²")?))
    };
    let beta = |n: usize| -> Result<SparseMatrix, ExcisionError> {
        let b1 = image_map(&f1_maps, &side_a1, &base, n, "f¹")?;
        let b2 = image_map(&f2_maps, &side_a2, &base, n, "f²")?;
        Ok(b1.hstack(&b2.neg()))
    };
    // HP_n(A¹²) → HP_{n−1}(A⁰)
    let boundary = |n: usize| -> Result<SparseMatrix, ExcisionError> {
        let e12 = base.image(n);
        let e_l = lp.image(n - 1);
        let psi = image_map(&k_to_l, &kp, &lp, n - 1, "K → L")?;
        if psi.nrows() != psi.ncols() || psi.rank() != psi.ncols() {
            return Err(ExcisionError::ComparisonNotIso { degree: n - 1 });
        }
        let psi_inv = Solver::new(&psi);
        let iota = image_map(&k_in_corner, &kp, &corner, n - 1, "K ⊆ A⁰")?;
        let dims12 = h12.module.dims();
        let dims1 = h1.module.dims();
        let dims_l: Vec<usize> = keep_l.iter().map(Vec::len).collect();
        let mut cols = Vec::with_capacity(e12.dim());
        for v in e12.basis_vectors() {
            let mut z = SparseVec::new();
            for (g, c) in v.iter() {
                z.axpy(c, &base.ladder.representative(n, g));
            }
            let y = apply_degreewise(&section_maps, dims12, dims1, n as i64, 0, d as i64, &z);
            let dy = side_a1.ladder.differential(n, &y);
            let w = apply_degreewise(&onto_l, dims1, &dims_l, n as i64 - 1, 0, d as i64, &dy);
            let class = lp.ladder.class_of(n - 1, &w)?;
            let in_l = e_l
                .coordinates(&class)
                .ok_or_else(|| ExcisionError::NotNatural(format!("boundary in degree {n}")))?;
            let in_k = psi_inv
                .solve(&in_l)
                .ok_or(ExcisionError::ComparisonNotIso { degree: n - 1 })?;
            cols.push(iota.mul_vec(&in_k));
        }
        Ok(SparseMatrix::from_columns(iota.nrows(), cols))
    };

    let mut nodes = Vec::new();
    for n in [even, odd] {
        let a = alpha(n)?;
        let b = beta(n)?;
        let del_in = boundary(n + 1)?;
        let del_out = boundary(n)?;
        nodes.push(MvNode {
            position: MvPosition::Corner,
            degree: n,
            dim: corner.image(n).dim(),
            incoming_rank: del_in.rank(),
            outgoing_rank: a.rank(),
            composite_zero: a.mul(&del_in).is_zero(),
        });
        nodes.push(MvNode {
            position: MvPosition::Sides,
            degree: n,
            dim: side_a1.image(n).dim() + side_a2.image(n).dim(),
            incoming_rank: a.rank(),
            outgoing_rank: b.rank(),
            composite_zero: b.mul(&a).is_zero(),
        });
        nodes.push(MvNode {
            position: MvPosition::Base,
            degree: n,
            dim: base.image(n).dim(),
            incoming_rank: b.rank(),
            outgoing_rank: del_out.rank(),
            composite_zero: del_out.mul(&b).is_zero(),
        });
    }

    Ok(ExcisionReport {
        max_degree: d,
        window,
        corner: corner.hp,
        a1: side_a1.hp,
        a2: side_a2.hp,
        a12: base.hp,
        k: kp.hp,
        l: lp.hp,
        fiber,
        fiber_vanishes,
        fiber_retracts_hold,
        node_degrees: [even, odd],
        nodes,
    })
}

fn hh_maps(f: &AlgebraMap, d: usize) -> Vec<SparseMatrix> {
    tensor_power_maps(&f.matrix, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::{split_square, truncated_polynomial, Algebra};
    use crate::cychom::DEFAULT_WINDOW;
    use crate::hhdecomp::DEFAULT_WORD_BUDGET;

    fn augmentation(a: &Algebra) -> AlgebraMap {
        let q = Algebra::rationals();
        let cols = (0..a.dim())
            .map(|i| {
                if i == 0 {
                    SparseVec::unit(0)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        AlgebraMap::new(a, &q, SparseMatrix::from_columns(1, cols)).unwrap()
    }

    fn unit_section(a: &Algebra) -> SparseMatrix {
        SparseMatrix::from_columns(a.dim(), vec![SparseVec::unit(0)])
    }

    #[test]
    fn dual_square() {
        let (e, _) = truncated_polynomial(2).unwrap();
        let q = Algebra::rationals();
        let s = split_square(
            &e,
            &e,
            &q,
            &augmentation(&e),
            &augmentation(&e),
            &unit_section(&e),
            &unit_section(&e),
        )
        .unwrap();
        let r = mayer_vietoris(&s, 9, DEFAULT_WINDOW, DEFAULT_WORD_BUDGET).unwrap();
        assert!(r.fiber_vanishes);
        assert!(r.fiber_retracts_hold);
        assert!(r.all_exact(), "{:?}", r.nodes);
        assert_eq!(r.nodes.len(), 6);
    }

    #[test]
    fn cubic_square() {
        let (x, _) = truncated_polynomial(3).unwrap();
        let q = Algebra::rationals();
        let id = AlgebraMap::identity(&q);
        let s = split_square(
            &x,
            &q,
            &q,
            &augmentation(&x),
            &id,
            &unit_section(&x),
            &SparseMatrix::identity(1),
        )
        .unwrap();
        let r = mayer_vietoris(&s, 9, DEFAULT_WINDOW, DEFAULT_WORD_BUDGET).unwrap();
        assert!(r.fiber_vanishes);
        assert!(r.all_exact(), "{:?}", r.nodes);
        assert_eq!(r.corner.hp_dim(0), Some(1));
    }

    #[test]
    fn identity_square_collapses() {
        let q = Algebra::rationals();
        let id = AlgebraMap::identity(&q);
        let s = split_square(
            &q,
            &q,
            &q,
            &id,
            &id,
            &SparseMatrix::identity(1),
            &SparseMatrix::identity(1),
        )
        .unwrap();
        let r = mayer_vietoris(&s, 9, DEFAULT_WINDOW, DEFAULT_WORD_BUDGET).unwrap();
        assert!(r.all_exact());
        assert_eq!(r.k.hp_dim(0), Some(0));
    }
}
