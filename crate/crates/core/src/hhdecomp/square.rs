use alloc::vec::Vec;

use super::hh::{hh, tensor_power_maps, HochschildModule};
use super::partition::gap_set;
use super::weight::{labeled_piece, LabeledPiece};
use super::HhError;
use crate::algcore::SplitSquare;
use crate::cyccat::CyclicModule;
use crate::exactla::{decompose, SparseVec};

/// The iterated fiber of `HH` over a split square, on the corner basis
/// `I(0) ∪ I(1) ∪ I(2)`.
#[derive(Clone, Debug)]
pub struct IteratedFiber {
    pub hh: HochschildModule,
    /// Piece label (0, 1, 2) of each corner basis element.
    pub labels: Vec<u8>,
    /// Words with at least one `I(1)` letter and at least one `I(2)` letter.
    pub keep: Vec<Vec<usize>>,
    pub module: CyclicModule,
    /// `dim ker(HH(A⁰) → HH(A¹) ⊕ HH(A²))` per degree.
    pub kernel_dims: Vec<usize>,
    /// Whether the kernel equals the span of the labeled words in every degree.
    pub kernel_matches_labels: bool,
    /// `H(k)` for `k = 1, 2, …`: words with `|A_f| = k`.
    pub pieces: Vec<(usize, LabeledPiece)>,
}

impl IteratedFiber {
    pub fn dims(&self) -> Vec<usize> {
        self.keep.iter().map(Vec::len).collect()
    }

    pub fn dims_add_up(&self) -> bool {
        (0..self.keep.len()).all(|q| {
            self.pieces
                .iter()
                .map(|(_, p)| p.keep[q].len())
                .sum::<usize>()
                == self.keep[q].len()
        })
    }
}

pub(crate) fn in_fiber(f: &[u8]) -> bool {
    f.contains(&1) && f.contains(&2)
}

/// Computes the iterated fiber as a degreewise kernel and as a labeled sum,
/// then splits it by `|A_f|`. Requires multiplicative unital sections, so
/// that `I(0)` is a subalgebra and `|A_f|` is preserved by faces.
pub fn split_square_ifib(
    s: &SplitSquare,
    max_degree: usize,
    budget: usize,
) -> Result<IteratedFiber, HhError> {
    if !s.multiplicative_sections {
        return Err(HhError::NonMultiplicativeSections);
    }
    let labels = s.piece_labels();
    let h = hh(&s.corner, max_degree, budget)?;
    let keep = h.select(&labels, in_fiber);
    let p1 = tensor_power_maps(&s.p1.matrix, max_degree);
    let p2 = tensor_power_maps(&s.p2.matrix, max_degree);
    let mut kernel_dims = Vec::with_capacity(max_degree + 1);
    let mut kernel_matches_labels = true;
    for q in 0..=max_degree {
        let stacked = p1[q].vstack(&p2[q]);
        let dec = decompose(&stacked);
        kernel_dims.push(dec.kernel.dim());
        let words_in_kernel = keep[q]
            .iter()
            .all(|&w| dec.kernel.contains(&SparseVec::unit(w)));
        if !(words_in_kernel && dec.kernel.dim() == keep[q].len()) {
            kernel_matches_labels = false;
        }
    }
    let module = h.module.restrict(&keep);
    let mut pieces = Vec::new();
    for k in 1..=max_degree + 1 {
        let piece_keep: Vec<Vec<usize>> = keep
            .iter()
            .enumerate()
            .map(|(q, ks)| {
                ks.iter()
                    .copied()
                    .filter(|&a| gap_set(&h.pattern(&labels, q, a)).members.len() == k)
                    .collect()
            })
            .collect();
        if piece_keep.iter().all(Vec::is_empty) {
            continue;
        }
        let piece = labeled_piece(&h, &labels, piece_keep, |f| gap_set(f).members, k)?;
        pieces.push((k, piece));
    }
    Ok(IteratedFiber {
        hh: h,
        labels,
        keep,
        module,
        kernel_dims,
        kernel_matches_labels,
        pieces,
    })
}
