use alloc::vec::Vec;

use super::almost_free::{almost_free, closure_escape, AlmostFree, Escape};
use super::hh::{hh, HochschildModule};
use super::partition::Partition;
use super::HhError;
use crate::algcore::{square_zero_extension, Algebra, Bimodule};
use crate::cyccat::CyclicModule;

/// A piece of a labeled Hochschild module cut out by a pattern predicate.
#[derive(Clone, Debug)]
pub struct LabeledPiece {
    pub keep: Vec<Vec<usize>>,
    pub module: CyclicModule,
    /// First structure map leaving the piece, if any.
    pub escape: Option<Escape>,
    pub retract: Option<AlmostFree>,
}

impl LabeledPiece {
    pub fn dims(&self) -> Vec<usize> {
        self.keep.iter().map(Vec::len).collect()
    }

    pub fn is_submodule(&self) -> bool {
        self.escape.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    /// `B ⋉ M`, basis of `B` first.
    pub algebra: Algebra,
    pub hh: HochschildModule,
    /// 0 on the basis of `B`, 1 on the basis of `M`.
    pub labels: Vec<u8>,
    /// `H(k)` for `k = 0, …, D + 1`.
    pub pieces: Vec<LabeledPiece>,
}

impl WeightDecomposition {
    /// Whether the piece dimensions add up to the ambient ones in every degree.
    pub fn dims_add_up(&self) -> bool {
        (0..=self.hh.max_degree()).all(|q| {
            self.pieces.iter().map(|p| p.keep[q].len()).sum::<usize>() == self.hh.module.dim(q)
        })
    }
}

/// Pattern positions with a nonzero label.
fn support(pattern: &[u8]) -> Vec<usize> {
    (0..pattern.len()).filter(|&j| pattern[j] != 0).collect()
}

fn marks_for(
    hh: &HochschildModule,
    labels: &[u8],
    keep: &[Vec<usize>],
    mark: impl Fn(&[u8]) -> Vec<usize>,
) -> Vec<Vec<Vec<usize>>> {
    keep.iter()
        .enumerate()
        .map(|(q, k)| k.iter().map(|&a| mark(&hh.pattern(labels, q, a))).collect())
        .collect()
}

/// Builds a piece, certifies closure, and if `scalar > 0` the retraction
/// through `j_*G` with `G` the basis elements whose position 0 is marked.
pub(crate) fn labeled_piece(
    hh: &HochschildModule,
    labels: &[u8],
    keep: Vec<Vec<usize>>,
    mark: impl Fn(&[u8]) -> Vec<usize>,
    scalar: usize,
) -> Result<LabeledPiece, HhError> {
    let escape = closure_escape(&hh.module, &keep, true);
    let module = hh.module.restrict(&keep);
    let retract = if escape.is_none() && scalar > 0 {
        let marks = marks_for(hh, labels, &keep, mark);
        Some(almost_free(&module, &marks, scalar)?)
    } else {
        None
    };
    Ok(LabeledPiece {
        keep,
        module,
        escape,
        retract,
    })
}

/// `HH(B ⋉ M) = ⊕_k H(k)`, with `H(k)` the words with exactly `k` letters
/// from `M`, each retracting through `j_*G(k)` with composite `k · id`.
pub fn weight_decompose(
    b: &Algebra,
    m: &Bimodule,
    max_degree: usize,
    budget: usize,
) -> Result<WeightDecomposition, HhError> {
    let (a, _) = square_zero_extension(b, m).map_err(HhError::Algebra)?;
    let labels: Vec<u8> = (0..a.dim()).map(|i| u8::from(i >= b.dim())).collect();
    let h = hh(&a, max_degree, budget)?;
    let mut pieces = Vec::new();
    for k in 0..=max_degree + 1 {
        let keep = h.select(&labels, |f| f.iter().filter(|&&v| v == 1).count() == k);
        pieces.push(labeled_piece(&h, &labels, keep, support, k)?);
    }
    Ok(WeightDecomposition {
        algebra: a,
        hh: h,
        labels,
        pieces,
    })
}

#[derive(Clone, Debug)]
pub struct PartitionPiece {
    pub partition: Partition,
    /// `A₀ ⋉ (A₁ ⊕ … ⊕ A_l)`.
    pub algebra: Algebra,
    pub hh: HochschildModule,
    /// 0 on `A₀`, `j` on the basis of `A_j`.
    pub labels: Vec<u8>,
    pub piece: LabeledPiece,
}

/// `H(P)`: words whose nonzero labels are a rearrangement of the parts of
/// `P`. The retraction is indexed by positions in the support, so the
/// composite is multiplication by the length of `P`.
pub fn partition_decompose(
    a0: &Algebra,
    bimods: &[Bimodule],
    p: &Partition,
    max_degree: usize,
    budget: usize,
) -> Result<PartitionPiece, HhError> {
    let l = bimods.len();
    if p.parts.is_empty() {
        return Err(HhError::InvalidArgument(
            "partition must have positive weight",
        ));
    }
    if let Some(&big) = p.parts.iter().find(|&&x| x > l) {
        return Err(HhError::PartTooLarge {
            part: big,
            bimodules: l,
        });
    }
    let sum = bimods[1..]
        .iter()
        .fold(bimods[0].clone(), |acc, x| acc.direct_sum(x));
    let (a, _) = square_zero_extension(a0, &sum).map_err(HhError::Algebra)?;
    let mut labels = alloc::vec![0u8; a0.dim()];
    for (j, m) in bimods.iter().enumerate() {
        labels.extend(core::iter::repeat_n(j as u8 + 1, m.dim()));
    }
    let h = hh(&a, max_degree, budget)?;
    let keep = h.select(&labels, |f| p.matches(f));
    let piece = labeled_piece(&h, &labels, keep, support, p.length())?;
    Ok(PartitionPiece {
        partition: p.clone(),
        algebra: a,
        hh: h,
        labels,
        piece,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hhdecomp::hh::DEFAULT_WORD_BUDGET;
    use alloc::vec;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn weights_over_rationals() {
        let q = Algebra::rationals();
        let m = Bimodule::regular(&q);
        let w = weight_decompose(&q, &m, 5, DEFAULT_WORD_BUDGET).unwrap();
        assert!(w.dims_add_up());
        for (k, piece) in w.pieces.iter().enumerate() {
            assert!(piece.is_submodule());
            for qd in 0..=5 {
                assert_eq!(piece.keep[qd].len(), binom(qd + 1, k));
            }
            if k > 0 {
                let r = piece.retract.as_ref().unwrap();
                assert!(r.composite_holds(), "weight {k}");
                assert_eq!(r.scalar, k);
            }
        }
        // H(0) is HH(B)
        assert_eq!(w.pieces[0].dims(), vec![1; 6]);
    }

    #[test]
    fn two_bimodule_partition() {
        let q = Algebra::rationals();
        let m = Bimodule::regular(&q);
        let p = Partition::new(vec![2, 1]).unwrap();
        let piece =
            partition_decompose(&q, &[m.clone(), m.clone()], &p, 4, DEFAULT_WORD_BUDGET).unwrap();
        for qd in 0..=4 {
            assert_eq!(piece.piece.keep[qd].len(), (qd + 1) * qd);
        }
        let r = piece.piece.retract.as_ref().unwrap();
        assert_eq!(r.scalar, 2);
        assert!(r.composite_holds());
        let single = Partition::new(vec![2]).unwrap();
        let piece =
            partition_decompose(&q, &[m.clone(), m], &single, 4, DEFAULT_WORD_BUDGET).unwrap();
        assert!(piece.piece.retract.unwrap().composite_holds());
    }

    #[test]
    fn part_too_large() {
        let q = Algebra::rationals();
        let m = Bimodule::regular(&q);
        let p = Partition::new(vec![2]).unwrap();
        assert!(matches!(
            partition_decompose(&q, &[m], &p, 2, DEFAULT_WORD_BUDGET),
            Err(HhError::PartTooLarge {
                part: 2,
                bimodules: 1
            })
        ));
    }

    #[test]
    fn ones_partition_matches_weight() {
        let q = Algebra::rationals();
        let m = Bimodule::regular(&q);
        let w = weight_decompose(&q, &m, 4, DEFAULT_WORD_BUDGET).unwrap();
        for k in 1..=3 {
            let p = Partition::new(vec![1; k]).unwrap();
            let piece =
                partition_decompose(&q, core::slice::from_ref(&m), &p, 4, DEFAULT_WORD_BUDGET)
                    .unwrap();
            assert_eq!(piece.piece.keep, w.pieces[k].keep);
            assert_eq!(piece.piece.retract.unwrap().scalar, k);
        }
    }
}
