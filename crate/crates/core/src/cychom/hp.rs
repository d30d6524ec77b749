//! Periodic cyclic homology from the `S`-towers of `HC`.

use alloc::vec::Vec;
use core::fmt;

use super::ladder::HcLadder;
use crate::cyccat::CyclicModule;
use crate::exactla::{tower_limit, LinAlgError, SparseMatrix, Subspace, TowerStatus};

/// Default number of stages over which eventual images must be constant.
pub const DEFAULT_WINDOW: usize = 3;

/// Smallest `D` giving both parity towers `window + 2` stages.
pub fn min_hp_depth(window: usize) -> usize {
    2 * window.max(1) + 3
}

/// The `S`-tower of one parity and what it says about `lim` and `lim¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    pub parity: usize,
    /// `HC` degrees of the ordinary stages, shallowest first.
    pub degrees: Vec<usize>,
    /// The last stage is `Z_D` mapped in by `S` rather than `HC_D`.
    pub deepest_is_cycles: bool,
    pub stage_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    pub status: TowerStatus,
    /// Fewer than `window + 2` stages were available.
    pub insufficient_depth: bool,
    /// Stage where the stable tail begins.
    pub stable_stage: Option<usize>,
    pub lim_dim: Option<usize>,
}

impl ParityReport {
    pub fn is_stabilized(&self) -> bool {
        self.status == TowerStatus::Stabilized
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpReport {
    pub max_degree: usize,
    pub window: usize,
    pub hc_dims: Vec<usize>,
    /// Index 0 is the even tower, 1 the odd one.
    pub parities: Vec<ParityReport>,
}

impl HpReport {
    /// `dim HP` in a parity: `lim` of that tower plus `lim¹` of the other,
    /// known only once both have stabilized (stabilized towers have `lim¹ = 0`).
    pub fn hp_dim(&self, parity: usize) -> Option<usize> {
        let own = &self.parities[parity % 2];
        let other = &self.parities[(parity + 1) % 2];
        if own.is_stabilized() && other.is_stabilized() {
            own.lim_dim
        } else {
            None
        }
    }

    /// `lim¹` of the tower feeding `HP` in this parity vanishes.
    pub fn lim1_zero(&self, parity: usize) -> Option<bool> {
        self.parities[(parity + 1) % 2]
            .is_stabilized()
            .then_some(true)
    }

    pub fn all_stabilized(&self) -> bool {
        self.parities.iter().all(ParityReport::is_stabilized)
    }
}

pub fn hp(m: &CyclicModule, window: usize) -> HpReport {
    hp_of_ladder(&HcLadder::new(m), window)
}

pub fn hp_of_ladder(l: &HcLadder, window: usize) -> HpReport {
    let parities = (0..2)
        .map(|p| {
            let t = l.tower(p);
            let lim = tower_limit(&t.tower, window);
            let stages = t.tower.stages();
            let insufficient_depth = stages < window.max(1) + 2;
            let stabilized = lim.status == TowerStatus::Stabilized;
            ParityReport {
                parity: p,
                degrees: t.degrees,
                deepest_is_cycles: t.deepest_is_cycles,
                stage_dims: t.tower.spaces().to_vec(),
                image_dims: lim.image_dims,
                status: lim.status,
                insufficient_depth,
                stable_stage: stabilized.then(|| stages - 1 - window.max(1)),
                lim_dim: stabilized.then_some(lim.lim_dim),
            }
        })
        .collect();
    HpReport {
        max_degree: l.max_degree(),
        window,
        hc_dims: l.dims(),
        parities,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HpError {
    Unstabilized {
        parity: usize,
        side: &'static str,
    },
    /// The two ladders have different depth.
    DepthMismatch,
    /// The induced map leaves the eventual image of the target.
    NotNatural {
        parity: usize,
    },
    LinAlg(LinAlgError),
}

impl fmt::Display for HpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HpError::Unstabilized { parity, side } => {
                write!(f, "{side} tower of parity {parity} has not stabilized")
            }
            HpError::DepthMismatch => {
                f.write_str("source and target were computed to different depths")
            }
            HpError::NotNatural { parity } => write!(
                f,
                "induced map leaves the eventual image in parity {parity}"
            ),
            HpError::LinAlg(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for HpError {}

impl From<LinAlgError> for HpError {
    fn from(e: LinAlgError) -> Self {
        HpError::LinAlg(e)
    }
}

/// The map on `HP` in one parity, read off at the start of the stable tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityMap {
    pub parity: usize,
    pub degree: usize,
    /// In coordinates of the eventual images of source and target.
    pub matrix: SparseMatrix,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
    /// `f_* S = S f_*` on `HC` along the tower.
    pub commutes_with_s: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpMap {
    pub source: HpReport,
    pub target: HpReport,
    pub parities: Vec<ParityMap>,
}

impl HpMap {
    pub fn is_iso(&self) -> bool {
        self.parities.iter().all(|p| p.iso)
    }
}

/// Map on `HP` induced by degreewise maps `f_q: M_q → M'_q` commuting with
/// the cyclic structure.
pub fn hp_map(
    f: &[SparseMatrix],
    src: &HcLadder,
    dst: &HcLadder,
    window: usize,
) -> Result<HpMap, HpError> {
    if src.max_degree() != dst.max_degree() {
        return Err(HpError::DepthMismatch);
    }
    let source = hp_of_ladder(src, window);
    let target = hp_of_ladder(dst, window);
    let mut parities = Vec::with_capacity(2);
    for p in 0..2 {
        for (rep, side) in [(&source, "source"), (&target, "target")] {
            if rep.hp_dim(p).is_none() {
                return Err(HpError::Unstabilized { parity: p, side });
            }
        }
        let s_src = source.parities[p].stable_stage.unwrap();
        let s_dst = target.parities[p].stable_stage.unwrap();
        let stage = s_src.max(s_dst);
        let degree = source.parities[p].degrees[stage];
        let e_src = src.tower(p).tower.eventual_images().swap_remove(stage);
        let e_dst = dst.tower(p).tower.eventual_images().swap_remove(stage);
        let fstar = src.induced_map(f, dst, degree)?;
        let matrix =
            restrict_to_images(&fstar, &e_src, &e_dst).ok_or(HpError::NotNatural { parity: p })?;
        let rank = matrix.rank();
        let commutes_with_s = source.parities[p]
            .degrees
            .iter()
            .filter(|&&n| n >= 2)
            .try_fold(true, |ok, &n| {
                let lhs = dst.s_matrix(n).mul(&src.induced_map(f, dst, n)?);
                let rhs = src.induced_map(f, dst, n - 2)?.mul(&src.s_matrix(n));
                Ok::<_, LinAlgError>(ok && lhs == rhs)
            })?;
        parities.push(ParityMap {
            parity: p,
            degree,
            source_dim: e_src.dim(),
            target_dim: e_dst.dim(),
            rank,
            iso: rank == e_src.dim() && rank == e_dst.dim(),
            matrix,
            commutes_with_s,
        });
    }
    Ok(HpMap {
        source,
        target,
        parities,
    })
}

/// `f` restricted to `E_src`, written in the basis of `E_dst`.
pub(crate) fn restrict_to_images(
    f: &SparseMatrix,
    e_src: &Subspace,
    e_dst: &Subspace,
) -> Option<SparseMatrix> {
    let cols = e_src
        .basis_vectors()
        .iter()
        .map(|v| e_dst.coordinates(&f.mul_vec(v)))
        .collect::<Option<Vec<_>>>()?;
    Some(SparseMatrix::from_columns(e_dst.dim(), cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyccat::{free_cyclic, SimplicialModule};

    #[test]
    fn rationals() {
        let r = hp(&CyclicModule::constant(9), DEFAULT_WINDOW);
        assert!(r.all_stabilized());
        assert_eq!(r.hp_dim(0), Some(1));
        assert_eq!(r.hp_dim(1), Some(0));
        assert_eq!(r.lim1_zero(0), Some(true));
    }

    #[test]
    fn free_constant_vanishes() {
        let r = hp(
            &free_cyclic(&SimplicialModule::constant(9, 1)),
            DEFAULT_WINDOW,
        );
        assert_eq!(r.hp_dim(0), Some(0));
        assert_eq!(r.hp_dim(1), Some(0));
    }

    #[test]
    fn minimal_depth_suffices() {
        for w in 1..=3 {
            let d = min_hp_depth(w);
            assert!(
                hp(&CyclicModule::constant(d), w).all_stabilized(),
                "window {w}"
            );
            assert!(
                !hp(&CyclicModule::constant(d - 1), w).all_stabilized(),
                "window {w}"
            );
        }
    }

    #[test]
    fn shallow_depth_is_undetermined() {
        let r = hp(&CyclicModule::constant(6), DEFAULT_WINDOW);
        assert!(r.parities[0].insufficient_depth);
        assert_eq!(r.hp_dim(0), None);
        let r = hp(&CyclicModule::constant(6), 1);
        assert_eq!(r.hp_dim(0), Some(1));
    }

    #[test]
    fn identity_map() {
        let m = CyclicModule::constant(9);
        let l = HcLadder::new(&m);
        let id: Vec<SparseMatrix> = m
            .dims()
            .iter()
            .map(|&n| SparseMatrix::identity(n))
            .collect();
        let map = hp_map(&id, &l, &l, DEFAULT_WINDOW).unwrap();
        assert!(map.is_iso());
        assert!(map.parities[0].matrix.is_identity());
        assert!(map.parities.iter().all(|p| p.commutes_with_s));
    }
}

#[cfg(test)]
mod nilpotent_tests {
    use super::*;
    use crate::algcore::{truncated_polynomial, Algebra, AlgebraMap};
    use crate::hhdecomp::{hh, hh_map, DEFAULT_WORD_BUDGET};

    fn augmentation_map(n: usize) -> HpMap {
        let (a, _) = truncated_polynomial(n).unwrap();
        let q = Algebra::rationals();
        let mut row = alloc::vec![0i64; n];
        row[0] = 1;
        let f = AlgebraMap::new(&a, &q, SparseMatrix::from_i64_rows(&[&row])).unwrap();
        let src = HcLadder::new(&hh(&a, 9, DEFAULT_WORD_BUDGET).unwrap().module);
        let dst = HcLadder::new(&hh(&q, 9, DEFAULT_WORD_BUDGET).unwrap().module);
        let g = hh_map(&f, 9);
        hp_map(&g.maps, &src, &dst, DEFAULT_WINDOW).unwrap()
    }

    #[test]
    fn dual_numbers_to_rationals() {
        let m = augmentation_map(2);
        assert!(m.is_iso());
        assert_eq!(m.source.hp_dim(0), Some(1));
        assert_eq!(m.source.hp_dim(1), Some(0));
        assert!(m.parities.iter().all(|p| p.commutes_with_s));
    }

    #[test]
    fn cubic_to_rationals() {
        let m = augmentation_map(3);
        assert!(m.is_iso());
        assert_eq!(m.source.hp_dim(0), Some(1));
        assert_eq!(m.source.hp_dim(1), Some(0));
    }
}
