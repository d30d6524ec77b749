//! Vanishing of `HP` on free cyclic modules `j_*N`: `I: HH_n → HC_n` is onto
//! and `S` is zero, so every `S`-tower has zero maps.

use alloc::vec::Vec;

use super::hp::{hp_of_ladder, HpReport};
use super::ladder::HcLadder;
use super::sbi::block_sbi;
use crate::cyccat::{free_cyclic, SimplicialModule};
use crate::exactla::LinAlgError;

#[derive(Clone, Debug)]
pub struct FreeVanishingReport {
    pub max_degree: usize,
    pub hh_dims: Vec<usize>,
    pub hc_dims: Vec<usize>,
    /// `rank I_n` for `n ≤ D − 1`.
    pub i_ranks: Vec<usize>,
    pub first_non_surjective: Option<usize>,
    pub first_nonzero_s: Option<usize>,
    pub hp: HpReport,
    /// Odd columns and rows of the bicomplex were exact where certified.
    pub acyclicity_holds: bool,
}

impl FreeVanishingReport {
    pub fn surjective(&self) -> bool {
        self.first_non_surjective.is_none()
    }

    pub fn s_zero(&self) -> bool {
        self.first_nonzero_s.is_none()
    }

    /// `None` while either parity tower is undetermined.
    pub fn hp_vanishes(&self) -> Option<bool> {
        let dims = [self.hp.hp_dim(0)?, self.hp.hp_dim(1)?];
        Some(dims == [0, 0])
    }
}

/// Builds `j_*N` and checks the three facts in degrees `≤ D − 1`.
pub fn free_vanishing(
    n: &SimplicialModule,
    window: usize,
) -> Result<FreeVanishingReport, LinAlgError> {
    let m = free_cyclic(n);
    let l = HcLadder::new(&m);
    let d = l.max_degree();
    let parts = l
        .data
        .iter()
        .map(|b| block_sbi(&b.window, &b.hc))
        .collect::<Result<Vec<_>, _>>()?;
    let hh_dims: Vec<usize> = (0..d)
        .map(|q| parts.iter().map(|p| p.hh[q].dim()).sum())
        .collect();
    let hc_dims = l.dims();
    let i_ranks: Vec<usize> = (0..d)
        .map(|q| parts.iter().map(|p| p.i[q].rank()).sum())
        .collect();
    let first_non_surjective = (0..d).find(|&q| i_ranks[q] != hc_dims[q]);
    let first_nonzero_s = (2..d).find(|&q| !l.s_matrix(q).is_zero());
    let acyclicity_holds = l.data.iter().all(|b| {
        b.window.maps.odd_column_failures().is_empty() && b.window.maps.row_failures().is_empty()
    });
    Ok(FreeVanishingReport {
        max_degree: d,
        hh_dims,
        hc_dims,
        i_ranks,
        first_non_surjective,
        first_nonzero_s,
        hp: hp_of_ladder(&l, window),
        acyclicity_holds,
    })
}
