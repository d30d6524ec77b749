//! Negative cyclic homology: columns `c ≤ 1` of the periodic bicomplex.
//!
//! The product total complex is the limit of the windows `[−2k, 1]`, each a
//! quotient of the next, so `HC⁻_n` sits in the Milnor sequence of the tower
//! `H_n[0, 1] ← H_n[−2, 1] ← H_n[−4, 1] ← …`. Stage `k` in degree `n` is
//! complete only if `n + 2k + 1 ≤ D`, since rows above `D` are missing.

use alloc::vec::Vec;

use super::ladder::{Blocks, HcLadder};
use super::window::{BicomplexWindow, ColumnMaps};
use crate::cyccat::CyclicModule;
use crate::exactla::{
    homology_at, induced_map, tower_limit, Homology, LinAlgError, SparseMatrix, SparseVec,
    Subspace, Tower, TowerStatus,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusDegree {
    pub degree: i64,
    /// `dim H_n[−2k, 1]` over the complete stages, starting from the first
    /// window that reaches column `n`.
    pub stage_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    pub status: TowerStatus,
    pub dim: Option<usize>,
}

impl MinusDegree {
    pub fn certified(&self) -> bool {
        self.dim.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcMinusReport {
    pub max_degree: usize,
    /// Number of window stages requested.
    pub depth: usize,
    pub window: usize,
    pub degrees: Vec<MinusDegree>,
}

impl HcMinusReport {
    pub fn dim(&self, n: i64) -> Option<usize> {
        self.degrees
            .iter()
            .find(|d| d.degree == n)
            .and_then(|d| d.dim)
    }

    /// Highest degree whose tower stabilized.
    pub fn certified_up_to(&self) -> Option<i64> {
        self.degrees
            .iter()
            .filter(|d| d.certified())
            .map(|d| d.degree)
            .max()
    }
}

/// Per block: stage homology, the projections between stages, and the tower.
struct BlockTower {
    stages: Vec<Homology>,
    windows: Vec<BicomplexWindow>,
    tower: Tower,
}

/// Stages `k0 .. k0 + count` used in degree `n`: the first window reaching
/// column `n`, then deeper ones while stage `k` is complete, `n + 2k + 1 ≤ D`.
fn stage_range(n: i64, d: usize, depth: usize) -> (usize, usize) {
    let k0 = if n < 0 { ((-n + 1) / 2) as usize } else { 0 };
    let room = d as i64 - 1 - n;
    if room < 0 {
        return (k0, 0);
    }
    let k_max = room as usize / 2;
    (
        k0,
        if k_max < k0 {
            0
        } else {
            depth.min(k_max - k0 + 1)
        },
    )
}

fn block_tower(
    maps: &ColumnMaps,
    n: i64,
    (k0, stages): (usize, usize),
) -> Result<BlockTower, LinAlgError> {
    let windows: Vec<BicomplexWindow> = (k0..k0 + stages)
        .map(|k| BicomplexWindow::new(maps.clone(), -2 * k as i64, 1))
        .collect();
    let homs = windows
        .iter()
        .map(|w| homology_at(&w.total_differential(n + 1), &w.total_differential(n)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut maps_k = Vec::with_capacity(stages.saturating_sub(1));
    for k in 0..stages.saturating_sub(1) {
        let deep = windows[k + 1].layout(n);
        let shallow = windows[k].layout(n);
        // the shallow layout is a suffix of the deep one
        let skip = deep.dim - shallow.dim;
        let proj = SparseMatrix::from_columns(
            shallow.dim,
            (0..deep.dim)
                .map(|i| {
                    if i < skip {
                        SparseVec::new()
                    } else {
                        SparseVec::unit(i - skip)
                    }
                })
                .collect(),
        );
        maps_k.push(induced_map(&proj, &homs[k + 1], &homs[k])?);
    }
    let spaces = if homs.is_empty() {
        alloc::vec![0]
    } else {
        homs.iter().map(Homology::dim).collect()
    };
    let tower = Tower::new(spaces, maps_k)?;
    Ok(BlockTower {
        stages: homs,
        windows,
        tower,
    })
}

fn degree_report(blocks: &[BlockTower], n: i64, window: usize) -> MinusDegree {
    let stages = blocks.first().map_or(0, |b| b.stages.len());
    let mut stage_dims = alloc::vec![0; stages];
    let mut image_dims = alloc::vec![0; stages.max(1)];
    let mut status = if stages == 0 {
        TowerStatus::Undetermined
    } else {
        TowerStatus::Stabilized
    };
    let mut dim = 0;
    for b in blocks {
        let lim = tower_limit(&b.tower, window);
        for (k, s) in b.tower.spaces().iter().enumerate().take(stages) {
            stage_dims[k] += s;
        }
        for (k, s) in lim.image_dims.iter().enumerate() {
            image_dims[k] += s;
        }
        if lim.status != TowerStatus::Stabilized {
            status = TowerStatus::Undetermined;
        }
        dim += lim.lim_dim;
    }
    if blocks.is_empty() && stages == 0 {
        status = TowerStatus::Undetermined;
    }
    MinusDegree {
        degree: n,
        stage_dims,
        image_dims,
        status,
        dim: (status == TowerStatus::Stabilized).then_some(dim),
    }
}

/// `HC⁻_n` for `n` from `−2(depth − 1)` up to `D − 1`, each certified when
/// its tower of complete stages stabilizes.
pub fn hc_minus(m: &CyclicModule, depth: usize, window: usize) -> HcMinusReport {
    hc_minus_of_blocks(&Blocks::new(m), depth, window)
}

pub(crate) fn hc_minus_of_blocks(blocks: &Blocks, depth: usize, window: usize) -> HcMinusReport {
    let d = blocks.max_degree();
    let maps: Vec<ColumnMaps> = blocks.modules.iter().map(ColumnMaps::new).collect();
    let lo = -2 * (depth.max(1) as i64 - 1);
    let mut degrees = Vec::new();
    for n in lo..d as i64 {
        let range = stage_range(n, d, depth);
        let stages = range.1;
        let towers: Vec<BlockTower> = maps
            .iter()
            .map(|m| block_tower(m, n, range).expect("window differentials square to zero"))
            .collect();
        let mut rep = degree_report(&towers, n, window);
        if towers.is_empty() {
            // the zero module: every stage is zero
            rep.stage_dims = alloc::vec![0; stages];
            rep.image_dims = alloc::vec![0; stages.max(1)];
            let ok = stages >= window.max(1) + 2;
            rep.status = if ok {
                TowerStatus::Stabilized
            } else {
                TowerStatus::Undetermined
            };
            rep.dim = ok.then_some(0);
        }
        degrees.push(rep);
    }
    HcMinusReport {
        max_degree: d,
        depth,
        window,
        degrees,
    }
}

/// `HC_{n−1} → HC⁻_n`, `z ↦ N z₀` placed in column 1, compared with the
/// eventual image of the `HC⁻` tower at stage 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormMapCheck {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: Option<usize>,
    pub rank: usize,
    /// `Some(true)` when the map is an isomorphism onto `HC⁻_n`; `None` when
    /// `HC⁻_n` is not certified.
    pub iso: Option<bool>,
}

pub fn norm_map_check(
    l: &HcLadder,
    depth: usize,
    window: usize,
) -> Result<Vec<NormMapCheck>, LinAlgError> {
    let d = l.max_degree();
    let mut out = Vec::new();
    for n in 1..d {
        let range = stage_range(n as i64, d, depth);
        if range.1 == 0 {
            continue;
        }
        let mut source_dim = 0;
        let mut rank = 0;
        let mut target_dim = Some(0);
        let mut inside = true;
        for b in &l.data {
            let t = block_tower(&b.window.maps, n as i64, range)?;
            let lim = tower_limit(&t.tower, window);
            let images: Vec<Subspace> = t.tower.eventual_images();
            let w0 = &t.windows[0];
            let layout = w0.layout(n as i64);
            let (_, off) = layout.offset_of(1).expect("column 1 in degree n ≥ 1");
            let src = &b.hc[n - 1];
            let cols = src
                .representatives()
                .iter()
                .map(|z| {
                    // the column-0 part of z sits first in its layout
                    let z0 = z.reindex(|i| (i < b.window.maps.dims[n - 1]).then_some(i));
                    let nz = b.window.maps.norm[n - 1].mul_vec(&z0);
                    t.stages[0].class_of(&nz.shifted(off))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let m = SparseMatrix::from_columns(t.stages[0].dim(), cols);
            source_dim += src.dim();
            rank += m.rank();
            inside &= m.columns().iter().all(|c| images[0].contains(c));
            target_dim = match (target_dim, lim.status) {
                (Some(acc), TowerStatus::Stabilized) => Some(acc + lim.lim_dim),
                _ => None,
            };
        }
        let iso = target_dim.map(|t| inside && rank == source_dim && rank == t);
        out.push(NormMapCheck {
            degree: n,
            source_dim,
            target_dim,
            rank,
            iso,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyccat::{free_cyclic, SimplicialModule};

    #[test]
    fn zero_module() {
        let r = hc_minus(&CyclicModule::zero(9), 5, 2);
        assert!(r
            .degrees
            .iter()
            .filter(|d| d.certified())
            .all(|d| d.dim == Some(0)));
        assert!(r.certified_up_to().is_some());
    }

    #[test]
    fn rationals_alternate_in_nonpositive_degrees() {
        let r = hc_minus(&CyclicModule::constant(9), 5, 2);
        for n in -8..=0i64 {
            let expect = usize::from(n % 2 == 0);
            assert_eq!(r.dim(n), Some(expect), "degree {n}");
        }
    }

    #[test]
    fn free_norm_map_iso() {
        let m = free_cyclic(&SimplicialModule::constant(13, 1));
        let l = HcLadder::new(&m);
        let checks = norm_map_check(&l, 6, 2).unwrap();
        let certified: Vec<_> = checks.iter().filter(|c| c.iso.is_some()).collect();
        assert!(!certified.is_empty());
        for c in certified {
            assert_eq!(c.iso, Some(true), "{c:?}");
        }
    }
}
