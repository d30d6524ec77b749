//! The long exact sequence `… → HC_{n−1} →B HH_n →I HC_n →S HC_{n−2} → …`.
//!
//! `I` is induced by the inclusion of column 0. `B` is the connecting map of
//! `0 → C{0,1} → CC → CC/C{0,1} → 0`, where the quotient is `CC` shifted by
//! two columns and `C{0,1}` (first two columns) computes `HH` because the
//! odd column is acyclic.

use alloc::vec::Vec;

use super::ladder::{descending_homology, hochschild_homology, HcLadder};
use super::minus::{hc_minus_of_blocks, HcMinusReport};
use super::window::{BicomplexWindow, TotLayout};
use crate::cyccat::CyclicModule;
use crate::exactla::{Homology, LinAlgError, Solver, SparseMatrix, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// `HC_{n−1} →B HH_n →I HC_n`
    Hochschild,
    /// `HH_n →I HC_n →S HC_{n−2}`
    Cyclic,
    /// `HC_n →S HC_{n−2} →B HH_{n−1}`
    Shifted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SbiNode {
    pub kind: NodeKind,
    pub degree: usize,
    pub dim: usize,
    pub incoming_rank: usize,
    pub outgoing_rank: usize,
    pub composite_zero: bool,
}

impl SbiNode {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.incoming_rank + self.outgoing_rank == self.dim
    }
}

#[derive(Clone, Debug)]
pub struct SbiReport {
    pub max_degree: usize,
    /// Certified degrees `0 ..= D − 1`.
    pub degrees: Vec<usize>,
    pub hh_dims: Vec<usize>,
    pub hc_dims: Vec<usize>,
    pub hc_minus: HcMinusReport,
    /// `s[n]: HC_n → HC_{n−2}`.
    pub s: Vec<SparseMatrix>,
    /// `b[n]: HC_{n−1} → HH_n`.
    pub b: Vec<SparseMatrix>,
    /// `i[n]: HH_n → HC_n`.
    pub i: Vec<SparseMatrix>,
    /// `HH_n → H_n(C{0,1})` was an isomorphism in every degree.
    pub two_column_iso: bool,
    pub nodes: Vec<SbiNode>,
}

impl SbiReport {
    pub fn all_exact(&self) -> bool {
        self.two_column_iso && self.nodes.iter().all(SbiNode::exact)
    }

    pub fn first_failure(&self) -> Option<&SbiNode> {
        self.nodes.iter().find(|n| !n.exact())
    }
}

/// `I` and `B` of one block, together with `HH`.
pub(crate) struct BlockSbi {
    pub hh: Vec<Homology>,
    pub i: Vec<SparseMatrix>,
    pub b: Vec<SparseMatrix>,
    pub two_column_iso: bool,
}

/// Moves every summand of a total vector two columns to the right.
pub fn shift_up(w: &BicomplexWindow, n: i64, z: &SparseVec) -> SparseVec {
    let src = w.layout(n);
    let dst = w.layout(n + 2);
    let mut entries = Vec::new();
    for (c, comp) in src.split(z, &w.maps.dims) {
        if comp.is_zero() {
            continue;
        }
        let (_, off) = dst.offset_of(c + 2).expect("shift stays inside the window");
        entries.extend(comp.into_entries().into_iter().map(|(i, x)| (i + off, x)));
    }
    SparseVec::from_entries(entries)
}

pub(crate) fn block_sbi(
    window: &BicomplexWindow,
    hc: &[Homology],
) -> Result<BlockSbi, LinAlgError> {
    let d = window.max_row();
    let hh = hochschild_homology(&window.maps);
    let two = BicomplexWindow::new(window.maps.clone(), 0, 1);
    let diffs: Vec<SparseMatrix> = (0..=d as i64).map(|n| two.total_differential(n)).collect();
    let h01 = descending_homology(&diffs);
    let mut i = Vec::with_capacity(d);
    let mut b = Vec::with_capacity(d);
    let mut two_column_iso = true;
    // column 0 comes first in both layouts, so a Moore cycle is already a
    // total vector
    for n in 0..d {
        let iota_cols = hh[n]
            .representatives()
            .iter()
            .map(|z| h01[n].class_of(z))
            .collect::<Result<Vec<_>, _>>()?;
        let iota = SparseMatrix::from_columns(h01[n].dim(), iota_cols);
        let iota_ok = iota.nrows() == iota.ncols() && iota.rank() == iota.ncols();
        two_column_iso &= iota_ok;
        let i_cols = hh[n]
            .representatives()
            .iter()
            .map(|z| hc[n].class_of(z))
            .collect::<Result<Vec<_>, _>>()?;
        i.push(SparseMatrix::from_columns(hc[n].dim(), i_cols));
        if n == 0 {
            b.push(SparseMatrix::zeros(hh[0].dim(), 0));
            continue;
        }
        let inv = Solver::new(&iota);
        let dim01 = TotLayout::new(&window.maps.dims, n as i64, 0, 1).dim;
        let b_cols = hc[n - 1]
            .representatives()
            .iter()
            .map(|z| {
                let y = shift_up(window, n as i64 - 1, z);
                let dy = window.apply_differential(n as i64 + 1, &y);
                debug_assert!(
                    dy.last_index().is_none_or(|i| i < dim01),
                    "boundary of the lift leaves C{{0,1}}"
                );
                let class = h01[n].class_of(&dy)?;
                if !iota_ok {
                    return Ok(SparseVec::new());
                }
                inv.solve(&class).ok_or(LinAlgError::NotExact {
                    degree: n as i64,
                    reason: "two-column homology is not hit by HH",
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        b.push(SparseMatrix::from_columns(hh[n].dim(), b_cols));
    }
    Ok(BlockSbi {
        hh,
        i,
        b,
        two_column_iso,
    })
}

/// `S`, `B` and `I` with exactness at every node in degrees `≤ D − 1`, plus
/// `HC⁻` computed with `minus_depth` stages of its column tower.
pub fn sbi(m: &CyclicModule, minus_depth: usize, window: usize) -> Result<SbiReport, LinAlgError> {
    sbi_of_ladder(&HcLadder::new(m), minus_depth, window)
}

pub fn sbi_of_ladder(
    l: &HcLadder,
    minus_depth: usize,
    window: usize,
) -> Result<SbiReport, LinAlgError> {
    let d = l.max_degree();
    let parts = l
        .data
        .iter()
        .map(|b| block_sbi(&b.window, &b.hc))
        .collect::<Result<Vec<_>, _>>()?;
    let hh_dims: Vec<usize> = (0..d)
        .map(|n| parts.iter().map(|p| p.hh[n].dim()).sum())
        .collect();
    let hc_dims = l.dims();
    let diag = |f: &dyn Fn(&BlockSbi) -> SparseMatrix| {
        SparseMatrix::block_diag(&parts.iter().map(f).collect::<Vec<_>>())
    };
    let i: Vec<SparseMatrix> = (0..d).map(|n| diag(&|p| p.i[n].clone())).collect();
    let b: Vec<SparseMatrix> = (0..d).map(|n| diag(&|p| p.b[n].clone())).collect();
    let s: Vec<SparseMatrix> = (0..d).map(|n| l.s_matrix(n)).collect();
    let hc_at = |n: i64| if n < 0 { 0 } else { hc_dims[n as usize] };
    let mut nodes = Vec::new();
    for n in 0..d {
        nodes.push(SbiNode {
            kind: NodeKind::Hochschild,
            degree: n,
            dim: hh_dims[n],
            incoming_rank: b[n].rank(),
            outgoing_rank: i[n].rank(),
            composite_zero: i[n].mul(&b[n]).is_zero(),
        });
        nodes.push(SbiNode {
            kind: NodeKind::Cyclic,
            degree: n,
            dim: hc_dims[n],
            incoming_rank: i[n].rank(),
            outgoing_rank: s[n].rank(),
            composite_zero: s[n].mul(&i[n]).is_zero(),
        });
        if n >= 1 {
            // HC_{n−2} → HH_{n−1} is b[n−1]
            let out = &b[n - 1];
            let composite_zero = if n >= 2 {
                out.mul(&s[n]).is_zero()
            } else {
                true
            };
            nodes.push(SbiNode {
                kind: NodeKind::Shifted,
                degree: n,
                dim: hc_at(n as i64 - 2),
                incoming_rank: s[n].rank(),
                outgoing_rank: out.rank(),
                composite_zero,
            });
        }
    }
    let hc_minus = hc_minus_of_blocks(&l.blocks, minus_depth, window);
    Ok(SbiReport {
        max_degree: d,
        degrees: (0..d).collect(),
        hh_dims,
        hc_dims,
        hc_minus,
        s,
        b,
        i,
        two_column_iso: parts.iter().all(|p| p.two_column_iso),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::truncated_polynomial;
    use crate::hhdecomp::{hh, DEFAULT_WORD_BUDGET};

    #[test]
    fn rationals() {
        let r = sbi(&CyclicModule::constant(6), 4, 2).unwrap();
        assert!(r.all_exact(), "{:?}", r.first_failure());
        assert_eq!(r.hh_dims, alloc::vec![1, 0, 0, 0, 0, 0]);
        assert!(r.b[1].is_zero());
    }

    #[test]
    fn zero_module() {
        let r = sbi(&CyclicModule::zero(4), 3, 2).unwrap();
        assert!(r.all_exact());
        assert!(r.hc_dims.iter().all(|&d| d == 0));
    }

    #[test]
    fn dual_numbers() {
        let (a, _) = truncated_polynomial(2).unwrap();
        let h = hh(&a, 6, DEFAULT_WORD_BUDGET).unwrap();
        let r = sbi(&h.module, 4, 2).unwrap();
        assert!(r.all_exact(), "{:?}", r.first_failure());
        assert_eq!(r.hh_dims[..5], [2, 1, 1, 1, 1]);
        // B is nonzero somewhere on the positive-weight part
        assert!(r.b.iter().any(|m| !m.is_zero()));
    }
}
