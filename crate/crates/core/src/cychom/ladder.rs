//! Cyclic homology `HC_n` for all certified degrees at once, computed block
//! by block over the connected pieces of a cyclic module.

use alloc::vec;
use alloc::vec::Vec;

use super::window::{BicomplexWindow, ColumnMaps, TotLayout};
use crate::cyccat::{CyclicModule, SimplicialModule};
use crate::exactla::{
    reduce_columns, Homology, LinAlgError, SparseMatrix, SparseVec, Tagging, Tower,
};

/// A cyclic module split into the direct sum of its connected pieces.
#[derive(Clone, Debug)]
pub struct Blocks {
    /// Ambient basis indices of each block, per degree.
    pub members: Vec<Vec<Vec<usize>>>,
    /// Per degree: ambient index ↦ (block, local index).
    owner: Vec<Vec<(usize, usize)>>,
    pub modules: Vec<CyclicModule>,
    pub dims: Vec<usize>,
}

impl Blocks {
    pub fn new(m: &CyclicModule) -> Self {
        Self::from_members(m, m.components())
    }

    /// The whole module as one block.
    pub fn single(m: &CyclicModule) -> Self {
        let members = vec![m.dims().iter().map(|&n| (0..n).collect()).collect()];
        Self::from_members(m, members)
    }

    fn from_members(m: &CyclicModule, members: Vec<Vec<Vec<usize>>>) -> Self {
        let d = m.max_degree();
        let mut owner: Vec<Vec<(usize, usize)>> =
            m.dims().iter().map(|&n| vec![(usize::MAX, 0); n]).collect();
        for (b, mem) in members.iter().enumerate() {
            for q in 0..=d {
                for (l, &g) in mem[q].iter().enumerate() {
                    owner[q][g] = (b, l);
                }
            }
        }
        let nb = members.len();
        let split = |mat: &SparseMatrix, src: usize, dst: usize| -> Vec<SparseMatrix> {
            let mut cols: Vec<Vec<SparseVec>> = (0..nb)
                .map(|b| Vec::with_capacity(members[b][src].len()))
                .collect();
            for c in 0..mat.ncols() {
                let (b, _) = owner[src][c];
                let v = mat.col(c);
                let mut entries = Vec::with_capacity(v.nnz());
                for (r, x) in v.iter() {
                    let (rb, rl) = owner[dst][r];
                    debug_assert_eq!(rb, b, "structure map crosses blocks");
                    entries.push((rl, x.clone()));
                }
                cols[b].push(SparseVec::from_sorted(entries));
            }
            cols.into_iter()
                .enumerate()
                .map(|(b, cs)| SparseMatrix::from_columns(members[b][dst].len(), cs))
                .collect()
        };
        let mut faces: Vec<Vec<Vec<SparseMatrix>>> = vec![Vec::with_capacity(d + 1); nb];
        let mut degens: Vec<Vec<Vec<SparseMatrix>>> = vec![Vec::with_capacity(d); nb];
        let mut ts: Vec<Vec<SparseMatrix>> = vec![Vec::with_capacity(d + 1); nb];
        for q in 0..=d {
            let mut fq: Vec<Vec<SparseMatrix>> = vec![Vec::new(); nb];
            if q > 0 {
                for i in 0..=q {
                    for (b, mat) in split(m.face(q, i), q, q - 1).into_iter().enumerate() {
                        fq[b].push(mat);
                    }
                }
            }
            for (b, f) in fq.into_iter().enumerate() {
                faces[b].push(f);
            }
            if q < d {
                let mut sq: Vec<Vec<SparseMatrix>> = vec![Vec::new(); nb];
                for i in 0..=q {
                    for (b, mat) in split(m.degeneracy(q, i), q, q + 1).into_iter().enumerate() {
                        sq[b].push(mat);
                    }
                }
                for (b, s) in sq.into_iter().enumerate() {
                    degens[b].push(s);
                }
            }
            for (b, mat) in split(m.cyclic(q), q, q).into_iter().enumerate() {
                ts[b].push(mat);
            }
        }
        let modules = faces
            .into_iter()
            .zip(degens)
            .zip(ts)
            .enumerate()
            .map(|(b, ((faces, degens), t))| CyclicModule {
                simplicial: SimplicialModule {
                    dims: members[b].iter().map(Vec::len).collect(),
                    faces,
                    degens,
                },
                t,
            })
            .collect();
        Self {
            members,
            owner,
            modules,
            dims: m.dims().to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Global total-degree layout over columns `[c_lo, c_hi]`.
    pub fn layout(&self, n: i64, c_lo: i64, c_hi: i64) -> TotLayout {
        TotLayout::new(&self.dims, n, c_lo, c_hi)
    }

    /// Splits a global `Tot_n` vector into block-local `Tot_n` vectors.
    pub fn split_tot(&self, n: i64, c_lo: i64, c_hi: i64, v: &SparseVec) -> Vec<SparseVec> {
        let global = self.layout(n, c_lo, c_hi);
        let locals: Vec<TotLayout> = self
            .modules
            .iter()
            .map(|m| TotLayout::new(m.dims(), n, c_lo, c_hi))
            .collect();
        let mut out: Vec<Vec<(usize, crate::exactla::Scalar)>> = vec![Vec::new(); self.len()];
        for (i, x) in v.iter() {
            let part = global
                .parts
                .iter()
                .rposition(|p| p.2 <= i)
                .expect("index inside layout");
            let (c, q, off) = global.parts[part];
            let (b, l) = self.owner[q][i - off];
            let (_, loff) = locals[b].offset_of(c).expect("block has the summand");
            out[b].push((loff + l, x.clone()));
        }
        out.into_iter().map(SparseVec::from_entries).collect()
    }

    /// Embeds a block-local `Tot_n` vector into the global `Tot_n`.
    pub fn embed_tot(
        &self,
        n: i64,
        c_lo: i64,
        c_hi: i64,
        block: usize,
        v: &SparseVec,
    ) -> SparseVec {
        let global = self.layout(n, c_lo, c_hi);
        let local = TotLayout::new(self.modules[block].dims(), n, c_lo, c_hi);
        let mut entries = Vec::with_capacity(v.nnz());
        for (i, x) in v.iter() {
            let part = local
                .parts
                .iter()
                .rposition(|p| p.2 <= i)
                .expect("index inside layout");
            let (c, q, off) = local.parts[part];
            let (_, goff) = global.offset_of(c).expect("global has the summand");
            entries.push((goff + self.members[block][q][i - off], x.clone()));
        }
        SparseVec::from_entries(entries)
    }
}

/// `HC` of one block in degrees `0 ..= D − 1`, with the cycles of `Tot_D`
/// mapped into `HC_{D−2}` by `S` standing in for the deepest stage.
#[derive(Clone, Debug)]
pub struct BlockLadder {
    pub window: BicomplexWindow,
    pub hc: Vec<Homology>,
    pub deepest: Option<SparseMatrix>,
}

impl BlockLadder {
    pub fn new(m: &CyclicModule) -> Self {
        let d = m.max_degree();
        let window = BicomplexWindow::new(ColumnMaps::new(m), 0, d as i64);
        let diffs: Vec<SparseMatrix> = (0..=d as i64)
            .map(|n| window.total_differential(n))
            .collect();
        let hc = descending_homology(&diffs);
        let deepest = (d >= 2).then(|| {
            let src = window.layout(d as i64);
            let dst = window.layout(d as i64 - 2);
            let target = &hc[d - 2];
            let tag = |j: usize| -> SparseVec {
                let part = src.parts.iter().rposition(|p| p.2 <= j).unwrap();
                let (c, _, off) = src.parts[part];
                if c < 2 {
                    return SparseVec::new();
                }
                let (_, doff) = dst.offset_of(c - 2).unwrap();
                target.project(&SparseVec::unit(doff + j - off))
            };
            let red = reduce_columns(&diffs[d], None, Tagging::Custom(&tag));
            SparseMatrix::from_columns(
                target.dim(),
                red.dependent.into_iter().map(|(_, t)| t).collect(),
            )
        });
        Self {
            window,
            hc,
            deepest,
        }
    }

    /// `S: HC_n → HC_{n−2}`, dropping columns 0 and 1 and shifting by two.
    pub fn s_matrix(&self, n: usize) -> SparseMatrix {
        if n < 2 {
            return SparseMatrix::zeros(0, self.hc[n].dim());
        }
        let cols = self.hc[n]
            .representatives()
            .iter()
            .map(|z| {
                self.hc[n - 2]
                    .class_of(&shift_down(&self.window, n as i64, z))
                    .expect("S maps cycles to cycles")
            })
            .collect();
        SparseMatrix::from_columns(self.hc[n - 2].dim(), cols)
    }
}

/// Homology in degrees `0 .. top` of `… → C_top → … → C_0`, where
/// `diffs[n]` is the differential out of degree `n` and `diffs[top]` only
/// supplies boundaries.
pub fn descending_homology(diffs: &[SparseMatrix]) -> Vec<Homology> {
    let top = diffs.len() - 1;
    let mut boundaries = reduce_columns(&diffs[top], None, Tagging::None).image;
    let mut out = Vec::with_capacity(top);
    for n in (0..top).rev() {
        let (h, below) = Homology::from_boundaries(boundaries, &diffs[n]);
        out.push(h);
        boundaries = below;
    }
    out.reverse();
    out
}

/// The chain map `S` on total vectors.
pub fn shift_down(w: &BicomplexWindow, n: i64, z: &SparseVec) -> SparseVec {
    let src = w.layout(n);
    let dst = w.layout(n - 2);
    let mut entries = Vec::new();
    for (c, comp) in src.split(z, &w.maps.dims) {
        if c < w.c_lo + 2 || comp.is_zero() {
            continue;
        }
        let (_, off) = dst.offset_of(c - 2).unwrap();
        entries.extend(comp.into_entries().into_iter().map(|(i, x)| (i + off, x)));
    }
    SparseVec::from_entries(entries)
}

/// `HC_n` of a cyclic module in degrees `0 ..= D − 1`.
#[derive(Clone, Debug)]
pub struct HcLadder {
    pub blocks: Blocks,
    pub data: Vec<BlockLadder>,
}

impl HcLadder {
    pub fn new(m: &CyclicModule) -> Self {
        Self::from_blocks(Blocks::new(m))
    }

    pub fn from_blocks(blocks: Blocks) -> Self {
        let data = blocks.modules.iter().map(BlockLadder::new).collect();
        Self { blocks, data }
    }

    pub fn max_degree(&self) -> usize {
        self.blocks.max_degree()
    }

    /// Highest `n` with `HC_n` certified.
    pub fn top_certified(&self) -> Option<usize> {
        self.max_degree().checked_sub(1)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.data.iter().map(|b| b.hc[n].dim()).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.max_degree()).map(|n| self.dim(n)).collect()
    }

    fn offsets(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.data.len() + 1);
        let mut acc = 0;
        out.push(0);
        for b in &self.data {
            acc += b.hc[n].dim();
            out.push(acc);
        }
        out
    }

    /// `S: HC_n → HC_{n−2}` in global class coordinates.
    pub fn s_matrix(&self, n: usize) -> SparseMatrix {
        let blocks: Vec<SparseMatrix> = self.data.iter().map(|b| b.s_matrix(n)).collect();
        SparseMatrix::block_diag(&blocks)
    }

    /// Global representative of class `g` of `HC_n`.
    pub fn representative(&self, n: usize, g: usize) -> SparseVec {
        let off = self.offsets(n);
        let b = off.partition_point(|&o| o <= g) - 1;
        let z = &self.data[b].hc[n].representatives()[g - off[b]];
        self.blocks
            .embed_tot(n as i64, 0, self.max_degree() as i64, b, z)
    }

    /// Class coordinates of a global cycle of `Tot_n`.
    pub fn class_of(&self, n: usize, z: &SparseVec) -> Result<SparseVec, LinAlgError> {
        let parts = self
            .blocks
            .split_tot(n as i64, 0, self.max_degree() as i64, z);
        let off = self.offsets(n);
        let mut entries = Vec::new();
        for (b, v) in parts.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let c = self.data[b].hc[n].class_of(v)?;
            entries.extend(c.into_entries().into_iter().map(|(i, x)| (i + off[b], x)));
        }
        Ok(SparseVec::from_entries(entries))
    }

    /// The `S`-tower `HC_p ← HC_{p+2} ← …` of one parity. When the top
    /// degree `D` has this parity, the deepest stage is the cycle space of
    /// `Tot_D`, mapped into `HC_{D−2}` by `S`; only its image matters.
    pub fn tower(&self, parity: usize) -> ParityTower {
        let d = self.max_degree();
        let degrees: Vec<usize> = (parity..d).step_by(2).collect();
        let mut spaces: Vec<usize> = degrees.iter().map(|&n| self.dim(n)).collect();
        let mut maps: Vec<SparseMatrix> = degrees.windows(2).map(|w| self.s_matrix(w[1])).collect();
        let deepest_is_cycles = d >= 2 && d % 2 == parity % 2;
        if deepest_is_cycles {
            let blocks: Vec<SparseMatrix> = self
                .data
                .iter()
                .map(|b| b.deepest.clone().unwrap())
                .collect();
            let m = SparseMatrix::block_diag(&blocks);
            spaces.push(m.ncols());
            maps.push(m);
        }
        if spaces.is_empty() {
            spaces.push(0);
        }
        ParityTower {
            parity,
            degrees,
            deepest_is_cycles,
            tower: Tower::new(spaces, maps).expect("S maps compose along the tower"),
        }
    }

    /// Applies a degreewise map `f_q: M_q → M'_q` to `HC_n` classes.
    pub fn induced_map(
        &self,
        f: &[SparseMatrix],
        target: &HcLadder,
        n: usize,
    ) -> Result<SparseMatrix, LinAlgError> {
        let cols = (0..self.dim(n))
            .map(|g| {
                let z = self.representative(n, g);
                let w = apply_degreewise(
                    f,
                    &self.blocks.dims,
                    &target.blocks.dims,
                    n as i64,
                    0,
                    self.max_degree() as i64,
                    &z,
                );
                target.class_of(n, &w)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparseMatrix::from_columns(target.dim(n), cols))
    }

    /// Applies the total differential to a global vector of `Tot_n`.
    pub fn differential(&self, n: usize, v: &SparseVec) -> SparseVec {
        let d = self.max_degree() as i64;
        let parts = self.blocks.split_tot(n as i64, 0, d, v);
        let mut acc = SparseVec::new();
        for (b, p) in parts.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let dv = self.data[b].window.apply_differential(n as i64, p);
            acc.axpy(
                &crate::exactla::Scalar::ONE,
                &self.blocks.embed_tot(n as i64 - 1, 0, d, b, &dv),
            );
        }
        acc
    }
}

/// An `S`-tower of one parity with the degrees of its stages.
#[derive(Clone, Debug)]
pub struct ParityTower {
    pub parity: usize,
    /// `HC` degrees of the ordinary stages, shallowest first.
    pub degrees: Vec<usize>,
    pub deepest_is_cycles: bool,
    pub tower: Tower,
}

/// Applies `f_q` summand by summand to a total vector.
pub fn apply_degreewise(
    f: &[SparseMatrix],
    src_dims: &[usize],
    dst_dims: &[usize],
    n: i64,
    c_lo: i64,
    c_hi: i64,
    v: &SparseVec,
) -> SparseVec {
    let src = TotLayout::new(src_dims, n, c_lo, c_hi);
    let dst = TotLayout::new(dst_dims, n, c_lo, c_hi);
    let mut entries = Vec::new();
    for (c, comp) in src.split(v, src_dims) {
        if comp.is_zero() {
            continue;
        }
        let q = (n - c) as usize;
        let (_, off) = dst.offset_of(c).expect("same summands");
        entries.extend(
            f[q].mul_vec(&comp)
                .into_entries()
                .into_iter()
                .map(|(i, x)| (i + off, x)),
        );
    }
    SparseVec::from_entries(entries)
}

/// Moore-complex homology `HH_n` for `n ≤ D − 1` of one block.
pub fn hochschild_homology(maps: &ColumnMaps) -> Vec<Homology> {
    descending_homology(&maps.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyccat::{free_cyclic, validate_cyclic};
    use crate::exactla::{tower_limit, TowerStatus};

    #[test]
    fn rationals_pattern_and_periodicity() {
        let l = HcLadder::new(&CyclicModule::constant(8));
        assert_eq!(l.dims(), vec![1, 0, 1, 0, 1, 0, 1, 0]);
        for n in (2..8).step_by(2) {
            assert_eq!(l.s_matrix(n).rank(), 1);
        }
        let even = l.tower(0);
        assert!(even.deepest_is_cycles);
        let lim = tower_limit(&even.tower, 3);
        assert_eq!(lim.status, TowerStatus::Stabilized);
        assert_eq!(lim.lim_dim, 1);
    }

    #[test]
    fn zero_module() {
        let l = HcLadder::new(&CyclicModule::zero(4));
        assert!(l.dims().iter().all(|&d| d == 0));
    }

    #[test]
    fn blocks_reassemble() {
        let x = SimplicialModule::constant(5, 2);
        let m = free_cyclic(&x).direct_sum(&CyclicModule::constant(5));
        let b = Blocks::new(&m);
        assert!(b.len() >= 2);
        for blk in &b.modules {
            assert!(validate_cyclic(blk).is_valid());
        }
        let split = HcLadder::from_blocks(b);
        let whole = HcLadder::from_blocks(Blocks::single(&m));
        assert_eq!(split.dims(), whole.dims());
    }

    #[test]
    fn free_module_has_zero_s() {
        let m = free_cyclic(&SimplicialModule::constant(7, 1));
        let l = HcLadder::new(&m);
        for n in 2..7 {
            assert!(l.s_matrix(n).is_zero());
        }
    }

    #[test]
    fn embed_split_round_trip() {
        let m =
            free_cyclic(&SimplicialModule::constant(4, 1)).direct_sum(&CyclicModule::constant(4));
        let b = Blocks::new(&m);
        let lay = b.layout(3, 0, 4);
        let v = SparseVec::from_entries(
            (0..lay.dim)
                .map(|i| (i, crate::exactla::Scalar::from_int(i as i64 + 1)))
                .collect(),
        );
        let parts = b.split_tot(3, 0, 4, &v);
        let mut back = SparseVec::new();
        for (k, p) in parts.iter().enumerate() {
            back.axpy(&crate::exactla::Scalar::ONE, &b.embed_tot(3, 0, 4, k, p));
        }
        assert_eq!(back, v);
    }
}
