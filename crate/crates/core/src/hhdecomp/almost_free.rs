//! Sub-objects selected by basis predicates and the retractions through free
//! cyclic modules.

use alloc::format;
use alloc::vec::Vec;

use super::HhError;
use crate::cyccat::{
    free_cyclic, free_index, morphism_map, CyclicModule, CyclicMorphism, Op, SimplicialModule,
};
use crate::exactla::{Scalar, SparseMatrix, SparseVec};

/// A structure map sending a selected basis element outside the selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Escape {
    pub op: Op,
    pub degree: usize,
    pub index: usize,
    /// Source basis element and offending target basis element (ambient indices).
    pub source: usize,
    pub target: usize,
}

fn escape_in(m: &SparseMatrix, src: &[usize], dst_member: &[bool]) -> Option<(usize, usize)> {
    src.iter().find_map(|&c| {
        m.col(c)
            .iter()
            .find(|(r, _)| !dst_member[*r])
            .map(|(r, _)| (c, r))
    })
}

fn membership(keep: &[Vec<usize>], dims: &[usize]) -> Vec<Vec<bool>> {
    keep.iter()
        .zip(dims)
        .map(|(k, &d)| {
            let mut v = alloc::vec![false; d];
            for &i in k {
                v[i] = true;
            }
            v
        })
        .collect()
}

/// First structure map (faces, degeneracies, and `t` when `cyclic`) that
/// leaves the span of the selected basis elements.
pub fn closure_escape(m: &CyclicModule, keep: &[Vec<usize>], cyclic: bool) -> Option<Escape> {
    let d = m.max_degree();
    let member = membership(keep, m.dims());
    for q in 0..=d {
        if q > 0 {
            for i in 0..=q {
                if let Some((s, t)) = escape_in(m.face(q, i), &keep[q], &member[q - 1]) {
                    return Some(Escape {
                        op: Op::Face,
                        degree: q,
                        index: i,
                        source: s,
                        target: t,
                    });
                }
            }
        }
        if q < d {
            for i in 0..=q {
                if let Some((s, t)) = escape_in(m.degeneracy(q, i), &keep[q], &member[q + 1]) {
                    return Some(Escape {
                        op: Op::Degeneracy,
                        degree: q,
                        index: i,
                        source: s,
                        target: t,
                    });
                }
            }
        }
        if cyclic {
            if let Some((s, t)) = escape_in(m.cyclic(q), &keep[q], &member[q]) {
                return Some(Escape {
                    op: Op::Cyclic,
                    degree: q,
                    index: 0,
                    source: s,
                    target: t,
                });
            }
        }
    }
    None
}

/// Degreewise dims of a selection.
pub fn selection_dims(keep: &[Vec<usize>]) -> Vec<usize> {
    keep.iter().map(Vec::len).collect()
}

/// `H ⇄ j_*G` with `counit ∘ retract = scalar · id`, both maps checked to be
/// cyclic.
#[derive(Clone, Debug)]
pub struct AlmostFree {
    pub h: CyclicModule,
    pub g: SimplicialModule,
    /// Positions of the basis of `G` inside the basis of `H`.
    pub g_in_h: Vec<Vec<usize>>,
    pub free: CyclicModule,
    pub retract: CyclicMorphism,
    pub counit: CyclicMorphism,
    pub scalar: usize,
    /// Degrees (ascending) where the composite equals `scalar · id`.
    pub composite_ok: Vec<bool>,
    /// Whether `G` happens to be closed under `t` as well.
    pub g_is_cyclic: bool,
}

impl AlmostFree {
    pub fn composite_holds(&self) -> bool {
        self.composite_ok.iter().all(|&b| b)
    }
}

/// Builds the retraction `a ↦ Σ_{j ∈ marks(a)} (t^j, t^{−j} a)` for a cyclic
/// module `h` whose basis is permuted by `t`, where `marks[q][a]` lists the
/// marked positions of basis element `a` and `G` consists of the basis
/// elements with `0` marked.
pub fn almost_free(
    h: &CyclicModule,
    marks: &[Vec<Vec<usize>>],
    scalar: usize,
) -> Result<AlmostFree, HhError> {
    let d = h.max_degree();
    let g_in_h: Vec<Vec<usize>> = (0..=d)
        .map(|q| {
            (0..h.dim(q))
                .filter(|&a| marks[q][a].first() == Some(&0))
                .collect()
        })
        .collect();
    if let Some(e) = closure_escape(h, &g_in_h, false) {
        return Err(HhError::NotClosed(format!(
            "G is not simplicial: {:?} {} in degree {} sends basis {} to {}",
            e.op, e.index, e.degree, e.source, e.target
        )));
    }
    let g_is_cyclic = closure_escape(h, &g_in_h, true).is_none();
    let g = h.simplicial.restrict(&g_in_h);
    let free = free_cyclic(&g);
    let mut retract_maps = Vec::with_capacity(d + 1);
    let mut counit_maps = Vec::with_capacity(d + 1);
    for q in 0..=d {
        let n = h.dim(q);
        let gq = g_in_h[q].len();
        let mut pos_in_g = alloc::vec![usize::MAX; n];
        for (k, &a) in g_in_h[q].iter().enumerate() {
            pos_in_g[a] = k;
        }
        // powers of t as permutations of the basis
        let mut perm: Vec<Vec<usize>> = Vec::with_capacity(q + 1);
        perm.push((0..n).collect());
        for s in 1..=q {
            let prev = &perm[s - 1];
            let next = prev
                .iter()
                .map(|&a| {
                    single_entry(h.cyclic(q).col(a)).ok_or_else(|| {
                        HhError::NotClosed(format!("t is not a basis permutation in degree {q}"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            perm.push(next);
        }
        let mut cols = Vec::with_capacity(n);
        for a in 0..n {
            let mut entries = Vec::with_capacity(marks[q][a].len());
            for &j in &marks[q][a] {
                // t^{−j} a = t^{q+1−j} a
                let b = perm[(q + 1 - j) % (q + 1)][a];
                let k = pos_in_g[b];
                if k == usize::MAX {
                    return Err(HhError::NotClosed(format!(
                        "rotation of basis {a} by {j} leaves G in degree {q}"
                    )));
                }
                entries.push((free_index(gq, j, k), Scalar::ONE));
            }
            cols.push(SparseVec::from_entries(entries));
        }
        retract_maps.push(SparseMatrix::from_columns((q + 1) * gq, cols));
        let mut ccols = Vec::with_capacity((q + 1) * gq);
        for p in perm.iter().take(q + 1) {
            for &a in &g_in_h[q] {
                ccols.push(SparseVec::unit(p[a]));
            }
        }
        counit_maps.push(SparseMatrix::from_columns(n, ccols));
    }
    let retract = morphism_map(retract_maps, h, &free)
        .map_err(|e| HhError::NotCertified(format!("retract: {e}")))?;
    let counit = morphism_map(counit_maps, &free, h)
        .map_err(|e| HhError::NotCertified(format!("counit: {e}")))?;
    let c = Scalar::from(scalar);
    let composite_ok = (0..=d)
        .map(|q| {
            counit.maps[q].mul(&retract.maps[q]) == SparseMatrix::scalar_identity(h.dim(q), &c)
        })
        .collect();
    Ok(AlmostFree {
        h: h.clone(),
        g,
        g_in_h,
        free,
        retract,
        counit,
        scalar,
        composite_ok,
        g_is_cyclic,
    })
}

fn single_entry(v: &SparseVec) -> Option<usize> {
    match v.entries() {
        [(i, c)] if c.is_one() => Some(*i),
        _ => None,
    }
}
