//! Finite windows of the periodic bicomplex.
//!
//! Column `c`, row `q` holds `M_q`; total degree is `c + q`. Even columns
//! carry `b = Σ (−1)^i d_i`, odd columns `−b' = −Σ_{i<q} (−1)^i d_i`. The
//! horizontal map out of an odd column is `1 − λ`, out of an even column it
//! is `N = Σ λ^i`, with `λ = (−1)^q t`.

use alloc::vec::Vec;

use crate::cyccat::CyclicModule;
use crate::exactla::{homology_at, Scalar, SparseMatrix, SparseVec};

/// `b`, `b'`, `1 − λ` and `N` in every degree of a cyclic module.
#[derive(Clone, Debug)]
pub struct ColumnMaps {
    pub dims: Vec<usize>,
    pub b: Vec<SparseMatrix>,
    pub b_prime: Vec<SparseMatrix>,
    pub one_minus_lambda: Vec<SparseMatrix>,
    pub norm: Vec<SparseMatrix>,
}

impl ColumnMaps {
    pub fn new(m: &CyclicModule) -> Self {
        let d = m.max_degree();
        let dims = m.dims().to_vec();
        let mut b = Vec::with_capacity(d + 1);
        let mut b_prime = Vec::with_capacity(d + 1);
        let mut one_minus_lambda = Vec::with_capacity(d + 1);
        let mut norm = Vec::with_capacity(d + 1);
        for q in 0..=d {
            let below = if q == 0 { 0 } else { dims[q - 1] };
            let mut bq = SparseMatrix::zeros(below, dims[q]);
            let mut bpq = SparseMatrix::zeros(below, dims[q]);
            for i in (0..=q).filter(|_| q > 0) {
                let sign = if i % 2 == 0 {
                    Scalar::ONE
                } else {
                    -Scalar::ONE
                };
                bq = bq.axpy(&sign, m.face(q, i));
                if i < q {
                    bpq = bpq.axpy(&sign, m.face(q, i));
                }
            }
            b.push(bq);
            b_prime.push(bpq);
            let lambda = if q % 2 == 0 {
                m.cyclic(q).clone()
            } else {
                m.cyclic(q).neg()
            };
            one_minus_lambda.push(SparseMatrix::identity(dims[q]).sub(&lambda));
            let cols = (0..dims[q])
                .map(|j| {
                    let mut acc = SparseVec::unit(j);
                    let mut cur = SparseVec::unit(j);
                    for _ in 0..q {
                        cur = lambda.mul_vec(&cur);
                        acc.axpy(&Scalar::ONE, &cur);
                    }
                    acc
                })
                .collect();
            norm.push(SparseMatrix::from_columns(dims[q], cols));
        }
        Self {
            dims,
            b,
            b_prime,
            one_minus_lambda,
            norm,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Degrees `q ≤ D − 1` where the `b'` column has homology.
    pub fn odd_column_failures(&self) -> Vec<usize> {
        let d = self.max_degree();
        (0..d)
            .filter(|&q| {
                let d_out = if q == 0 {
                    SparseMatrix::zeros(0, self.dims[0])
                } else {
                    self.b_prime[q].clone()
                };
                homology_at(&self.b_prime[q + 1], &d_out).map_or(true, |h| h.dim() != 0)
            })
            .collect()
    }

    /// Rows `q` where `1 − λ` and `N` do not form an exact periodic sequence.
    pub fn row_failures(&self) -> Vec<usize> {
        (0..=self.max_degree())
            .filter(|&q| {
                let (a, n) = (&self.one_minus_lambda[q], &self.norm[q]);
                !(a.mul(n).is_zero() && n.mul(a).is_zero() && a.rank() + n.rank() == self.dims[q])
            })
            .collect()
    }

    /// Vertical differential out of `(c, q)`.
    pub fn vertical(&self, c: i64, q: usize) -> SparseMatrix {
        if c.rem_euclid(2) == 0 {
            self.b[q].clone()
        } else {
            self.b_prime[q].neg()
        }
    }

    fn vertical_col(&self, c: i64, q: usize, j: usize) -> SparseVec {
        if c.rem_euclid(2) == 0 {
            self.b[q].col(j).clone()
        } else {
            self.b_prime[q].col(j).neg()
        }
    }

    /// Horizontal differential out of `(c, q)` into `(c − 1, q)`.
    pub fn horizontal(&self, c: i64, q: usize) -> &SparseMatrix {
        if c.rem_euclid(2) == 1 {
            &self.one_minus_lambda[q]
        } else {
            &self.norm[q]
        }
    }
}

/// Summands `(c, q, offset)` of a total degree, in increasing column order.
#[derive(Clone, Debug)]
pub struct TotLayout {
    pub parts: Vec<(i64, usize, usize)>,
    pub dim: usize,
}

impl TotLayout {
    pub fn new(dims: &[usize], n: i64, c_lo: i64, c_hi: i64) -> Self {
        let d = dims.len() as i64 - 1;
        let mut parts = Vec::new();
        let mut off = 0;
        for c in c_lo..=c_hi {
            let q = n - c;
            if (0..=d).contains(&q) {
                parts.push((c, q as usize, off));
                off += dims[q as usize];
            }
        }
        Self { parts, dim: off }
    }

    pub fn offset_of(&self, c: i64) -> Option<(usize, usize)> {
        self.parts.iter().find(|p| p.0 == c).map(|p| (p.1, p.2))
    }

    /// Splits a total vector into `(c, component)` pieces.
    pub fn split(&self, v: &SparseVec, dims: &[usize]) -> Vec<(i64, SparseVec)> {
        self.parts
            .iter()
            .map(|&(c, q, off)| {
                let len = dims[q];
                (
                    c,
                    v.reindex(|i| (i >= off && i < off + len).then(|| i - off)),
                )
            })
            .collect()
    }
}

/// A rectangular window `[c_lo, c_hi] × [0, D]` of the periodic bicomplex.
#[derive(Clone, Debug)]
pub struct BicomplexWindow {
    pub maps: ColumnMaps,
    pub c_lo: i64,
    pub c_hi: i64,
}

impl BicomplexWindow {
    pub fn new(maps: ColumnMaps, c_lo: i64, c_hi: i64) -> Self {
        Self { maps, c_lo, c_hi }
    }

    pub fn max_row(&self) -> usize {
        self.maps.max_degree()
    }

    pub fn layout(&self, n: i64) -> TotLayout {
        TotLayout::new(&self.maps.dims, n, self.c_lo, self.c_hi)
    }

    /// Lowest and highest total degree with a nonzero summand.
    pub fn degree_range(&self) -> (i64, i64) {
        (self.c_lo, self.c_hi + self.max_row() as i64)
    }

    /// Total differential `Tot_n → Tot_{n−1}`.
    pub fn total_differential(&self, n: i64) -> SparseMatrix {
        let src = self.layout(n);
        let dst = self.layout(n - 1);
        let mut cols = Vec::with_capacity(src.dim);
        for &(c, q, _) in &src.parts {
            let vert_off = if q >= 1 {
                dst.offset_of(c).map(|p| p.1)
            } else {
                None
            };
            let horiz_off = if c > self.c_lo {
                dst.offset_of(c - 1).map(|p| p.1)
            } else {
                None
            };
            for j in 0..self.maps.dims[q] {
                let mut entries = Vec::new();
                if let Some(off) = horiz_off {
                    entries.extend(
                        self.maps
                            .horizontal(c, q)
                            .col(j)
                            .iter()
                            .map(|(i, v)| (i + off, v.clone())),
                    );
                }
                if let Some(off) = vert_off {
                    entries.extend(
                        self.maps
                            .vertical_col(c, q, j)
                            .into_entries()
                            .into_iter()
                            .map(|(i, v)| (i + off, v)),
                    );
                }
                cols.push(SparseVec::from_entries(entries));
            }
        }
        SparseMatrix::from_columns(dst.dim, cols)
    }

    /// Applies the total differential to a single vector of `Tot_n`.
    pub fn apply_differential(&self, n: i64, v: &SparseVec) -> SparseVec {
        let src = self.layout(n);
        let dst = self.layout(n - 1);
        let mut entries = Vec::new();
        for (c, comp) in src.split(v, &self.maps.dims) {
            if comp.is_zero() {
                continue;
            }
            let q = (n - c) as usize;
            if q >= 1 {
                if let Some((_, off)) = dst.offset_of(c) {
                    let w = self.maps.vertical(c, q).mul_vec(&comp);
                    entries.extend(w.into_entries().into_iter().map(|(i, x)| (i + off, x)));
                }
            }
            if c > self.c_lo {
                if let Some((_, off)) = dst.offset_of(c - 1) {
                    let w = self.maps.horizontal(c, q).mul_vec(&comp);
                    entries.extend(w.into_entries().into_iter().map(|(i, x)| (i + off, x)));
                }
            }
        }
        SparseVec::from_entries(entries)
    }

    /// First total degree where `D ∘ D ≠ 0`.
    pub fn square_zero_failure(&self) -> Option<i64> {
        let (lo, hi) = self.degree_range();
        (lo + 2..=hi).find(|&n| {
            !self
                .total_differential(n - 1)
                .mul(&self.total_differential(n))
                .is_zero()
        })
    }
}

/// The window `[c_min, c_max]` of `CP(m)`, checked for `D ∘ D = 0`.
pub fn cp_window(m: &CyclicModule, c_min: i64, c_max: i64) -> Result<BicomplexWindow, i64> {
    let w = BicomplexWindow::new(ColumnMaps::new(m), c_min, c_max);
    match w.square_zero_failure() {
        Some(n) => Err(n),
        None => Ok(w),
    }
}
