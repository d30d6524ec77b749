//! Short exact sequences of complexes and their connecting maps.

use alloc::vec::Vec;

use super::echelon::Solver;
use super::homology::{ChainComplex, Homology};
use super::{LinAlgError, SparseMatrix, SparseVec};

/// `0 → A --i--> B --p--> C → 0`, degreewise, with all three complexes on
/// the same degree range.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub sub: ChainComplex,
    pub mid: ChainComplex,
    pub quot: ChainComplex,
    inc: Vec<SparseMatrix>,
    proj: Vec<SparseMatrix>,
}

impl ShortExactSequence {
    /// `inc[k]` and `proj[k]` act in degree `min_degree + k`. Checks that the
    /// maps are chain maps and that every degree is exact.
    pub fn new(
        sub: ChainComplex,
        mid: ChainComplex,
        quot: ChainComplex,
        inc: Vec<SparseMatrix>,
        proj: Vec<SparseMatrix>,
    ) -> Result<Self, LinAlgError> {
        let lo = mid.min_degree();
        if sub.min_degree() != lo || quot.min_degree() != lo {
            return Err(LinAlgError::NotExact {
                degree: lo,
                reason: "degree ranges differ",
            });
        }
        let len = (mid.max_degree() - lo + 1) as usize;
        if inc.len() != len || proj.len() != len {
            return Err(LinAlgError::NotExact {
                degree: lo,
                reason: "map count differs from degree count",
            });
        }
        for k in 0..len {
            let n = lo + k as i64;
            let (i, p) = (&inc[k], &proj[k]);
            if i.shape() != (mid.dim(n), sub.dim(n)) || p.shape() != (quot.dim(n), mid.dim(n)) {
                return Err(LinAlgError::ShapeMismatch {
                    left: i.shape(),
                    right: p.shape(),
                });
            }
            if i.rank() != i.ncols() {
                return Err(LinAlgError::NotExact {
                    degree: n,
                    reason: "inclusion not injective",
                });
            }
            if p.rank() != p.nrows() {
                return Err(LinAlgError::NotExact {
                    degree: n,
                    reason: "projection not surjective",
                });
            }
            if !p.mul(i).is_zero() || i.ncols() + p.nrows() != i.nrows() {
                return Err(LinAlgError::NotExact {
                    degree: n,
                    reason: "not exact in the middle",
                });
            }
            if k > 0 {
                let ok_i = mid.differential(n).mul(i) == inc[k - 1].mul(&sub.differential(n));
                let ok_p = quot.differential(n).mul(p) == proj[k - 1].mul(&mid.differential(n));
                if !ok_i || !ok_p {
                    return Err(LinAlgError::NotExact {
                        degree: n,
                        reason: "maps do not commute with differentials",
                    });
                }
            }
        }
        Ok(Self {
            sub,
            mid,
            quot,
            inc,
            proj,
        })
    }

    fn slot(&self, n: i64) -> Option<usize> {
        let k = n - self.mid.min_degree();
        (k >= 0 && k <= self.mid.max_degree() - self.mid.min_degree()).then_some(k as usize)
    }

    pub fn inclusion(&self, n: i64) -> SparseMatrix {
        match self.slot(n) {
            Some(k) => self.inc[k].clone(),
            None => SparseMatrix::zeros(0, 0),
        }
    }

    pub fn projection(&self, n: i64) -> SparseMatrix {
        match self.slot(n) {
            Some(k) => self.proj[k].clone(),
            None => SparseMatrix::zeros(0, 0),
        }
    }

    /// Chain-level lift for the connecting map out of degree `n`.
    pub fn lift(&self, n: i64) -> ConnectingLift {
        let lower = if self.slot(n - 1).is_some() {
            self.inclusion(n - 1)
        } else {
            SparseMatrix::zeros(0, 0)
        };
        ConnectingLift::new(&self.projection(n), &self.mid.differential(n), &lower)
    }
}

/// Zig-zag `z ↦ i⁻¹(d(p⁻¹ z))` for one degree of a short exact sequence.
pub struct ConnectingLift {
    lift_p: Solver,
    d_mid: SparseMatrix,
    lift_i: Solver,
}

impl ConnectingLift {
    pub fn new(proj: &SparseMatrix, d_mid: &SparseMatrix, inc_below: &SparseMatrix) -> Self {
        Self {
            lift_p: Solver::new(proj),
            d_mid: d_mid.clone(),
            lift_i: Solver::new(inc_below),
        }
    }

    /// A cycle of the subcomplex one degree down representing `∂[z]`.
    pub fn apply(&self, z: &SparseVec) -> Result<SparseVec, LinAlgError> {
        let y = self.lift_p.solve(z).ok_or(LinAlgError::NotExact {
            degree: 0,
            reason: "element not in image of projection",
        })?;
        let dy = self.d_mid.mul_vec(&y);
        if dy.is_zero() {
            return Ok(SparseVec::new());
        }
        self.lift_i.solve(&dy).ok_or(LinAlgError::NotExact {
            degree: 0,
            reason: "boundary of lift leaves the subcomplex",
        })
    }
}

/// `∂: H_n(C) → H_{n−1}(A)` for a validated short exact sequence.
pub fn connecting_map(ses: &ShortExactSequence, n: i64) -> Result<SparseMatrix, LinAlgError> {
    let hq = ses.quot.homology(true);
    let hs = ses.sub.homology(true);
    let empty = Homology::top(super::Echelon::new(0));
    let src = hq.get(n).unwrap_or(&empty);
    let tgt = hs.get(n - 1).unwrap_or(&empty);
    connecting_map_between(&ses.lift(n), src, tgt)
}

/// Connecting map with precomputed homology of the quotient in degree `n`
/// and of the subcomplex in degree `n − 1`.
pub fn connecting_map_between(
    lift: &ConnectingLift,
    source: &Homology,
    target: &Homology,
) -> Result<SparseMatrix, LinAlgError> {
    let cols = source
        .representatives()
        .iter()
        .map(|z| {
            let x = lift.apply(z)?;
            if x.is_zero() {
                Ok(SparseVec::new())
            } else {
                target.class_of(&x)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SparseMatrix::from_columns(target.dim(), cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn zero_cx(dims: &[usize]) -> ChainComplex {
        let diffs = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| SparseMatrix::zeros(if i == 0 { 0 } else { dims[i - 1] }, d))
            .collect();
        ChainComplex::new(0, diffs).unwrap()
    }

    // 0 → ℚ[0] → (ℚ --id--> ℚ) → ℚ[1] → 0 : ∂ is an isomorphism H_1(C) → H_0(A).
    #[test]
    fn two_term_iso() {
        let a = zero_cx(&[1, 0]);
        let b = ChainComplex::new(
            0,
            vec![SparseMatrix::zeros(0, 1), SparseMatrix::identity(1)],
        )
        .unwrap();
        let c = zero_cx(&[0, 1]);
        let ses = ShortExactSequence::new(
            a,
            b,
            c,
            vec![SparseMatrix::identity(1), SparseMatrix::zeros(1, 0)],
            vec![SparseMatrix::zeros(0, 1), SparseMatrix::identity(1)],
        )
        .unwrap();
        let d = connecting_map(&ses, 1).unwrap();
        assert_eq!(d.shape(), (1, 1));
        assert_eq!(d.rank(), 1);
    }

    #[test]
    fn zero_sub_gives_zero() {
        let a = zero_cx(&[0, 0]);
        let b = zero_cx(&[1, 1]);
        let c = zero_cx(&[1, 1]);
        let ses = ShortExactSequence::new(
            a,
            b,
            c,
            vec![SparseMatrix::zeros(1, 0), SparseMatrix::zeros(1, 0)],
            vec![SparseMatrix::identity(1), SparseMatrix::identity(1)],
        )
        .unwrap();
        let d = connecting_map(&ses, 1).unwrap();
        assert_eq!(d.shape(), (0, 1));
    }

    #[test]
    fn rejects_non_exact() {
        let a = zero_cx(&[1]);
        let b = zero_cx(&[1]);
        let c = zero_cx(&[1]);
        let r = ShortExactSequence::new(
            a,
            b,
            c,
            vec![SparseMatrix::identity(1)],
            vec![SparseMatrix::identity(1)],
        );
        assert!(r.is_err());
    }
}
