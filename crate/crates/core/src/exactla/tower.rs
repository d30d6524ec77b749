//! Inverse systems of finite-dimensional spaces and their eventual images.

use alloc::vec;
use alloc::vec::Vec;

use super::{LinAlgError, SparseMatrix, Subspace};

/// `V_0 ← V_1 ← … ← V_m` with `maps[i]: V_{i+1} → V_i`.
#[derive(Clone, Debug)]
pub struct Tower {
    spaces: Vec<usize>,
    maps: Vec<SparseMatrix>,
}

impl Tower {
    pub fn new(spaces: Vec<usize>, maps: Vec<SparseMatrix>) -> Result<Self, LinAlgError> {
        if spaces.is_empty() || maps.len() + 1 != spaces.len() {
            return Err(LinAlgError::ShapeMismatch {
                left: (spaces.len(), 0),
                right: (maps.len(), 0),
            });
        }
        for (i, m) in maps.iter().enumerate() {
            if m.shape() != (spaces[i], spaces[i + 1]) {
                return Err(LinAlgError::ShapeMismatch {
                    left: m.shape(),
                    right: (spaces[i], spaces[i + 1]),
                });
            }
        }
        Ok(Self { spaces, maps })
    }

    pub fn stages(&self) -> usize {
        self.spaces.len()
    }

    pub fn spaces(&self) -> &[usize] {
        &self.spaces
    }

    pub fn maps(&self) -> &[SparseMatrix] {
        &self.maps
    }

    /// Image of the deepest stage in every stage (the deepest stage itself
    /// is its own image).
    pub fn eventual_images(&self) -> Vec<Subspace> {
        let m = self.spaces.len() - 1;
        let mut out = vec![Subspace::full(self.spaces[m])];
        for k in (0..m).rev() {
            let next = out.last().unwrap().image_under(&self.maps[k]);
            out.push(next);
        }
        out.reverse();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerStatus {
    Stabilized,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLimit {
    pub status: TowerStatus,
    pub lim_dim: usize,
    pub lim1_zero: bool,
    /// `dim Im_k` for every stage `k`, the last entry being the deepest stage.
    pub image_dims: Vec<usize>,
}

/// Eventual images from the deepest stage; stabilized when their dimension is
/// constant over the `window` stages just above the deepest one.
pub fn tower_limit(t: &Tower, window: usize) -> TowerLimit {
    let image_dims: Vec<usize> = t.eventual_images().iter().map(Subspace::dim).collect();
    let m = t.stages() - 1;
    let window = window.max(1);
    if t.stages() < window + 2 {
        return TowerLimit {
            status: TowerStatus::Undetermined,
            lim_dim: 0,
            lim1_zero: false,
            image_dims,
        };
    }
    let tail = &image_dims[m - window..m];
    if tail.iter().all(|&d| d == tail[0]) {
        TowerLimit {
            status: TowerStatus::Stabilized,
            lim_dim: tail[0],
            lim1_zero: true,
            image_dims,
        }
    } else {
        TowerLimit {
            status: TowerStatus::Undetermined,
            lim_dim: 0,
            lim1_zero: false,
            image_dims,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_identity_tower() {
        let t = Tower::new(vec![1; 6], vec![SparseMatrix::identity(1); 5]).unwrap();
        let l = tower_limit(&t, 3);
        assert_eq!(l.status, TowerStatus::Stabilized);
        assert_eq!(l.lim_dim, 1);
        assert!(l.lim1_zero);
    }

    #[test]
    fn zero_tower() {
        let t = Tower::new(vec![2; 6], vec![SparseMatrix::zeros(2, 2); 5]).unwrap();
        let l = tower_limit(&t, 3);
        assert_eq!(l.status, TowerStatus::Stabilized);
        assert_eq!(l.lim_dim, 0);
    }

    #[test]
    fn too_short_is_undetermined() {
        let t = Tower::new(vec![1; 3], vec![SparseMatrix::identity(1); 2]).unwrap();
        assert_eq!(tower_limit(&t, 3).status, TowerStatus::Undetermined);
    }

    #[test]
    fn growing_projections_do_not_stabilize_early() {
        // V_k = ℚ^{k+1}, maps drop the last coordinate: images are everything.
        let spaces: Vec<usize> = (1..=6).collect();
        let maps = (0..5)
            .map(|k| {
                SparseMatrix::from_columns(
                    k + 1,
                    (0..k + 2)
                        .map(|j| {
                            if j <= k {
                                crate::exactla::SparseVec::unit(j)
                            } else {
                                crate::exactla::SparseVec::new()
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        let t = Tower::new(spaces, maps).unwrap();
        assert_eq!(tower_limit(&t, 3).status, TowerStatus::Undetermined);
    }
}
