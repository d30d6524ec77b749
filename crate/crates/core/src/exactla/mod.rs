//! Exact sparse linear algebra over ℚ.

mod echelon;
mod homology;
mod scalar;
mod ses;
mod sparse;
mod subspace;
mod tower;

use core::fmt;

pub use echelon::{reduce_columns, ColumnReduction, Echelon, Solver, Tagging};
pub use homology::{
    homology_at, induced_map, is_exact_at, ChainComplex, ComplexHomology, Homology,
};
pub use scalar::{ParseScalarError, Scalar};
pub use ses::{connecting_map, connecting_map_between, ConnectingLift, ShortExactSequence};
pub use sparse::{SparseMatrix, SparseVec};
pub use subspace::{decompose, is_scalar_identity, Decomposition, Subspace};
pub use tower::{tower_limit, Tower, TowerLimit, TowerStatus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinAlgError {
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// `d ∘ d` has a nonzero entry at `(row, col)`.
    NotAComplex {
        row: usize,
        col: usize,
    },
    /// The vector is not a cycle; `index` is a coordinate witnessing it.
    NotACycle {
        index: usize,
    },
    BoundaryNotPreserved,
    NotExact {
        degree: i64,
        reason: &'static str,
    },
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::ShapeMismatch { left, right } => {
                write!(
                    f,
                    "shape mismatch: {}x{} vs {}x{}",
                    left.0, left.1, right.0, right.1
                )
            }
            LinAlgError::NotAComplex { row, col } => {
                write!(f, "composite of differentials is nonzero at ({row}, {col})")
            }
            LinAlgError::NotACycle { index } => {
                write!(f, "vector is not a cycle (coordinate {index})")
            }
            LinAlgError::BoundaryNotPreserved => {
                f.write_str("map sends a boundary to a nonzero class")
            }
            LinAlgError::NotExact { degree, reason } => {
                write!(f, "sequence not exact in degree {degree}: {reason}")
            }
        }
    }
}

impl core::error::Error for LinAlgError {}
