//! Hochschild cyclic modules of algebras and their decompositions.

mod almost_free;
mod filtration;
mod hh;
mod partition;
mod square;
mod weight;

use alloc::string::String;
use core::fmt;

use crate::algcore::AlgebraError;

pub use almost_free::{almost_free, closure_escape, selection_dims, AlmostFree, Escape};
pub use filtration::{
    compare_with_graded, compare_with_quotient, graded_filtration, ideal_filtration,
    moore_homology_dims, norm_monotone, partition_chain, ChainStage, FiltrationStep,
    GradedComparison, IdealFiltration, PartitionChain, QuotientComparison,
};
pub use hh::{
    hh, hh_map, index_of, tensor_power_maps, word_of, HochschildModule, DEFAULT_WORD_BUDGET,
};
pub use partition::{gap_set, partitions, GapSet, Partition};
pub use square::{split_square_ifib, IteratedFiber};
pub use weight::{
    partition_decompose, weight_decompose, LabeledPiece, PartitionPiece, WeightDecomposition,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HhError {
    /// `dim(A)^{q+1}` words in degree `q` exceed the budget.
    Budget {
        degree: usize,
        words: usize,
        budget: usize,
    },
    Algebra(AlgebraError),
    PartTooLarge {
        part: usize,
        bimodules: usize,
    },
    NonMultiplicativeSections,
    NotClosed(String),
    NotCertified(String),
    InvalidArgument(&'static str),
}

impl fmt::Display for HhError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HhError::Budget { degree, words, budget } => write!(
                f,
                "degree {degree} needs {words} tensor words, over the budget of {budget}; lower the maximal degree"
            ),
            HhError::Algebra(e) => write!(f, "{e}"),
            HhError::PartTooLarge { part, bimodules } => write!(f, "part {part} exceeds the number of bimodules ({bimodules})"),
            HhError::NonMultiplicativeSections => f.write_str("the square's sections are not unital algebra maps"),
            HhError::NotClosed(s) | HhError::NotCertified(s) => f.write_str(s),
            HhError::InvalidArgument(s) => f.write_str(s),
        }
    }
}

impl core::error::Error for HhError {}
