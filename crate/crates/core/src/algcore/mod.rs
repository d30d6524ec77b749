//! Finite-dimensional algebras, bimodules, ideals and split squares.

mod algebra;
mod bimodule;
mod ideal;
mod square;

use alloc::string::String;
use core::fmt;

pub use algebra::{multiplicativity_failure, validate_algebra, Algebra, AlgebraMap, AlgebraReport};
pub use bimodule::{square_zero_extension, Bimodule};
pub use ideal::{
    adapted_basis, associated_graded, ideal_power, nilpotency_index, quotient_by_ideal,
    truncated_polynomial, AdaptedBasis, GradedAlgebra, Ideal,
};
pub use square::{split_square, SplitSquare};

pub(crate) use ideal::adapted_labels;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    Shape(&'static str),
    NotAssociative(usize, usize, usize),
    UnitFailure(usize),
    NotMultiplicative(usize, usize),
    NotUnital,
    NotSurjective,
    BadSection,
    BadAction(String),
    NotIdeal,
    NotNilpotent,
    NotGraded(usize, usize),
    InvalidArgument(&'static str),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::Shape(s) | AlgebraError::InvalidArgument(s) => f.write_str(s),
            AlgebraError::NotAssociative(i, j, k) => {
                write!(f, "not associative on basis triple ({i}, {j}, {k})")
            }
            AlgebraError::UnitFailure(i) => {
                write!(f, "unit does not act as identity on basis element {i}")
            }
            AlgebraError::NotMultiplicative(i, j) => {
                write!(f, "map not multiplicative on basis pair ({i}, {j})")
            }
            AlgebraError::NotUnital => f.write_str("map does not preserve the unit"),
            AlgebraError::NotSurjective => f.write_str("square map is not surjective"),
            AlgebraError::BadSection => f.write_str("section is inconsistent with the square maps"),
            AlgebraError::BadAction(s) => write!(f, "bimodule axiom fails: {s}"),
            AlgebraError::NotIdeal => f.write_str("subspace is not a two-sided ideal"),
            AlgebraError::NotNilpotent => f.write_str("ideal is not nilpotent"),
            AlgebraError::NotGraded(i, j) => write!(
                f,
                "product of basis elements {i}, {j} is not homogeneous of the summed degree"
            ),
        }
    }
}

impl core::error::Error for AlgebraError {}
