//! Truncated simplicial and cyclic modules, the cyclic category, free cyclic objects.

mod dold_kan;
mod free;
mod lambda;
mod module;
mod nerve;

pub use dold_kan::{change_basis, dold_kan};
pub use free::{base_inclusion, counit, free_cyclic, free_index};
pub use lambda::{
    lambda_factorize, lambda_morphisms, reachable_normal_forms, word_action, LambdaMorphism,
    Letter, WordError,
};
pub use module::{
    morphism_map, validate_cyclic, CyclicModule, CyclicMorphism, CyclicReport, MorphismFailure, Op,
    SimplicialModule, Violation,
};
pub use nerve::{nerve_weight_piece, WeightPiece};
