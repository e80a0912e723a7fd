//! The restricted enveloping algebra and its finite-dimensional modules.

mod algebra;
mod hom;
mod module;
mod structure;

pub use algebra::{Sparse, U0Algebra, LOG2_BUDGET};
pub use hom::{end, hom};
pub use module::{characters, ModuleFailure, Morphism, RepModule, DIM_BUDGET};
pub use structure::{
    composition_factor_dims, decompose, is_isomorphic, IsoOutcome, ProjectiveCount, Stripped, DECOMPOSE_BUDGET,
};
