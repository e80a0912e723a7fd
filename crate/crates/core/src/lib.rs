pub mod catalog;
pub mod endo;
pub mod error;
pub mod field;
pub mod format;
pub mod lie;
pub mod matrix;
pub mod radical;
pub mod subspace;
pub mod u0rep;
pub mod variety;

pub use error::{Error, Result};
pub use field::{Fe, Field};
pub use lie::{Element, RestrictedLieAlgebra};
pub use matrix::Matrix;
pub use subspace::Subspace;
pub use u0rep::{RepModule, U0Algebra};
