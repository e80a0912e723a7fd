//! Shared fixtures for the criterion benches.

use rlie_core::catalog::{self, HeisenbergPmap};
use rlie_core::{Field, RepModule, RestrictedLieAlgebra};

pub fn f3() -> Field {
    Field::prime(3).expect("3 is prime")
}

pub fn heisenberg() -> RestrictedLieAlgebra {
    catalog::heisenberg(&f3(), HeisenbergPmap::Zero).expect("catalogue entry")
}

/// The trivial module of the rank-`r` elementary abelian algebra.
pub fn trivial_ea(r: usize) -> RepModule {
    let l = catalog::elementary_abelian(&f3(), r).expect("catalogue entry");
    RepModule::trivial(&l).expect("trivial module")
}
