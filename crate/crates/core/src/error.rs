use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is not irreducible")]
    NotIrreducible,
    #[error("characteristic 2 is not supported")]
    CharTwoUnsupported,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not a p-ideal")]
    NotAnIdeal,
    #[error("subspace is not closed under bracket and p-map")]
    NotPClosed,
    #[error("{what}: {needed} exceeds the budget of {budget}")]
    BudgetExceeded { what: &'static str, needed: u128, budget: u128 },
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("element is not p-nilpotent (x^[p] != 0)")]
    NotPNilpotent,
    #[error("algebra is not unipotent")]
    NotUnipotent,
    #[error("algebra dimension is too small")]
    DimensionTooSmall,
    #[error("module does not have constant rank on the plane")]
    NotConstantRankOnPlane,
    #[error("restriction to the plane is not endotrivial")]
    NotEndotrivialOnPlane,
    #[error("Heller walk exceeded depth {0}")]
    WalkDepthExceeded(usize),
    #[error("E(2) has no points over this field")]
    EmptyE2,
    #[error("module dimension is divisible by p")]
    DimensionDivisibleByP,
    #[error("algebra is not supersolvable")]
    NotSupersolvable,
    #[error("module is not endotrivial")]
    NotEndotrivial,
    #[error("composition factors are not all one-dimensional; try a field extension of degree {suggested_degree}")]
    NotSplit { suggested_degree: u32 },
    #[error("isomorphism test inconclusive: {0}")]
    Unknown(String),
    #[error("unknown catalogue entry {0}")]
    UnknownEntry(String),
    #[error("constructed structure failed verification: {0}")]
    AxiomFailure(String),
    #[error("format error: {0}")]
    Format(String),
}
