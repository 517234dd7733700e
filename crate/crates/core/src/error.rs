use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("composition of the two maps is not zero")]
    CompositionNonzero,

    #[error("vector is not a cycle of the given pair")]
    NotACycle,

    #[error("matrix is not an involution")]
    NotAnInvolution,

    #[error("character takes values other than +1/-1 on a lattice")]
    NonSignCharacterOnLattice,

    #[error("element set is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("module map does not commute with the group action")]
    NotEquivariant,

    #[error("resolution degree {0} is larger than supported")]
    DegreeTooLarge(usize),

    #[error("class is not invariant under the quotient group")]
    NotInvariant,

    #[error("twisting differential could not be solved: {0}")]
    HomotopySolveFailure(String),

    #[error("at least two characters are required, got {0}")]
    RankTooSmall(usize),

    #[error("orbit is not quadratic")]
    NotQuadratic,

    #[error("modulus {modulus} is not a multiple of n = {needed}")]
    ModulusTooSmall { modulus: u64, needed: u64 },

    #[error("modulus {modulus} does not divide the cyclotomic modulus {cyclotomic}")]
    ModulusIncompatible { modulus: u64, cyclotomic: u64 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid Galois datum: {0}")]
    InvalidDatum(String),
}
