//! Finite groups, their lattices and coefficient modules, and Galois data of
//! quasi-trivial tori.

mod c2;
mod galois;
mod group;
mod lattice;

pub use c2::{c2_decompose, canonical_involution, is_involution, C2Decomposition};
pub use galois::GaloisDatum;
pub use group::{compose, cycle_notation, is_permutation, perm_inverse, FiniteGroup, Perm, Subgroup};
pub use lattice::{
    invariants, invariants_finite, mod_inverse, pair_index, pair_module, pairs, permutation_lattice,
    permutation_lattice_of, sign_character, tate_twist, tate_twist_lattice, CoeffModule, GLattice, ModuleMap,
};
