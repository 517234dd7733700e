//! Transcendental Brauer groups: the symbol basis for quasi-trivial tori with
//! a brute-force invariants oracle, and the levelwise `d₂` check for real tori.

mod qt;
mod real;

pub use qt::{
    brute_invariants, n_prime, n_value, orbit_sum_elements, pair_orbits, representative_independence, thm2_basis,
    verify_basis, BasisVerification, BrauerReport, OrbitReport, PairOrbit, SymbolExpr, SymbolKind,
};
pub use real::{real_torus_check, RealTorusReport};
