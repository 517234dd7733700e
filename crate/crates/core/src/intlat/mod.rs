//! Exact linear algebra over `Z` and `Z/n`.

mod abelian;
mod homology;
mod matrix;
mod smith;

pub use abelian::{cokernel, Cokernel, FinAbGroup};
pub use homology::{homology_of_pair, kernel_basis, solve_integer, Subquotient};
pub use matrix::{big_vec, reduce_vec, IntMatrix};
pub use smith::{invariant_factors, smith, SmithDecomposition};
