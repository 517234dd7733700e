//! Split extensions `Z^r ⋊ π`: lattice cohomology, the twisted tensor
//! resolution, `d₂^{0,2}` and the class `v₂`.

mod d2;
mod lattice_coh;
mod laurent;
mod wall;

pub use d2::{
    alternating_coords, alternating_from_coords, cv_formula_check, cv_formula_check_with, d2_02, d2_02_with,
    d2_class, d2_cochain, d2_target, invariant_classes, random_correction, uct_identify, v2, v2_with,
    BilinearCocycle, D2Map, V2Class,
};
pub use lattice_coh::{exterior_power, h2_lattice, lattice_cohomology};
pub use laurent::{LaurentElement, SplitExtension};
pub use wall::{mask_of, subsets, wall_resolution, Gen, WallChain, WallResolution};
