//! Cohomology of finite groups: free resolutions, cochains, induced maps,
//! restriction and corestriction.

mod cohomology;
mod resolution;

pub use cohomology::{
    bar_coboundary, cohomology, cohomology_with, corestriction, eval_cochain, hom_matrix, map_on_cohomology,
    restriction, Cohomology, CohomologyClass, MAX_COHOMOLOGY_DEGREE,
};
pub use resolution::{
    apply_map, bar_resolution, normalized_bar_resolution, periodic_resolution, BarTuples, FreeElement,
    FreeResolution, ResolutionChoice, MAX_DEGREE,
};
