//! Monodromy invariants of the Milnor fibre.

mod acampo;
mod cohomology;
mod cover;
mod filtration;

pub use acampo::{acampo_charpoly, perm_charpoly};
pub use cohomology::{complex_cohomology_action, CohomologyMode, ComplexCohomology, Restrict};
pub use cover::{cyclic_cover_curve, CurveCover};
pub use filtration::{jordan_blocks_matrix, jordan_from_graded, weight_filtration, GradedCharData, JordanSpectrum, WeightFiltration};
