//! The spectral sequence computing the limit mixed Hodge structure.

mod curve;
mod page;
mod report;
mod solver;
mod surface;

pub use curve::{e1_curve, exceptional_covers, gysin_curve, mhs_curve};
pub use page::{Arrow, ArrowKind, E1Entry, E1Page};
pub use report::{cyclo_json, GradedPiece, MHSReport, SymbolicCyclo};
pub use solver::column_exact_solver;
pub use surface::{double_curve_covers, e1_surface, mhs_surface_partial, DoubleCurve, SurfaceAux};
