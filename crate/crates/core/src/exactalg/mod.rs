//! Exact linear algebra and polynomial arithmetic.

pub mod cyclo;
pub mod linsolve;
pub mod matrix;
pub mod poly;
pub mod snf;

pub use cyclo::{cyclo_factor, cyclo_factor_any, cyclotomic, divisors, euler_phi, moebius, CycloProduct};
pub use linsolve::{complement_in, kernel_basis, rank, rat_kernel_rank, rref, solve};
pub use matrix::{int_matrix, rat_matrix, Field, Matrix, Scalar};
pub use poly::{charpoly_exact, charpoly_from_int_traces, charpoly_from_traces, Poly};
pub use snf::{smith_normal_form, SmithForm};
