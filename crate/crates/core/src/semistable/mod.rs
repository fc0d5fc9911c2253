//! Semistable reduction: cyclic covers of the strata and the dual complex.

mod complex;
mod covering;

pub use complex::{build_dual_complex, gen_multibranch, multibranch_gap, Cell, LevelB, LevelBEdge, LevelBVertex, SemistableComplex};
pub use covering::{closure_gcd, component_count, component_euler, exponent, riemann_hurwitz_check, ComponentEuler, RiemannHurwitz};
