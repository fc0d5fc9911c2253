//! Cyclic quotient spaces, multiplicities and weighted blow-up charts.

mod blowup;
mod quotient;

pub use blowup::{blowup_2d, blowup_3d_quotient, blowup_3d_smooth, charts_accept, simplify_wp2, AxisLine, Blowup, Chart, Exceptional};
pub use quotient::{bezout_inverse, QuotientType};
