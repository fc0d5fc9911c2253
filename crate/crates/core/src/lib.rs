//! Resolution of quotient singularities, semistable reduction and the
//! limit mixed Hodge structure of Milnor fibres.

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod qspace;
pub mod strata;
pub mod semistable;
pub mod monodromy;
pub mod steenbrink;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Integer = BigInt;
pub type Rational = BigRational;
pub type IntMatrix = exactalg::Matrix<BigInt>;
pub type RatMatrix = exactalg::Matrix<BigRational>;
pub type IntPoly = exactalg::Poly<BigInt>;
pub type RatPoly = exactalg::Poly<BigRational>;
