//! Input model for Q-normal-crossing divisors and the example families.

mod generators;
mod model;
mod toric;

pub use generators::{gen_one_branch, gen_two_branch};
pub use model::{
    check_schema, from_json_str, from_json_value, load, save, to_json_string, validate, violations, Component, ComponentId, Role, StratifiedDivisor, Stratum,
    ValidatedDivisor,
};
pub use toric::{gen_yls_cusp, gen_yls_two_branch, yls_cusp_model, yls_two_branch_model, ToricModel};
