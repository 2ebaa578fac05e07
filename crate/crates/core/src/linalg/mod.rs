//! Exact integer and rational linear algebra.

mod hermite;
mod matrix;
mod phase;
mod smith;

pub use hermite::{
    hermite_normal_form, hermite_normal_form_with, solve_integer, HermiteForm, IntegerSolver,
};
pub use matrix::IntMatrix;
pub use phase::{format_rational, parse_rational, PhaseModOne};
pub use smith::{
    invariant_factors, invariant_factors_with, smith_normal_form, smith_normal_form_with,
    SmithDecomposition,
};
pub(crate) use smith::smith_with_left_inverse;
