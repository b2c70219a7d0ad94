//! Parametrized ODE models, input-output polynomials and exhaustive
//! summaries.

mod augment;
mod expr;
mod io;
mod lie;
mod model;
mod substitution;
mod summary;
mod wronskian;

pub use augment::augment_initial_conditions;
pub use expr::RationalExpr;
pub use io::{io_polynomials, normalize_io, DiffAlgError, IOPolynomial, IoTerm};
pub use lie::lie_derivative;
pub use model::{derivative_var, split_derivative, Model, ModelError};
pub use summary::{exhaustive_summary, ExhaustiveSummary};
pub use wronskian::{wronskian_check, WronskianVerdict};

pub use crate::semialg::ConstraintSet;
