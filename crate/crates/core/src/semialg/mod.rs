//! Emptiness of real semialgebraic sets.

mod critical;
mod encode;
mod presolve;
mod realcount;
mod signs;
mod system;
mod verdict;
mod witness;

pub use encode::{encode, EncodedSystem};
pub use realcount::{real_count_zero_dim, CountMethod, RealCount, RealCountError};
pub use system::{Constraint, ConstraintSet, Relation, SemiAlgebraicSystem};
pub use verdict::{is_empty, Certificate, EmptinessStatus, EmptinessVerdict, SolveConfig, Stage};
pub use witness::{height_candidates, rational_witness_search, verify_witness};
