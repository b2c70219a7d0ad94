//! Relative identifiability tests and the identifiability tree.

mod context;
mod tree;

pub use context::{
    build_relident_system, explain_witness, relative_identifiability, relative_identifiability_verdict, separation_var, tilde,
    IdentContext, RelIdent, TestCache, TestRecord, WitnessError, WitnessReport,
};
pub use tree::{
    canonicalize, complexity_bound, identifiability_tree, verify_complexity_bound, BoundError, BoundReport, IdentTree, MarkedParam,
    TreeStats, UndeterminedTest,
};
