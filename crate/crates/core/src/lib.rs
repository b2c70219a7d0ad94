pub mod algebra;
pub mod cli;
pub mod diffalg;
pub mod identtree;
pub mod semialg;

pub use cli::{parse_expr, parse_poly};
