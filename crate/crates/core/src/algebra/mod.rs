//! Exact multivariate polynomial arithmetic over the rationals.

mod groebner;
pub mod linalg;
mod monomial;
mod order;
mod poly;
mod univariate;
mod var;

pub use groebner::{eliminate, groebner_basis, ideal_dimension, leading_monomial, normal_form, GbLimits, GroebnerBasis};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::Poly;
pub use univariate::{isolate_real_roots, simplest_between, sturm_count, Bound, RootInterval, UPoly};
pub use var::Var;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("resource limit exceeded: {0}")]
    ResourceExceeded(String),
}
