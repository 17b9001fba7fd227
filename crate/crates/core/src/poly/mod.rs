//! Exact multivariate polynomials over the rationals and a Buchberger
//! Gröbner engine with elimination.

mod groebner;
mod ideal;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use groebner::{groebner_basis, normal_form, Budget, Stats};
pub use ideal::{GroebnerBasis, Ideal};
pub use monomial::{Monomial, VarIndex};
pub use order::MonomialOrder;
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use polynomial::{Coeff, Polynomial};
pub use ring::{PolyRing, Ring, VarTable, Variable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial syntax: {0}")]
    Syntax(String),
    #[error("resource budget exceeded: more than {limit} {what}")]
    BudgetExceeded { what: &'static str, limit: u64 },
}
