//! Exact scalar arithmetic: arbitrary-precision rationals, sparse
//! multivariate polynomials, rational functions with factored
//! denominators, and a small expression parser.

mod monomial;
mod parse;
mod poly;
mod ratfunc;

pub use monomial::Monomial;
pub use parse::parse_expr;
pub use poly::Poly;
pub use ratfunc::RatFunc;

use thiserror::Error;

/// Exact arithmetic over ℚ.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator factor `{factor}` vanishes under substitution")]
    SubstitutionPole { factor: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
