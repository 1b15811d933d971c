//! Exact arithmetic: Laurent polynomials, rational functions, q-numbers,
//! truncated series and dense matrices.

mod field;
mod gcd;
mod laurent;
mod matrix;
mod parse;
mod qnum;
mod series;
mod var;

pub use field::Fe;
pub use gcd::{gcd, monic};
pub use laurent::{Coef, LPoly, Mono};
pub use matrix::Matrix;
pub use parse::{parse_expr, parse_family_expr, parse_fe, Expr};
pub use qnum::{qbinom, qfact, qint};
pub use series::TruncatedSeries;
pub use var::Var;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("q-binomial needs n >= r >= 0 (got n = {n}, r = {r})")]
    BadBinomial { n: i64, r: i64 },
    #[error("series inverse needs an invertible constant term")]
    NonUnitConstant,
    #[error("series exponential needs a zero constant term")]
    NonZeroConstant,
    #[error("cannot take a half power of {0}")]
    HalfPower(String),
    #[error("exponent must be an integer or half-integer constant")]
    BadExponent,
    #[error("degree symbol k used outside a family entry")]
    UnboundDegree,
    #[error("singular matrix")]
    Singular,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
