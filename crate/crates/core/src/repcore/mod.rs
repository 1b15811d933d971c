//! Matrix representations over the exact field: closed-form generator
//! families, evaluation of words, relation checks, the Ψ/H series check,
//! highest-weight extraction and pullbacks along φ_i.

mod checks;
mod rep;
mod weight;

use thiserror::Error;

use crate::arith::ArithError;
use crate::presentations::PresentationError;

pub use checks::{check_relations, psi_consistency, series_base, RELATION_SCOPE};
pub use rep::{build_va, Degrees, GenEntry, MatrixRep, RepFile, BUNDLED_REPS};
pub use weight::{find_highest_weight, pullback, sigma_equivariance, HighestWeightData, NodeWeight};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("cannot read representation: {0}")]
    Parse(String),
    #[error("{0}")]
    Shape(String),
    #[error("{symbol} is not a generator of {algebra}")]
    UnknownSymbol { symbol: String, algebra: String },
    #[error("relation {id} belongs to {relation}, representation is of {rep}")]
    AlgebraMismatch { id: String, relation: String, rep: String },
    #[error("parameter {0} must be invertible (nonzero)")]
    ZeroParameter(String),
    #[error("unknown parameter {0}")]
    UnknownParameter(String),
    #[error("no highest-weight vector: the joint kernel of the raising operators is zero")]
    NoHighestWeight,
    #[error("ambiguous highest weight: joint kernel has dimension {dim}")]
    AmbiguousHighestWeight { dim: usize, basis: Vec<Vec<String>> },
    #[error("vector is not an eigenvector of {0}")]
    NotEigen(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}
