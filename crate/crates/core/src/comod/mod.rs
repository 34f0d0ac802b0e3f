//! Finite-dimensional comodules as multiplicative matrices, stable lines and
//! highest weights, and the comodule algebra R(F).

mod lines;
mod matrix;
mod rf;

pub use lines::{highest_weight, stable_lines, StableLine, StableLineSummary, WeightCandidate};
pub use matrix::Comodule;
pub use rf::{parse_rf_degree, rf_degrees_up_to, show_rf_degree, RfAlgebra, RfDegree};

#[cfg(test)]
pub(crate) use matrix::poly_vec;

use crate::hopfalg::HopfError;
use crate::ncpoly::NcError;
use crate::scalars::ScalarError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComodError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("{0}")]
    Shape(String),
    #[error("entry ({row},{col}) is not multiplicative: difference {detail}")]
    NotMultiplicative {
        row: usize,
        col: usize,
        detail: String,
    },
    #[error("counit fails on entry ({row},{col})")]
    CounitFails { row: usize, col: usize },
    #[error("comodules live over different Hopf algebras")]
    HostMismatch,
    #[error("subspace is not a subcomodule: coaction of {0} leaves it")]
    NotInvariant(String),
    #[error("no stable line among {candidates} candidate weights (candidate set may be too small)")]
    NoStableLine { candidates: usize },
    #[error("stable line is not unique: weights {}", lines.join(", "))]
    NotUnique { lines: Vec<String> },
    #[error("F is singular")]
    SingularF,
    #[error("R(F) rules are not confluent: {}", .0.join("; "))]
    NotConfluent(Vec<String>),
    #[error("no coaction host: only F = diag(q^-1, q) carries the H(q) coaction")]
    NoCoactionHost,
    #[error("coaction leaves the graded component at {0}")]
    NotHomogeneous(String),
    #[error("map is not colinear on {generator}: difference {detail}")]
    NotColinear { generator: String, detail: String },
}

#[cfg(test)]
mod tests;
