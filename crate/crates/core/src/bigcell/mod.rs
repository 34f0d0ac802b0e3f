//! Dense big cells `(B, B′, Λ)`: the map θ = (π ⊗ π′)∘Δ, its injectivity,
//! induced comodules, dominant weights and the simple comodules `L(λ)`.

mod datum;
mod engine;

pub use datum::{broken_slq2_datum, datum_preset, BigCellDatum, Grading, DATUM_NAMES};
pub use engine::{
    BigCellReport, DegreeReport, Dominance, InducedSubspace, InjectivityReport, SimpleComodule,
};
pub use crate::weight::WeightWord;

use crate::comod::ComodError;
use crate::hopfalg::HopfError;
use crate::weight::WeightError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BigCellError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Comod(#[from] ComodError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("inconsistent big cell datum: {0}")]
    Shape(String),
    #[error("unknown big cell datum {0:?}")]
    UnknownDatum(String),
    #[error("no grading registered for this datum")]
    NoGrading,
    #[error("Ind({0}) is zero up to the cutoff")]
    EmptyInduced(String),
    #[error("Ind({weight}) has not stabilized: dimension {below} below cutoff {cutoff}, {at} at it")]
    NotStabilized {
        weight: String,
        cutoff: usize,
        below: usize,
        at: usize,
    },
    #[error("Ind({weight}) has {count} B′-stable lines, expected one")]
    StableLineCount { weight: String, count: usize },
    #[error("comodule generated for {weight} is not simple: dimension {dim}, coefficient rank {rank}")]
    NotSimple {
        weight: String,
        dim: usize,
        rank: usize,
    },
}

#[cfg(test)]
mod tests;
