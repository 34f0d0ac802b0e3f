//! Presented Hopf algebras, Hopf algebra maps, standard constructions and
//! the preset catalog.

mod algebra;
mod construct;
mod json;
mod map;
mod presets;
mod tensor;

pub use algebra::{Axiom, AxiomFailure, HopfAxiomReport, PresentedHopf};
pub use construct::{
    free_product, group_algebra, quotient_by_generators, tensor_product, GroupKind,
    GroupPresentation,
};
pub use json::{
    load_presentation, verify, PresentationSpec, DEFAULT_CONFLUENCE_DEGREE, DEFAULT_HOPF_DEGREE,
};
pub use map::HopfMap;
pub use presets::{
    default_ctx, hq_embedding, hq_spec, preset, preset_in, projection, sl2j_spec, slq2_spec,
    PRESET_NAMES,
};
pub use tensor::{TensorDisplay, TensorPoly};

use crate::ncpoly::NcError;
use crate::scalars::ScalarError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("invalid presentation: {0}")]
    Schema(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("field contexts differ")]
    FieldMismatch,
    #[error("relation {index} ({rule}) does not map to zero: image {image}")]
    RelationNotPreserved {
        index: usize,
        rule: String,
        image: String,
    },
    #[error("map is not comultiplicative on {generator}: difference {detail}")]
    NotComultiplicative { generator: String, detail: String },
    #[error("map does not preserve the counit on {generator}")]
    CounitMismatch { generator: String },
    #[error("rules are not confluent: {}", pairs.join("; "))]
    NotConfluent { pairs: Vec<String> },
    #[error("Hopf axioms fail: {}", failures.join("; "))]
    AxiomsFailed { failures: Vec<String> },
}

#[cfg(test)]
mod tests;
