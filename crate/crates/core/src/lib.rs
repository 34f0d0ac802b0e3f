pub mod bigcell;
pub mod comod;
pub mod deform;
pub mod dsl;
pub mod grothendieck;
pub mod hopfalg;
pub mod linalg;
pub mod ncpoly;
pub mod scalars;
pub mod weight;

pub use bigcell::{datum_preset, BigCellDatum, Dominance};
pub use comod::Comodule;
pub use grothendieck::{FusionElement, FusionRing};
pub use hopfalg::{preset, HopfMap, PresentedHopf, TensorPoly};
pub use ncpoly::{NcPoly, Word};
pub use scalars::{FieldCtx, Scalar};
pub use weight::WeightWord;
