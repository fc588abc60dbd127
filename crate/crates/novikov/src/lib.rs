//! The graded Novikov ring of a lattice `Z^{r+2}`, degree-2 derivations
//! on it, their Schwarzians and flat sections, the specialization maps to
//! power series, and B-field normalization.

pub mod bfield;
pub mod derivation;
pub mod element;
pub mod error;
pub mod gw;
pub mod lattice;
pub mod laurent;
pub mod pipeline;
pub mod specialize;

pub use bfield::{b_field_normalize, change_of_variables, BField, LSeries, NormalizedBField};
pub use derivation::DerivationData;
pub use element::NovikovElement;
pub use error::NovikovError;
pub use gw::GwData;
pub use lattice::{ClassVector, LatticeSpec, Point};
pub use laurent::LaurentPoly;
pub use pipeline::{embed_pencil_data, theorem_main_pipeline, MainResult};
pub use specialize::{specialize, specialize_b};
