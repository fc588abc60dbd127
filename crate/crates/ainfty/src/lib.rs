//! Finite-dimensional A∞ algebras over q-truncated series: the A∞
//! relations, the Hochschild complex, the Kaledin class, exact coboundary
//! solving, exponentials of cochains, transport of connections, gauge
//! trivialization and the reduced-complex contracting homotopy.

pub mod basis;
pub mod cochain;
pub mod error;
pub mod gauge;
pub mod json;
pub mod morphism;
pub mod reduced;
pub mod solve;
pub mod structure;

pub use basis::GradedBasis;
pub use cochain::{Cochain, Tuple};
pub use error::{AinftyError, Result};
pub use gauge::{connection_residual, gauge_trivialize, GaugeResult};
pub use json::{cochain_to_json, AlgebraFile};
pub use morphism::{exp_cocycle, AInfinityMorphism};
pub use reduced::{in_filtration, reduced_homotopy};
pub use solve::{is_coboundary, Coboundary, CoboundaryReport};
pub use structure::{AInfinityStructure, ResidualReport};

/// Cochains with rational q-series entries.
pub type HochschildCochain = Cochain<schwarz_core::Rational>;
