//! Exact truncated power series over the rationals, the Schwarzian
//! derivative and its solvers, modular q-expansions for the cubic pencil,
//! and the quintic mirror-map pipeline.

pub mod error;
pub mod json;
pub mod lefschetz;
pub mod modular;
pub mod ring;
pub mod schwarzian;
pub mod series;

pub use error::SeriesError;
pub use ring::{int, parse_rational, ratio, Coeff, Rational};
pub use series::TruncatedSeries;

/// Rational power series, the common case.
pub type Series = TruncatedSeries<Rational>;
