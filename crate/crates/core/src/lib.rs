//! Exact counts of non-overlapping figure placements on toroidal and box grids.
//!
//! Placement counts are polynomials in the grid volume. Summed over a catalog
//! of figures they form a sequence of binomial type, which in turn yields the
//! chromatic polynomial coefficients of toroidal grid graphs.

pub mod acceptance;
pub mod algebra;
pub mod catalogs;
pub mod chromatic;
pub mod counting;
mod dsu;
pub mod error;
pub mod figures;
pub mod limits;
pub mod overlap;
pub mod schema;

pub use error::{Error, Result};
pub use limits::Limits;
