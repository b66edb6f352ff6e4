//! Exact arithmetic: the cyclotomic field, univariate and bivariate polynomials.

pub mod bipoly;
pub mod cyclo;
mod modroots;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use cyclo::{CycloField, CycloRational, Field, FieldExt};
pub use unipoly::UniPoly;
