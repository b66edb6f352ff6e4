//! Tree models of pairs of plane-curve germs and exact verification of where
//! the polar roots of their Jacobian leave the tree.

pub mod baranalysis;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod factorrep;
pub mod jacoracle;
pub mod npsolve;
pub mod puiseux;
pub mod session;
pub mod treemodel;

pub use error::{Error, Result};
