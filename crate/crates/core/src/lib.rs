//! Exact computation in the algebra of Steenrod reduced powers through its
//! Milnor dual, and machine certificates for the linear relations among the
//! elements `P^i chi P^(n-i)`.

pub mod dual;
pub mod error;
pub mod fp;
mod memo;
pub mod operations;
pub mod relations;
pub mod report;
pub mod sequences;
pub mod suite;

pub use error::{Error, Result};
