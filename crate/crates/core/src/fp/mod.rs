//! Prime fields, binomial coefficients and exact linear algebra.
//!
//! Everything here is small and dense: the matrices that show up in
//! practice have at most a few hundred rows, so there is no sparse
//! representation.

mod binomial;
mod field;
mod int_matrix;
mod matrix;

pub use binomial::{binom_int, binom_mod_p, lucas_binom};
pub use field::{alpha, FpScalar, Prime};
pub use int_matrix::BigIntMatrix;
pub use matrix::{FpMatrix, Rref};
