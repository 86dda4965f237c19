//! The dual algebra `F_p[xi_1, xi_2, ...]`.
//!
//! Grading: `|xi_j| = (p^j - 1)/(p - 1)`, so `xi_1` sits in degree 1 and pairs
//! with `P^1`. The coproduct is Milnor's
//! `Delta xi_k = sum_{i+j=k} xi_i^{p^j} (x) xi_j`.

mod antipode;
mod diagonal;
mod poly;
mod seq;

pub use antipode::{antipode, antipode_monomial, antipode_xi};
pub use diagonal::diagonal_left_xi1;
pub use poly::DualPoly;
pub use seq::{enumerate_monomials, generator_degree, max_generator, parse_monomial, ExponentSeq};

#[cfg(test)]
pub(crate) mod oracle;
