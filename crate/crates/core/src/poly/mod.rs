//! Exact sparse multivariate polynomials over Q and Q(sqrt5).

mod coefficient;
mod compiled;
mod parse;
mod polynomial;

pub use coefficient::{format_rational, Coefficient, SQRT5};
pub use compiled::{CompiledPoly, PolyFunction};
pub use parse::{parse_in, parse_indexed, parse_with};
pub use polynomial::{Monomial, Polynomial};


/// Largest total degree any operation may produce.
pub const DEGREE_CAP: u32 = 64;
