//! Exact arithmetic: rationals and values, prime fields, finite-field towers,
//! dense polynomials and factorization over finite fields.

pub mod factor;
pub mod field;
pub mod poly;
pub mod prime;
pub mod rat;
pub mod tower;

pub use factor::{factor, is_irreducible, DEFAULT_SEED};
pub use field::Field;
pub use poly::Poly;
pub use prime::PrimeField;
pub use rat::{Rat, Value};
pub use tower::{FfElem, FfPoly, FiniteField};
