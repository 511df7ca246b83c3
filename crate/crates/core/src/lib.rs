//! Enumeration of the extensions of a discrete rank-one valuation to a finite
//! separable extension `K[x]/(f)`, through chains of key polynomials and their
//! higher Newton polygons.
//!
//! The crate is `no_std` (it needs `alloc`). The `parallel` feature explores
//! independent branches of the extension tree on a thread pool; the output is
//! identical either way.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod basefield;
mod error;
pub mod extend;
pub mod maclane;
pub mod newton;

pub use error::Error;
