//! Exact computation engine for the four-sided Temperley-Lieb diagram
//! algebras: graded algebras `Gr_k`, the enveloping algebra `V` and its
//! orthogonalized copy `W`, traces, conditional expectations, derivations,
//! meander moments and principal-graph index data.
//!
//! Every linear object has coefficients in [`Scalar`], the field of rational
//! functions in the loop parameter `δ` with integer coefficients, so all
//! identities are checked exactly. Only the spectral data of principal graphs
//! and numeric positivity checks use floating point.
//!
//! The crate is `no_std` (it needs `alloc`); file formats and the command-line
//! front end live in the `tlsym` crate.

#![no_std]

extern crate alloc;

mod dsu;
mod error;
mod memo;

pub mod algebra;
pub mod cob;
pub mod derivations;
pub mod diagram;
pub mod element;
pub mod glue;
pub mod gns;
pub mod linalg;
pub mod meander;
pub mod scalar;
pub mod spectrum;

pub use diagram::{BoxShape, Shading, Side, TLDiagram};
pub use element::{DiagramVector, Flavor, GradedElement};
pub use error::{Error, Result};
pub use scalar::{Poly, Scalar};
