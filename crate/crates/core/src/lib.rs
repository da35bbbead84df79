//! Exact enumeration of faces and levels of deformed braid arrangements and
//! their type-B analogues, together with intersection posets, Whitney
//! polynomials, truncated exponential generating functions and the
//! level-decomposition bijection.
//!
//! Everything is computed over arbitrary-precision rationals. The crate is
//! `no_std` and only needs `alloc`.
#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arrangement;
pub mod bijection;
mod error;
pub mod exactgeom;
pub mod faces;
pub mod identities;
pub mod poset;
pub mod series;

pub use arrangement::{Arrangement, ArrangementKind, DeformedBraidSpec, Family, Hyperplane, TypeBSpec};
pub use error::Error;
pub use exactgeom::{Flat, LinearConstraint, PolyhedronDescr, Rational};
pub use faces::{Face, FaceCountTable, FaceDigraph, Sign};
pub use poset::{BivariatePolynomial, IntersectionPoset};
pub use series::TruncatedSeries;

pub type Result<T, E = Error> = core::result::Result<T, E>;
