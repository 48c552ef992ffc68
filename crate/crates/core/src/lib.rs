//! Torsional rigidity of planar regions by three cross-checking routes: Bergman-polynomial
//! upper bounds from area moments, conformal-map evaluation, and Rayleigh-quotient lower bounds.

#![allow(clippy::needless_range_loop)]

pub mod bergman;
pub mod checks;
pub mod conformal;
pub mod error;
pub mod estimate;
pub mod hypergeometric;
pub mod linalg;
pub mod lowerbound;
pub mod moments;
pub mod mpfloat;
pub mod opuc;
pub mod param;
pub mod poly;
#[cfg(test)]
mod properties;
pub mod reference;
pub mod regions;
pub mod runner;
pub mod scalar;

pub use error::{Error, Result};
pub use estimate::{BoundDirection, Method, RigidityEstimate};
pub use moments::MomentTable;
pub use mpfloat::MpFloat;
pub use param::Param;
pub use poly::ComplexPolynomial;
pub use regions::{Point, PolygonRegion, RegionSpec};
pub use scalar::{Cx, Scalar};
