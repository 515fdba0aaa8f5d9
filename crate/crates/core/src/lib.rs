//! Exact-arithmetic toolkit for symmetric degeneracy loci.
//!
//! The crate builds the Hessian quadratic form of a homogeneous polynomial,
//! stratifies points by the rank of that form, computes the dimension of the
//! dual variety of a hypersurface, and turns the homological dimension and
//! torsion arguments behind constant-rank bounds into integer linear algebra
//! that can be checked mechanically.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals, ranks
//! come from fraction-free elimination, and torsion comes from Smith normal
//! forms.

pub mod bounds;
pub mod dual;
pub mod error;
pub mod hessian;
pub mod linalg;
pub mod parse;
pub mod point;
pub mod poly;
pub mod quadric;
pub mod rational;
pub mod sample;
mod univariate;

pub use error::{Error, Result};
pub use hessian::{build_hessian, HessianForm};
pub use linalg::{FGAbelianGroup, IntMatrix, PolyMatrix, RatMatrix};
pub use parse::{infer_vars, parse_poly};
pub use point::PointQ;
pub use poly::{Homogeneity, Monomial, MultiPoly};
pub use rational::Rational;
