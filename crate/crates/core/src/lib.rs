//! Exact computations on alcoves of affine Weyl groups: Shi coefficient
//! vectors, components of the Shi variety, the group `H^1(W, Z\Phi)`, and
//! three cross-checked tests for whether two alcoves share an orientation.

pub mod cohomology;
pub mod error;
pub mod linalg;
pub mod orientation;
pub mod render;
pub mod rootsys;
pub mod schema;
pub mod shi;
pub mod weyl;

pub use error::{AlcoveError, Result};
pub use rootsys::{CartanType, PositiveRoot, RootSystem};
pub use shi::{AdmittedVector, ShiVector};
pub use weyl::{AffineElement, FiniteElement, GeneratorWord};
