//! Exact computations on first-order generalized Reed-Muller codes
//! `RM_q(1, m)`: Jacobi polynomials, design checks on codeword shells, dual
//! transforms, and a scan of dual-shell difference coefficients.

pub mod conjecture;
pub mod designs;
pub mod error;
pub mod field;
pub mod grm;
pub mod jacobi;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use grm::{classify, GrmCode, Point, PointSet, Subcase, TClass};
pub use poly::{JacobiPolynomial, Monomial, WeightEnumerator};
