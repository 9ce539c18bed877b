//! Numerical and exact tools for Kapteyn series
//! Σ a_n J_{αn+β}((γn+ε)z) and Σ a_n J_{αn+β}((cn+b)z) J_{...}((fn+g)z).
//!
//! * [`specfun`]: gamma family and Bessel J kernels.
//! * [`exact`]: rational polynomials and radical-rational functions of z.
//! * [`summation`]: direct and accelerated series evaluation.
//! * [`catalog`]: closed-form identities and coefficient families.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod kahan;
pub mod specfun;
pub mod summation;

pub use error::{Error, Result};
pub use exact::{BigRational, RadicalSum, RadicalTerm, UPoly};
pub use specfun::AccuracyBudget;
