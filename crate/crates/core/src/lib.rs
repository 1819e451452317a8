//! Exact symbolic engine for highest-weight modules over basic Lie
//! superalgebras defined by structure-constant tables.
//!
//! The crate provides, over the Gaussian rationals:
//!
//! - PBW normal ordering in the universal enveloping superalgebra, the star
//!   antiautomorphism induced by a real form, and the projection onto the
//!   Cartan part evaluated at a highest weight;
//! - Verma modules with exact generator actions, the invariant Hermitian
//!   form, per-level Gram matrices with positive-definiteness verdicts and
//!   witnesses, singular-vector detection and finite-depth unitarity
//!   certificates;
//! - centraliser searches, even-part decompositions, and multiplicity bounds
//!   for induced modules over an abelian compact subalgebra.
//!
//! All arithmetic is exact; identical inputs produce identical outputs.
//! With the default `parallel` feature, grid scans and Gram levels are
//! computed with rayon; disabling the feature falls back to sequential code
//! with identical results.

pub mod center;
pub mod enveloping;
pub mod error;
pub mod expr;
pub mod gram;
pub mod ktype;
pub mod linalg;
pub mod par;
pub mod scalar;
pub mod structure;
pub mod unitary;
pub mod verma;

pub use error::{Error, Result};
pub use scalar::{PolyScalar, Scalar};
pub use structure::{SuperAlgebra, Weight};
