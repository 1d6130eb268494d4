//! Exact symplectic linear algebra over euclidean domains.
//!
//! Matrices in `Sp_{2n}(R)` and `Sp_φ(R)` are factored into explicit words of
//! elementary generators; every word can be re-evaluated to certify the result.

pub mod error;
pub mod lingroup;
pub mod matrices;
pub mod rings;
pub mod sampling;
pub mod symplectic;
pub mod vaserstein;
pub mod words;

pub use error::{Error, Result};
pub use matrices::{IdealSpec, Matrix, SkewForm};
pub use rings::{RingElement, RingSpec, Scalar, UniPoly};
pub use vaserstein::{FormRegistry, ReductionCertificate};
pub use words::{Generator, GeneratorWord, PolynomialWord};
