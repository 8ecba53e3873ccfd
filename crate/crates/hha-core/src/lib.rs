//! Exact-arithmetic exterior calculus for invariant structures on
//! hypercomplex Lie algebras, with classification of special
//! hyperhermitian metrics.

// Matrix code indexes several arrays with the same loop variables.
#![allow(clippy::needless_range_loop)]

/// Library version, recorded in report provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod audit;
pub mod catalog;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod exterior;
pub mod hermitian;
pub mod hypercomplex;
pub mod liealg;
pub mod linalg;
pub mod par;
pub mod scalar;

pub use error::{HhaError, Result};
pub use exterior::{Form, GeneratorMap, SkewMatrix};
pub use hermitian::{CanonicalForms, CurvatureData, HyperhermitianMetric, Positivity};
pub use hypercomplex::{HypercomplexAlgebra, HypercomplexStructure, SpherePoint};
pub use liealg::{AlgebraProfile, Differential, LieAlgebra};
pub use scalar::{ComplexScalar, FieldKind, Scalar, Sign};
