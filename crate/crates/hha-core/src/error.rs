//! Error type shared by every module. Basis indices in messages are 1-based.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HhaError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree overflow: degrees {left} + {right} exceed the top degree {top}")]
    DegreeOverflow { left: usize, right: usize, top: usize },
    #[error("odd dimension {0}: a Pfaffian needs an even-size skew matrix")]
    OddDimension(usize),
    #[error("dimension must be a multiple of 4, got {0}")]
    Dimension(usize),
    #[error("bracket is not antisymmetric on (e{i}, e{j})")]
    Antisymmetry { i: usize, j: usize },
    #[error("Jacobi identity fails on basis triple (e{i}, e{j}, e{k}): {value}")]
    Jacobi { i: usize, j: usize, k: usize, value: String },
    #[error("invalid hypercomplex structure: {0}")]
    Structure(String),
    #[error("{which} is not integrable: Nijenhuis tensor on (e{i}, e{j}) is {value}")]
    Nijenhuis { which: String, i: usize, j: usize, value: String },
    #[error("invalid metric: {0}")]
    Metric(String),
    #[error("wrong bidegree: expected {expected}, got {got}")]
    Bidegree { expected: String, got: String },
    #[error("form is not q-real")]
    NotQReal,
    #[error("invalid sphere point: {0}")]
    Sphere(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("representation is not admissible: {0}")]
    Representation(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("incompatible scalar fields: {0}")]
    Field(String),
    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, HhaError>;
