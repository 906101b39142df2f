use alloc::string::String;

use thiserror::Error;

use crate::poly::ParamId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("parameter `{0}` has no value at the evaluation point")]
    UnboundParameter(ParamId),
    #[error("unknown parameter `{name}` at offset {position}")]
    UnknownParameter { position: usize, name: String },
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("leading coefficient is not a non-zero rational constant")]
    InversionLeadingNonUnit,
    #[error("series known only up to z^{available}, coefficient of z^{needed} requested")]
    TruncationTooShallow { needed: i64, available: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("binding inconsistent with the family: {0}")]
    InconsistentBinding(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("the line D_s is singular for this s (nodal cubic, discriminant 0)")]
    SingularLine,
    #[error("e1 + e2 + e3 must vanish")]
    NotOnCurve,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure constants violate the Lie axioms: {0}")]
    AxiomViolation(String),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension must be positive")]
    EmptyAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("family is not a one-parameter polynomial deformation in e: {0}")]
    NotPolynomialInE(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentralError {
    #[error("bilinear form is not symmetric and invariant: {0}")]
    NonInvariantForm(String),
    #[error("cocycle recursion is contradictory at level {level}: {detail}")]
    RecursionInconsistent { level: i64, detail: String },
    #[error("recursion window too narrow to determine gamma({n}, {m})")]
    WindowTooNarrow { n: i64, m: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}
