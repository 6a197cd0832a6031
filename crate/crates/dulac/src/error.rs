//! Error type shared by every layer of the crate.

use thiserror::Error;

/// Everything that can go wrong, from polynomial plumbing up to parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("truncation order must be at least {required}, got {got}")]
    InvalidOrder { required: u32, got: u32 },

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("wedge of {count} fields does not fit in dimension {dim}")]
    WedgeTooLarge { count: usize, dim: usize },

    #[error("expected a non-empty family")]
    EmptyFamily,

    #[error("expected a 1-form, found a form of degree {degree}")]
    NotOneForm { degree: usize },

    #[error("1-form is not closed: dα is nonzero on the axis pair ({axis_a}, {axis_b})")]
    NotClosed { axis_a: usize, axis_b: usize },

    #[error("vector field does not vanish at the origin (component {component} has a constant term)")]
    NonVanishingAtOrigin { component: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("spectrum does not lie in Q(i): the factor {factor} of the characteristic polynomial has no root in Q(i)")]
    SpectrumNotInField { factor: String },

    #[error("matrix is not semisimple: eigenvalue {eigenvalue} has too few independent eigenvectors")]
    NotSemisimple { eigenvalue: String },

    #[error("semisimple part is not diagonal in the supplied coordinates")]
    NotDiagonalized,

    #[error("input is not homogeneous")]
    NotHomogeneous,

    #[error("Lie generator of degree {degree} rejected: generators must have degree at least 2")]
    GeneratorDegree { degree: u32 },

    #[error("field is not divergence-free: the divergence has a nonzero term of degree {degree}")]
    NotIsochore { degree: u32 },

    #[error("fields {first} and {second} do not commute: the bracket is nonzero in degree {degree}")]
    NotCommuting { first: usize, second: usize, degree: u32 },

    #[error("family sizes are inconsistent: {fields} fields and {integrals} integrals in dimension {dim}")]
    FamilyCount { fields: usize, integrals: usize, dim: usize },

    #[error("invalid witness: {reason}")]
    InvalidWitness { reason: String },

    #[error("transform is not unipotent: its linear part must be the identity")]
    NotUnipotent,

    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
