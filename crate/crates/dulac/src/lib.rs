//! Exact Poincaré–Dulac normal forms for polynomial vector fields over
//! the Gaussian rationals.
//!
//! Everything here is exact: coefficients live in `Q(i)` with arbitrary
//! precision rationals, so every identity the crate claims — a removed
//! term, a commuting pair, a volume certificate — is an equality of
//! rational numbers, never an approximation.
//!
//! The pipeline, bottom to top:
//!
//! * [`scalar`], [`poly`], [`vector_field`], [`diff_form`] — the exact
//!   calculus: Gaussian-rational scalars, multivariate polynomials,
//!   polynomial vector fields with Lie brackets, and differential forms
//!   with contraction and the Poincaré homotopy.
//! * [`matrix`], [`unipoly`], [`roots`], [`linear`] — exact linear
//!   algebra: characteristic polynomials, the Jordan–Chevalley
//!   decomposition by Newton iteration, eigenvalue extraction over
//!   `Q(i)`, and diagonalization of the semisimple part.
//! * [`lattice`], [`resonance`] — integer linear algebra and the
//!   resonance structure of a spectrum: relations, the weight lattice,
//!   and the induced torus of symmetries.
//! * [`transform`], [`normal_form`] — polynomial coordinate changes,
//!   formal flows, the homological equation, and the degree-by-degree
//!   normalization itself, including the divergence-free (isochore)
//!   variant with its certificates and simultaneous normalization of
//!   commuting families.
//! * [`integrability`] — the checks that make a family of fields and
//!   first integrals integrable, and the contraction construction that
//!   produces a first integral from a divergence-free family.
//! * [`problem`], [`report`] — a small text format for describing
//!   problems and a deterministic JSON report for each mode; the `dulac`
//!   binary is a thin wrapper around these.
//!
//! ```
//! use dulac::{normal_form::normalize, problem::parse_problem};
//!
//! let spec = parse_problem("vars x, y; field x + x^2, -y;").unwrap();
//! let result = normalize(&spec.fields[0], 6, false).unwrap();
//! assert!(result.is_linearized());
//! ```

pub mod diff_form;
pub mod error;
pub mod integrability;
pub mod lattice;
pub mod linear;
pub mod matrix;
pub mod normal_form;
pub mod poly;
pub mod problem;
pub mod report;
pub mod resonance;
pub mod roots;
pub mod scalar;
pub mod transform;
pub mod unipoly;
pub mod vector_field;

pub use error::{Error, Result};
pub use poly::{MultiIndex, Poly};
pub use scalar::Scalar;
pub use vector_field::{lie_bracket, VectorField};
