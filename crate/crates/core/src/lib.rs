//! Exact dispersion polynomials for discrete Schrödinger operators on
//! `Z^d`-periodic graphs, their Newton polytopes, and certificates for
//! (ir)reducibility after a change of period lattice.
//!
//! The crate is organised bottom-up:
//!
//! * [`param`] and [`laurent`]: exact Laurent polynomials in `z_1..z_d, λ`
//!   whose coefficients are polynomials over `Q` in named parameters.
//! * [`matrix`]: square matrices of Laurent polynomials and their exact
//!   determinant.
//! * [`polytope`]: exact integral polytopes (hulls, faces, pyramids,
//!   homothety, strong chains).
//! * [`graph`]: periodic graphs, Floquet matrices, `Q`-expansions and the
//!   built-in graph families.
//! * [`criteria`]: the irreducibility calculus with replayable certificates.

pub mod criteria;
pub mod graph;
pub mod lattice;
pub mod laurent;
mod lp;
pub mod matrix;
pub mod numeric;
pub mod par;
pub mod param;
pub mod polytope;

pub use laurent::{ExponentVector, LaurentPoly};
pub use matrix::LaurentMatrix;
pub use param::{ParamPoly, Rational};
pub use polytope::{Face, IntegralPolytope};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} z-variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix of size {size} exceeds the determinant cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("evaluation at z_{0} = 0")]
    ZeroVariable(usize),
    #[error("empty point set")]
    EmptyInput,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
