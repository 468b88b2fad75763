//! Exact arithmetic over F2, F2[U], F2[U,V]/(UV) and F2[U,V].

pub mod diag;
pub mod f2;
pub mod homology;
pub mod pmat;
pub mod poly;
pub mod ring;

use thiserror::Error;

pub use diag::{diagonalize, Diagonalization};
pub use f2::{solve_affine_certified, solve_affine_f2, AffineOutcome, BitVec, F2Matrix};
pub use homology::{homology_over_f2u, FreeHomology};
pub use pmat::PMat;
pub use poly::{Mono, PolyU, PolyUV, RElem};
pub use ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("system has {rows} equations but right-hand side has length {rhs}")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("cannot parse monomial `{0}`")]
    BadMonomial(String),
    #[error("polynomial `{0}` involves V")]
    NotUnivariate(String),
    #[error("`{0}` has a mixed monomial, which vanishes in F2[U,V]/(UV)")]
    MixedMonomial(String),
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("entry ({row},{col}) would need exponents {} and {}", exps.0, exps.1)]
    Inhomogeneous { row: usize, col: usize, exps: (u32, u32) },
    #[error("differential does not square to zero")]
    NotAComplex,
}
