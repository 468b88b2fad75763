//! Bordered modules over the torus algebra and the pairing theorem, used to
//! compute satellite complexes.

pub mod algebra;
pub mod cfd;
pub mod io;
pub mod pattern;
pub mod summand;
pub mod tensor;
pub mod typea;
pub mod typed;

use thiserror::Error;

use crate::complex::ComplexError;

pub use algebra::{AlgElem, Basis, Idem, Rho};
pub use cfd::{cfd_from_cfk, compute_tau};
pub use io::{parse_bordered, parse_type_a, parse_type_d, print_type_a, print_type_d, BorderedDocument};
pub use pattern::{cfa_cable, cfa_nu, cfa_pattern, cfd_e, cfd_unknot, Pattern};
pub use summand::{barcode, contains_summand, graded_isomorphic, match_bars, Bar};
pub use tensor::{
    box_label, box_tensor, box_tensor_anchored, box_tensor_morphism, cable_of_figure_eight, hat_of_morphism,
    is_local_type_d, minus_of_morphism, BoxMap, BoxTensor,
};
pub use typea::{check_type_a, check_type_a_against, declared_length, AFamily, AOp, AReport, TypeA};
pub use typed::{check_type_d, find_isomorphism, BGen, DIssue, DReport, TypeD, TypeDMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BorderedError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid type-D structure: {0}")]
    InvalidD(String),
    #[error("pairing does not terminate: {0}")]
    Nontermination(String),
    #[error("tau = {0}; only tau = 0 is supported")]
    Tau(i32),
    #[error("complex is not reduced: unit arrow {0}")]
    NotReduced(String),
    #[error("{what} has homology of rank {rank}, expected 1")]
    Rank { what: &'static str, rank: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
