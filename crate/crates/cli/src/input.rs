//! Loading inputs from files or `std:<name>` pseudo-paths.

use std::fs;

use thiserror::Error;

use kfc_core::bordered::{parse_bordered, BorderedDocument, BorderedError, TypeA, TypeD};
use kfc_core::complex::io::parse_document;
use kfc_core::complex::{ComplexError, GradedComplex};
use kfc_core::involutive::{parse_iota, InvolutiveError, IotaComplex};
use kfc_core::standard::{make, StandardError, StandardName, StandardObject};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
    #[error(transparent)]
    Standard(#[from] StandardError),
}

/// Anything a command can read.
#[derive(Clone, Debug)]
pub enum Input {
    Complex(GradedComplex),
    Iota(IotaComplex),
    TypeD(TypeD),
    TypeA(TypeA),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Complex(_) => "complex",
            Input::Iota(_) => "iota-complex",
            Input::TypeD(_) => "type-D",
            Input::TypeA(_) => "type-A",
        }
    }

    /// The underlying chain complex, if there is one.
    pub fn complex(&self) -> Option<&GradedComplex> {
        match self {
            Input::Complex(c) => Some(c),
            Input::Iota(x) => Some(&x.complex),
            _ => None,
        }
    }
}

fn is_bordered(text: &str) -> bool {
    text.lines().any(|l| {
        let w = l.split('#').next().unwrap_or("").split_whitespace().next();
        matches!(w, Some("idem" | "darrow" | "aop"))
    })
}

fn parse_err(path: &str) -> impl Fn(String) -> InputError + '_ {
    move |msg| InputError::Parse { path: path.to_string(), msg }
}

pub fn parse_text(path: &str, text: &str) -> Result<Input, InputError> {
    let bad = parse_err(path);
    if is_bordered(text) {
        return Ok(match parse_bordered(text).map_err(|e: BorderedError| bad(e.to_string()))? {
            BorderedDocument::D(d) => Input::TypeD(d),
            BorderedDocument::A(a) => Input::TypeA(a),
        });
    }
    let doc = parse_document(text).map_err(|e: ComplexError| bad(e.to_string()))?;
    if doc.flavor.is_none() && doc.iota.is_empty() && doc.full_iota.is_empty() {
        return Ok(Input::Complex(doc.complex));
    }
    Ok(Input::Iota(parse_iota(text).map_err(|e: InvolutiveError| bad(e.to_string()))?))
}

pub fn load(path: &str, default_n: Option<u32>) -> Result<Input, InputError> {
    if let Some(name) = path.strip_prefix("std:") {
        let name = StandardName::parse_with(name, default_n)?;
        return Ok(match make(name)? {
            StandardObject::Iota(x) => Input::Iota(x),
            StandardObject::TypeD(d) => Input::TypeD(d),
            StandardObject::TypeA(a) => Input::TypeA(a),
        });
    }
    let text = fs::read_to_string(path).map_err(|source| InputError::Io { path: path.to_string(), source })?;
    parse_text(path, &text)
}
