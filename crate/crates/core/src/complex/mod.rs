//! Bigraded free chain complexes over the four coefficient rings.

pub mod grading;
pub mod io;
pub mod map;
pub mod ops;
pub mod reduce;
pub mod validate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Mono, PMat, PolyUV, Ring};

pub use grading::{solve_gradings, Convention, Grading, GradingEdge, GradingSolution};
pub use map::{GradedMap, MapKind};
pub use ops::TruncMode;
pub use reduce::{reduce, Reduction};
pub use validate::{validate, Issue, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown generator `{0}`")]
    UnknownLabel(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("convention mismatch: {0} vs {1}")]
    ConventionMismatch(Convention, Convention),
    #[error("truncation {mode} is not available over {ring}")]
    BadTruncation { mode: TruncMode, ring: Ring },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("map shapes do not match: {0}")]
    Shape(String),
    #[error("invalid complex: {0}")]
    Invalid(String),
    #[error("generator {generator} would need gradings {first:?} and {second:?}")]
    GradingConflict { generator: usize, first: Grading, second: Grading },
    #[error("generator `{0}` has odd gr_U - gr_V, so no integral Alexander grading")]
    OddAlexander(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    pub label: String,
    pub grading: Grading,
}

impl Generator {
    pub fn new(label: impl Into<String>, grading: Grading) -> Self {
        Generator { label: label.into(), grading }
    }
}

/// A finitely generated free bigraded complex. The differential uses the row
/// convention: `d.get(x, y)` is the coefficient of `y` in `∂x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedComplex {
    ring: Ring,
    convention: Convention,
    gens: Vec<Generator>,
    d: PMat,
    index: HashMap<String, usize>,
}

impl GradedComplex {
    pub fn new(ring: Ring, convention: Convention, gens: Vec<Generator>, d: PMat) -> Result<Self, ComplexError> {
        if d.rows() != gens.len() || d.cols() != gens.len() {
            return Err(ComplexError::Shape(format!(
                "differential is {}x{} for {} generators",
                d.rows(),
                d.cols(),
                gens.len()
            )));
        }
        let mut index = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.label.clone(), i).is_some() {
                return Err(ComplexError::DuplicateLabel(g.label.clone()));
            }
        }
        let d = d.map_entries(|p| ring.normalize(p));
        Ok(GradedComplex { ring, convention, gens, d, index })
    }

    pub fn zero(ring: Ring, convention: Convention) -> Self {
        GradedComplex { ring, convention, gens: Vec::new(), d: PMat::zeros(0, 0), index: HashMap::new() }
    }

    pub fn builder(ring: Ring, convention: Convention) -> ComplexBuilder {
        ComplexBuilder { ring, convention, gens: Vec::new(), arrows: Vec::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn label(&self, i: usize) -> &str {
        &self.gens[i].label
    }

    pub fn grading(&self, i: usize) -> Grading {
        self.gens[i].grading
    }

    pub fn index_of(&self, label: &str) -> Result<usize, ComplexError> {
        self.index.get(label).copied().ok_or_else(|| ComplexError::UnknownLabel(label.to_string()))
    }

    pub fn differential(&self) -> &PMat {
        &self.d
    }

    /// `∂` of a single generator as a sparse vector.
    pub fn d_of(&self, i: usize) -> &BTreeMap<usize, PolyUV> {
        self.d.row(i)
    }

    /// Monomial of degree `g(source) + shift - g(target)` in this ring, if any.
    pub fn forced_mono(&self, source: Grading, target: Grading, shift: Grading, skew: bool) -> Option<Mono> {
        self.convention.forced_mono(source, target, shift, skew).filter(|&m| self.ring.admits(m))
    }

    /// Same generators with a new differential.
    pub fn with_differential(&self, d: PMat) -> Result<Self, ComplexError> {
        GradedComplex::new(self.ring, self.convention, self.gens.clone(), d)
    }

    /// Reorders generators so that new index `i` is old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> GradedComplex {
        let gens = perm.iter().map(|&i| self.gens[i].clone()).collect();
        let d = self.d.submatrix(perm, perm);
        GradedComplex::new(self.ring, self.convention, gens, d).expect("permutation keeps labels unique")
    }

    /// Renames every generator through `f`.
    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> Result<GradedComplex, ComplexError> {
        let gens = self.gens.iter().map(|g| Generator::new(f(&g.label), g.grading)).collect();
        GradedComplex::new(self.ring, self.convention, gens, self.d.clone())
    }

    /// Same data reinterpreted over another ring tag (entries normalized).
    pub fn with_ring(&self, ring: Ring) -> GradedComplex {
        GradedComplex::new(ring, self.convention, self.gens.clone(), self.d.clone()).expect("same labels")
    }

    /// Same data with gradings replaced.
    pub fn with_gradings(&self, convention: Convention, gradings: &[Grading]) -> GradedComplex {
        let gens = self.gens.iter().zip(gradings).map(|(g, &gr)| Generator::new(g.label.clone(), gr)).collect();
        GradedComplex::new(self.ring, convention, gens, self.d.clone()).expect("same labels")
    }

    pub fn has_unit_entry(&self) -> bool {
        self.d.entries().any(|(_, _, p)| p.contains(Mono::ONE))
    }
}

impl fmt::Display for GradedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&io::print_complex(self))
    }
}

/// Incremental construction by label.
#[derive(Clone, Debug)]
pub struct ComplexBuilder {
    ring: Ring,
    convention: Convention,
    gens: Vec<Generator>,
    arrows: Vec<(String, String, PolyUV)>,
}

impl ComplexBuilder {
    pub fn generator(mut self, label: &str, a: i32, b: i32) -> Self {
        self.gens.push(Generator::new(label, (a, b)));
        self
    }

    /// Adds `p · to` to `∂from`; `p` is written like `U^2+V`.
    pub fn arrow(mut self, from: &str, to: &str, p: &str) -> Self {
        let poly = p.parse().unwrap_or_else(|e| panic!("bad coefficient `{p}`: {e}"));
        self.arrows.push((from.to_string(), to.to_string(), poly));
        self
    }

    pub fn arrow_poly(mut self, from: &str, to: &str, p: PolyUV) -> Self {
        self.arrows.push((from.to_string(), to.to_string(), p));
        self
    }

    pub fn build(self) -> Result<GradedComplex, ComplexError> {
        let n = self.gens.len();
        let shell = GradedComplex::new(self.ring, self.convention, self.gens, PMat::zeros(n, n))?;
        let mut d = PMat::zeros(n, n);
        for (from, to, p) in &self.arrows {
            d.add_entry(shell.index_of(from)?, shell.index_of(to)?, p);
        }
        shell.with_differential(d)
    }
}
