//! Homogeneous module maps between complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Mono, PMat, PolyUV};

use super::grading::{add, Grading};
use super::{ComplexError, GradedComplex};

/// Whether a map is linear or skew (ring-conjugating, `U ↔ V`, with
/// skew-graded degrees).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MapKind {
    Linear,
    Skew,
}

impl MapKind {
    pub fn then(self, other: MapKind) -> MapKind {
        if self == other {
            MapKind::Linear
        } else {
            MapKind::Skew
        }
    }

    pub fn is_skew(self) -> bool {
        self == MapKind::Skew
    }
}

/// A map `source → target` in the row convention: `matrix.get(x, y)` is the
/// coefficient of target generator `y` in the image of source generator `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: Arc<GradedComplex>,
    pub target: Arc<GradedComplex>,
    pub shift: Grading,
    pub kind: MapKind,
    pub matrix: PMat,
}

impl GradedMap {
    pub fn new(
        source: Arc<GradedComplex>,
        target: Arc<GradedComplex>,
        shift: Grading,
        kind: MapKind,
        matrix: PMat,
    ) -> Result<Self, ComplexError> {
        if matrix.rows() != source.len() || matrix.cols() != target.len() {
            return Err(ComplexError::Shape(format!(
                "matrix {}x{} for a map {} -> {} generators",
                matrix.rows(),
                matrix.cols(),
                source.len(),
                target.len()
            )));
        }
        if source.ring() != target.ring() {
            return Err(ComplexError::RingMismatch(source.ring(), target.ring()));
        }
        let ring = target.ring();
        let matrix = matrix.map_entries(|p| ring.normalize(p));
        Ok(GradedMap { source, target, shift, kind, matrix })
    }

    pub fn zero(source: Arc<GradedComplex>, target: Arc<GradedComplex>, shift: Grading, kind: MapKind) -> Self {
        let m = PMat::zeros(source.len(), target.len());
        GradedMap { source, target, shift, kind, matrix: m }
    }

    pub fn identity(c: Arc<GradedComplex>) -> Self {
        let m = PMat::identity(c.len());
        GradedMap { source: c.clone(), target: c, shift: (0, 0), kind: MapKind::Linear, matrix: m }
    }

    /// The differential of `c` as a map of degree `∂`.
    pub fn differential(c: Arc<GradedComplex>) -> Self {
        let m = c.differential().clone();
        let shift = c.convention().differential_degree();
        GradedMap { source: c.clone(), target: c, shift, kind: MapKind::Linear, matrix: m }
    }

    /// Builds a map from labelled entries.
    pub fn from_labels(
        source: Arc<GradedComplex>,
        target: Arc<GradedComplex>,
        shift: Grading,
        kind: MapKind,
        entries: &[(&str, &str, &str)],
    ) -> Result<Self, ComplexError> {
        let mut m = PMat::zeros(source.len(), target.len());
        for &(x, y, p) in entries {
            let poly: PolyUV = p.parse()?;
            m.add_entry(source.index_of(x)?, target.index_of(y)?, &poly);
        }
        GradedMap::new(source, target, shift, kind, m)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn same_shape(&self, other: &GradedMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.kind == other.kind
            && self.shift == other.shift
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap, ComplexError> {
        if !(self.source == other.source && self.target == other.target && self.kind == other.kind) {
            return Err(ComplexError::Shape("adding maps with different source, target or kind".into()));
        }
        let mut out = self.clone();
        out.matrix.add_assign(&other.matrix);
        Ok(out)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &GradedMap) -> Result<GradedMap, ComplexError> {
        if self.target.len() != other.source.len() || self.target.ring() != other.source.ring() {
            return Err(ComplexError::Shape("composing maps whose ends do not match".into()));
        }
        let ring = other.target.ring();
        let left = if other.kind.is_skew() { self.matrix.conjugate() } else { self.matrix.clone() };
        let conv = self.target.convention();
        let shift_in = if other.kind.is_skew() { conv.skew(self.shift) } else { self.shift };
        Ok(GradedMap {
            source: self.source.clone(),
            target: other.target.clone(),
            shift: add(shift_in, other.shift),
            kind: self.kind.then(other.kind),
            matrix: left.mul(&other.matrix, ring),
        })
    }

    /// `∂_target ∘ self + self ∘ ∂_source`, with the appropriate conjugation
    /// when the map is skew.
    pub fn boundary(&self) -> GradedMap {
        let ring = self.target.ring();
        let d_src = if self.kind.is_skew() {
            self.source.differential().conjugate()
        } else {
            self.source.differential().clone()
        };
        let mut m = self.matrix.mul(self.target.differential(), ring);
        m.add_assign(&d_src.mul(&self.matrix, ring));
        let conv = self.target.convention();
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            shift: add(self.shift, conv.differential_degree()),
            kind: self.kind,
            matrix: m,
        }
    }

    pub fn is_chain_map(&self) -> bool {
        self.boundary().is_zero()
    }

    /// Image of one source generator.
    pub fn image(&self, x: usize) -> &BTreeMap<usize, PolyUV> {
        self.matrix.row(x)
    }

    /// Image of a source vector (ring-linear or conjugate-linear).
    pub fn apply(&self, v: &BTreeMap<usize, PolyUV>) -> BTreeMap<usize, PolyUV> {
        if self.kind.is_skew() {
            let conj: BTreeMap<usize, PolyUV> = v.iter().map(|(&i, p)| (i, p.swap())).collect();
            self.matrix.apply(&conj, self.target.ring())
        } else {
            self.matrix.apply(v, self.target.ring())
        }
    }

    /// Entries that break homogeneity, as `(source, target, monomial)`.
    pub fn inhomogeneous_entries(&self) -> Vec<(usize, usize, Mono)> {
        let conv = self.target.convention();
        let mut bad = Vec::new();
        for (x, y, p) in self.matrix.entries() {
            let want =
                conv.forced_mono(self.source.grading(x), self.target.grading(y), self.shift, self.kind.is_skew());
            for &m in p.terms() {
                if Some(m) != want {
                    bad.push((x, y, m));
                }
            }
        }
        bad
    }

    pub fn is_homogeneous(&self) -> bool {
        self.inhomogeneous_entries().is_empty()
    }

    /// Same matrix viewed between other complexes with matching sizes.
    pub fn retarget(&self, source: Arc<GradedComplex>, target: Arc<GradedComplex>) -> Result<GradedMap, ComplexError> {
        GradedMap::new(source, target, self.shift, self.kind, self.matrix.clone())
    }

    /// Applies `f` entrywise and moves to the given ends (used by truncations).
    pub fn map_entries(
        &self,
        source: Arc<GradedComplex>,
        target: Arc<GradedComplex>,
        f: impl Fn(&PolyUV) -> PolyUV,
    ) -> Result<GradedMap, ComplexError> {
        GradedMap::new(source, target, self.shift, self.kind, self.matrix.map_entries(f))
    }

    /// Human-readable listing, one `x -> p*y` per nonzero entry.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        for x in 0..self.source.len() {
            let row = self.matrix.row(x);
            if row.is_empty() {
                continue;
            }
            let terms: Vec<String> = row
                .iter()
                .map(|(&y, p)| {
                    let lbl = self.target.label(y);
                    match p.single() {
                        Some(m) if m.is_one() => lbl.to_string(),
                        Some(m) => format!("{m} {lbl}"),
                        None => format!("({p}) {lbl}"),
                    }
                })
                .collect();
            s.push_str(&format!("{} -> {}\n", self.source.label(x), terms.join(" + ")));
        }
        s
    }
}
