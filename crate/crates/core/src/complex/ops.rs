//! Truncation, tensor product, dual and direct sum.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Mono, PMat, PolyUV, Ring};

use super::grading::{add, neg};
use super::{ComplexError, Convention, Generator, GradedComplex, GradedMap, MapKind};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TruncMode {
    /// `U = 0`. Over `R` or `F2[U,V]` the result is the vertical complex,
    /// written over `F2[U]` with `V` renamed `U` and gradings `(-A, gr_V)`.
    U0,
    /// `V = 0`. The result is a horizontal complex with gradings `(A, gr_U)`.
    V0,
    /// `U = V = 0`; output ring `F2`.
    UV0,
    /// Quotient by `UV`; output ring `R`.
    ModUV,
}

impl fmt::Display for TruncMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruncMode::U0 => "U=0",
            TruncMode::V0 => "V=0",
            TruncMode::UV0 => "U=V=0",
            TruncMode::ModUV => "mod UV",
        })
    }
}

impl TruncMode {
    fn target(self, ring: Ring) -> Option<Ring> {
        match (self, ring) {
            (TruncMode::U0 | TruncMode::UV0, Ring::F2U) => Some(Ring::F2),
            (TruncMode::U0 | TruncMode::V0, Ring::R | Ring::F2UV) => Some(Ring::F2U),
            (TruncMode::UV0, Ring::R | Ring::F2UV) => Some(Ring::F2),
            (TruncMode::ModUV, Ring::R | Ring::F2UV) => Some(Ring::R),
            _ => None,
        }
    }

    /// Image of a coefficient.
    pub fn apply(self, ring: Ring, p: &PolyUV) -> PolyUV {
        match (self, ring) {
            (TruncMode::U0 | TruncMode::UV0, Ring::F2U) => p.filter(Mono::is_one),
            (TruncMode::U0, _) => p.filter(|m| m.u == 0).map_monos(Mono::swap),
            (TruncMode::V0, _) => p.filter(|m| m.v == 0),
            (TruncMode::UV0, _) => p.filter(Mono::is_one),
            (TruncMode::ModUV, _) => p.filter(|m| !m.is_mixed()),
        }
    }
}

/// Rewrites the ring and gradings of `c` for the given truncation.
pub fn truncate(c: &GradedComplex, mode: TruncMode) -> Result<GradedComplex, ComplexError> {
    let ring = mode.target(c.ring()).ok_or(ComplexError::BadTruncation { mode, ring: c.ring() })?;
    let uv_source = matches!(c.ring(), Ring::R | Ring::F2UV);
    let (conv, gens) = match mode {
        TruncMode::U0 | TruncMode::V0 if uv_source => {
            if c.convention() != Convention::UV {
                return Err(ComplexError::ConventionMismatch(c.convention(), Convention::UV));
            }
            let mut gens = Vec::with_capacity(c.len());
            for g in c.generators() {
                let (gu, gv) = g.grading;
                if (gu - gv) % 2 != 0 {
                    return Err(ComplexError::OddAlexander(g.label.clone()));
                }
                let a = (gu - gv) / 2;
                let gr = if mode == TruncMode::V0 { (a, gu) } else { (-a, gv) };
                gens.push(Generator::new(g.label.clone(), gr));
            }
            (Convention::Horizontal, gens)
        }
        _ => (c.convention(), c.generators().to_vec()),
    };
    let d = c.differential().map_entries(|p| mode.apply(c.ring(), p));
    GradedComplex::new(ring, conv, gens, d)
}

/// Truncates both ends of a map and its entries.
pub fn truncate_map(f: &GradedMap, mode: TruncMode) -> Result<GradedMap, ComplexError> {
    let src = Arc::new(truncate(&f.source, mode)?);
    let tgt = Arc::new(truncate(&f.target, mode)?);
    let ring = f.source.ring();
    let mut shift = f.shift;
    if mode == TruncMode::V0 && matches!(ring, Ring::R | Ring::F2UV) {
        // (gr_U, gr_V) shift to (A, gr_U) shift
        shift = ((shift.0 - shift.1) / 2, shift.0);
    } else if mode == TruncMode::U0 && matches!(ring, Ring::R | Ring::F2UV) {
        shift = (-(shift.0 - shift.1) / 2, shift.1);
    }
    GradedMap::new(src, tgt, shift, f.kind, f.matrix.map_entries(|p| mode.apply(ring, p)))
}

fn top_level_star(label: &str) -> bool {
    let mut depth = 0i32;
    for ch in label.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

fn wrap(label: &str) -> String {
    if top_level_star(label) {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// Label of `x ⊗ y`.
pub fn tensor_label(x: &str, y: &str) -> String {
    format!("{}*{}", wrap(x), wrap(y))
}

fn enclosed(s: &str) -> bool {
    if !(s.starts_with('(') && s.ends_with(')')) {
        return false;
    }
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i != s.len() - 1 {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

/// Label of the dual generator `x*`; dualizing twice gives back `x`.
pub fn dual_label(x: &str) -> String {
    if let Some(base) = x.strip_suffix('^') {
        if enclosed(base) {
            return base[1..base.len() - 1].to_string();
        }
        if !top_level_star(base) {
            return base.to_string();
        }
    }
    if top_level_star(x) {
        format!("({x})^")
    } else {
        format!("{x}^")
    }
}

/// `C ⊗ D` with generator `(i, j)` at index `i * |D| + j`.
pub fn tensor(c: &GradedComplex, d: &GradedComplex) -> Result<GradedComplex, ComplexError> {
    if c.ring() != d.ring() {
        return Err(ComplexError::RingMismatch(c.ring(), d.ring()));
    }
    if c.convention() != d.convention() {
        return Err(ComplexError::ConventionMismatch(c.convention(), d.convention()));
    }
    let mut gens = Vec::with_capacity(c.len() * d.len());
    for x in c.generators() {
        for y in d.generators() {
            gens.push(Generator::new(tensor_label(&x.label, &y.label), add(x.grading, y.grading)));
        }
    }
    let ring = c.ring();
    let mut diff = c.differential().kron(&PMat::identity(d.len()), ring);
    diff.add_assign(&PMat::identity(c.len()).kron(d.differential(), ring));
    GradedComplex::new(ring, c.convention(), gens, diff)
}

/// `f ⊗ g`; both factors must have the same kind.
pub fn tensor_maps(
    f: &GradedMap,
    g: &GradedMap,
    source: Arc<GradedComplex>,
    target: Arc<GradedComplex>,
) -> Result<GradedMap, ComplexError> {
    if f.kind != g.kind {
        return Err(ComplexError::Shape("tensoring a skew map with a linear one".into()));
    }
    let ring = source.ring();
    GradedMap::new(source, target, add(f.shift, g.shift), f.kind, f.matrix.kron(&g.matrix, ring))
}

/// Dual complex: negated gradings and transposed differential.
pub fn dualize(c: &GradedComplex) -> GradedComplex {
    let gens = c.generators().iter().map(|g| Generator::new(dual_label(&g.label), neg(g.grading))).collect();
    GradedComplex::new(c.ring(), c.convention(), gens, c.differential().transpose()).expect("dual labels are unique")
}

/// Transposed map `g^* : D^* → C^*` for `g : C → D` (shift negated after the
/// appropriate conjugation).
pub fn dual_map(
    f: &GradedMap,
    source: Arc<GradedComplex>,
    target: Arc<GradedComplex>,
) -> Result<GradedMap, ComplexError> {
    let conv = f.source.convention();
    let shift = if f.kind.is_skew() { conv.skew(f.shift) } else { f.shift };
    let m = if f.kind.is_skew() { f.matrix.transpose().conjugate() } else { f.matrix.transpose() };
    GradedMap::new(source, target, shift, f.kind, m)
}

/// Direct sum with generators of `c` first.
pub fn direct_sum(c: &GradedComplex, d: &GradedComplex) -> Result<GradedComplex, ComplexError> {
    if c.ring() != d.ring() {
        return Err(ComplexError::RingMismatch(c.ring(), d.ring()));
    }
    if c.convention() != d.convention() {
        return Err(ComplexError::ConventionMismatch(c.convention(), d.convention()));
    }
    let n = c.len();
    let mut gens = c.generators().to_vec();
    gens.extend(d.generators().iter().cloned());
    let mut diff = PMat::zeros(n + d.len(), n + d.len());
    for (x, y, p) in c.differential().entries() {
        diff.set(x, y, p.clone());
    }
    for (x, y, p) in d.differential().entries() {
        diff.set(n + x, n + y, p.clone());
    }
    GradedComplex::new(c.ring(), c.convention(), gens, diff)
}

/// Identity-indexed map `(A⊗B)⊗C → A⊗(B⊗C)` between two regroupings.
pub fn regroup_map(left: Arc<GradedComplex>, right: Arc<GradedComplex>) -> Result<GradedMap, ComplexError> {
    if left.len() != right.len() {
        return Err(ComplexError::Shape("regrouping complexes of different sizes".into()));
    }
    GradedMap::new(left.clone(), right, (0, 0), MapKind::Linear, PMat::identity(left.len()))
}
