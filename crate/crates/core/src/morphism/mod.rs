//! Spaces of homogeneous chain maps, homotopies and locality.

pub mod sym;
pub mod system;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{homology_over_f2u, BitVec, Mono, PMat, Ring};
use crate::complex::grading::sub;
use crate::complex::{ComplexError, GradedComplex, GradedMap, Grading, MapKind};

pub use sym::{Lin, SymMap, Var};
pub use system::{LinearSystem, SolveOutcome, Solver};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("{side} has free rank {rank}, locality needs rank 1")]
    FreeRank { side: &'static str, rank: usize },
    #[error("maps have different shapes: {0}")]
    Shape(String),
}

/// Positions `(x, y, m)` of a homogeneous map with the given shift.
pub fn positions(
    source: &GradedComplex,
    target: &GradedComplex,
    shift: Grading,
    kind: MapKind,
) -> Vec<(usize, usize, Mono)> {
    let mut by_grading: BTreeMap<Grading, Vec<usize>> = BTreeMap::new();
    for y in 0..target.len() {
        by_grading.entry(target.grading(y)).or_default().push(y);
    }
    let conv = target.convention();
    let mut out = Vec::new();
    for x in 0..source.len() {
        let landing = conv.map_target(source.grading(x), shift, kind.is_skew());
        for (&gy, ys) in &by_grading {
            if let Some(m) = conv.mono_of_degree(sub(landing, gy)) {
                if target.ring().admits(m) {
                    out.extend(ys.iter().map(|&y| (x, y, m)));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Concrete map from an assignment of position unknowns.
pub fn map_from_assignment(
    source: &Arc<GradedComplex>,
    target: &Arc<GradedComplex>,
    shift: Grading,
    kind: MapKind,
    positions: &[(usize, usize, Mono)],
    bits: &BitVec,
    offset: usize,
) -> GradedMap {
    let mut m = PMat::zeros(source.len(), target.len());
    for (k, &(x, y, mono)) in positions.iter().enumerate() {
        if bits.get(offset + k) {
            m.add_mono(x, y, mono);
        }
    }
    GradedMap::new(source.clone(), target.clone(), shift, kind, m).expect("positions fit the ends")
}

/// `S ∂_target + ∂_source S` for an unknown map `S` (skew maps conjugate the
/// source differential).
pub fn sym_boundary(s: &SymMap, source: &GradedComplex, target: &GradedComplex, kind: MapKind) -> SymMap {
    let ring = target.ring();
    let mut out = s.then_concrete(target.differential(), ring, false);
    out.add_assign(&s.after_concrete(source.differential(), ring, kind.is_skew()));
    out
}

/// All homogeneous maps of one shift and the chain maps among them.
#[derive(Clone, Debug)]
pub struct MapSpace {
    pub source: Arc<GradedComplex>,
    pub target: Arc<GradedComplex>,
    pub shift: Grading,
    pub kind: MapKind,
    pub positions: Vec<(usize, usize, Mono)>,
    pub chain_basis: Vec<GradedMap>,
}

impl MapSpace {
    pub fn dimension(&self) -> usize {
        self.positions.len()
    }

    pub fn chain_dimension(&self) -> usize {
        self.chain_basis.len()
    }
}

fn same_ring(a: &GradedComplex, b: &GradedComplex) -> Result<(), MorphismError> {
    if a.ring() != b.ring() {
        return Err(MorphismError::RingMismatch(a.ring(), b.ring()));
    }
    Ok(())
}

pub fn map_space(
    source: &Arc<GradedComplex>,
    target: &Arc<GradedComplex>,
    shift: Grading,
    kind: MapKind,
    solver: &Solver,
) -> Result<MapSpace, MorphismError> {
    same_ring(source, target)?;
    let pos = positions(source, target, shift, kind);
    let s = SymMap::unknowns(source.len(), target.len(), &pos, 0);
    let mut sys = LinearSystem::new(pos.len());
    sys.push_map(&sym_boundary(&s, source, target, kind), "chain", source, target);
    let check = |bits: &BitVec| map_from_assignment(source, target, shift, kind, &pos, bits, 0).is_chain_map();
    let chain_basis = match solver.solve(&sys, &check) {
        SolveOutcome::Solved { kernel, .. } => {
            kernel.iter().map(|k| map_from_assignment(source, target, shift, kind, &pos, k, 0)).collect()
        }
        SolveOutcome::Inconsistent { .. } => unreachable!("homogeneous system is consistent"),
    };
    Ok(MapSpace { source: source.clone(), target: target.clone(), shift, kind, positions: pos, chain_basis })
}

/// Shift of a homotopy between maps of shift `s`.
pub fn homotopy_shift(c: &GradedComplex, s: Grading) -> Grading {
    sub(s, c.convention().differential_degree())
}

/// Finds `H` with `f + g = ∂H + H∂`, searching homogeneous maps of the
/// homotopy shift.
pub fn are_homotopic(f: &GradedMap, g: &GradedMap, solver: &Solver) -> Result<Option<GradedMap>, MorphismError> {
    if !(f.source == g.source && f.target == g.target && f.kind == g.kind && f.shift == g.shift) {
        return Err(MorphismError::Shape("homotopy between maps of different shapes".into()));
    }
    let diff = f.add(g)?;
    find_null_homotopy(&diff, solver)
}

/// Finds `H` with `∂H + H∂ = f`.
pub fn find_null_homotopy(f: &GradedMap, solver: &Solver) -> Result<Option<GradedMap>, MorphismError> {
    let (src, tgt) = (&f.source, &f.target);
    if f.is_zero() {
        let hs = homotopy_shift(tgt, f.shift);
        return Ok(Some(GradedMap::zero(src.clone(), tgt.clone(), hs, f.kind)));
    }
    let hs = homotopy_shift(tgt, f.shift);
    let all = positions(src, tgt, hs, f.kind);
    let s = SymMap::unknowns(src.len(), tgt.len(), &all, 0);
    let mut sys = LinearSystem::new(all.len());
    let mut eqs = sym_boundary(&s, src, tgt, f.kind);
    eqs.add_pmat(&f.matrix);
    sys.push_map(&eqs, "homotopy", src, tgt);
    let kept = sys.compact();
    let pos: Vec<_> = kept.iter().map(|&v| all[v]).collect();
    let check = |bits: &BitVec| {
        let h = map_from_assignment(src, tgt, hs, f.kind, &pos, bits, 0);
        h.boundary().matrix == f.matrix
    };
    Ok(match solver.solve(&sys, &check) {
        SolveOutcome::Solved { particular, .. } => {
            Some(map_from_assignment(src, tgt, hs, f.kind, &pos, &particular, 0))
        }
        SolveOutcome::Inconsistent { .. } => None,
    })
}

/// Free-part data of a complex with free rank 1: the cycle `ξ` and the
/// coordinate functional `θ`, with the grading of `ξ`.
#[derive(Clone, Debug)]
pub struct FreePart {
    pub xi: BTreeMap<usize, Mono>,
    pub theta: BTreeMap<usize, Mono>,
    pub grading: Grading,
}

pub fn free_part(c: &GradedComplex, side: &'static str) -> Result<FreePart, MorphismError> {
    let h = homology_over_f2u(c)?;
    if h.free_rank != 1 {
        return Err(MorphismError::FreeRank { side, rank: h.free_rank });
    }
    let grading = c.grading(h.free[0]);
    Ok(FreePart { xi: h.representative().expect("rank 1"), theta: h.free_coordinate().expect("rank 1"), grading })
}

/// The monomial `U^k` with `U^k ξ_Y` in the grading of `f(ξ_X)`, if any.
pub fn locality_monomial(target: &GradedComplex, x: &FreePart, y: &FreePart, shift: Grading) -> Option<Mono> {
    target.forced_mono(x.grading, y.grading, shift, false)
}

/// Whether `f` induces an isomorphism on localized homology.
pub fn is_local(f: &GradedMap) -> Result<bool, MorphismError> {
    let x = free_part(&f.source, "source")?;
    let y = free_part(&f.target, "target")?;
    let ring = f.target.ring();
    let xi: BTreeMap<usize, crate::algebra::PolyUV> = x.xi.iter().map(|(&i, &m)| (i, m.into())).collect();
    let image = f.apply(&xi);
    let mut total = crate::algebra::PolyUV::zero();
    for (j, p) in &image {
        if let Some(&t) = y.theta.get(j) {
            total.add_assign(&ring.normalize(&p.mul_mono(t)));
        }
    }
    Ok(!total.is_zero())
}

/// Affine locality condition on an unknown map: the coefficient of the forced
/// monomial in `θ_Y(S(ξ_X))`, as a linear form.
pub fn locality_form(s: &SymMap, x: &FreePart, y: &FreePart, mono: Mono) -> Lin {
    let xi = {
        let mut m = PMat::zeros(1, s.rows());
        for (&i, &mn) in &x.xi {
            m.add_mono(0, i, mn);
        }
        m
    };
    let theta = {
        let mut m = PMat::zeros(s.cols(), 1);
        for (&j, &mn) in &y.theta {
            m.add_mono(j, 0, mn);
        }
        m
    };
    let v = s.after_concrete(&xi, Ring::F2U, false).then_concrete(&theta, Ring::F2U, false);
    let mut out = Lin::default();
    for (_, _, m, l) in v.cells() {
        if m == mono {
            out.add_assign(l);
        }
    }
    out
}
