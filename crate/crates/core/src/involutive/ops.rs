//! Tensor products, connected sums, duals and related maps.

use std::sync::Arc;

use crate::algebra::{F2Matrix, Mono, PMat, Ring};
use crate::complex::ops::{dualize, tensor};
use crate::complex::{GradedComplex, GradedMap, MapKind};
use crate::morphism::{are_homotopic, find_null_homotopy, Solver};

use super::axioms::ensure_psi_lift;
use super::{hat_of, Flavor, InvolutiveError, IotaComplex};

fn require(x: &IotaComplex, flavor: Flavor) -> Result<(), InvolutiveError> {
    if x.flavor == flavor {
        Ok(())
    } else {
        Err(InvolutiveError::FlavorMismatch { expected: flavor, found: x.flavor })
    }
}

fn kron_sum(terms: &[(&GradedMap, &GradedMap)], ring: Ring) -> PMat {
    let (f0, g0) = terms[0];
    let mut m = PMat::zeros(f0.source.len() * g0.source.len(), f0.target.len() * g0.target.len());
    for (f, g) in terms {
        m.add_assign(&f.matrix.kron(&g.matrix, ring));
    }
    m
}

/// `ι_{C⊗D} = ι⊗ι + Φι⊗ιΦ`, with lift `f⊗1 + 1⊗g` of `ιΦι` when both
/// factors have one.
pub fn tensor_iota(x: &IotaComplex, y: &IotaComplex, solver: &Solver) -> Result<IotaComplex, InvolutiveError> {
    require(x, Flavor::Horizontal)?;
    require(y, Flavor::Horizontal)?;
    let t = tensor(&x.complex, &y.complex)?;
    let (px, py) = (x.phi_hat()?, y.phi_hat()?);
    let phi_iota = x.iota.then(&px)?;
    let iota_phi = py.then(&y.iota)?;
    let m = kron_sum(&[(&x.iota, &y.iota), (&phi_iota, &iota_phi)], Ring::F2);
    let out = IotaComplex::new(t, Flavor::Horizontal, m)?;
    match (ensure_psi_lift(x, solver)?, ensure_psi_lift(y, solver)?) {
        (Some(f), Some(g)) => {
            let ring = out.complex.ring();
            let mut lift = f.matrix.kron(&PMat::identity(y.len()), ring);
            lift.add_assign(&PMat::identity(x.len()).kron(&g.matrix, ring));
            out.with_psi_lift(lift)
        }
        _ => Ok(out),
    }
}

/// `ι_{K₁#K₂} = ι⊗ι + Φι⊗Ψι` on the truncation, and on the whole complex
/// when both factors carry a full involution.
pub fn connected_sum_iota(x: &IotaComplex, y: &IotaComplex) -> Result<IotaComplex, InvolutiveError> {
    require(x, Flavor::FullUV)?;
    require(y, Flavor::FullUV)?;
    let t = tensor(&x.complex, &y.complex)?;
    let phi_iota = x.iota.then(&x.phi_hat()?)?;
    let psi_iota = y.iota.then(&y.psi_hat()?)?;
    let m = kron_sum(&[(&x.iota, &y.iota), (&phi_iota, &psi_iota)], Ring::F2);
    let out = IotaComplex::new(t, Flavor::FullUV, m)?;
    match (&x.full_iota, &y.full_iota) {
        (Some(ix), Some(iy)) => {
            let fx = ix.then(&x.phi()?.map)?;
            let fy = iy.then(&super::phi(&y.complex, super::Variable::V)?.map)?;
            let ring = out.complex.ring();
            let full = kron_sum(&[(ix, iy), (&fx, &fy)], ring);
            out.with_full_iota(full)
        }
        _ => Ok(out),
    }
}

/// Dual complex with the transposed involution (and transposed lifts).
pub fn dual_iota(x: &IotaComplex) -> Result<IotaComplex, InvolutiveError> {
    let d = dualize(&x.complex);
    let mut out = IotaComplex::new(d, x.flavor, x.iota.matrix.transpose())?;
    if let Some(full) = &x.full_iota {
        out = out.with_full_iota(full.matrix.transpose().conjugate())?;
    }
    if let Some(f) = &x.psi_lift {
        out = out.with_psi_lift(f.matrix.transpose())?;
    }
    Ok(out)
}

/// `tr: C⊗C* → 1` and `cotr: 1 → C⊗C*`, with the trivial complex they use.
#[derive(Clone, Debug)]
pub struct TraceMaps {
    pub unit: IotaComplex,
    pub trace: GradedMap,
    pub cotrace: GradedMap,
}

impl TraceMaps {
    /// Whether `tr ∘ ι ∼ ι ∘ tr` and `ι ∘ cotr ∼ cotr ∘ ι` on truncations.
    pub fn intertwine(&self, pair: &IotaComplex, solver: &Solver) -> Result<(bool, bool), InvolutiveError> {
        let tr = hat_of(&self.trace, &pair.hat, &self.unit.hat)?;
        let cotr = hat_of(&self.cotrace, &self.unit.hat, &pair.hat)?;
        let a = pair.iota.then(&tr)?;
        let b = tr.then(&self.unit.iota)?;
        let c = cotr.then(&pair.iota)?;
        let d = self.unit.iota.then(&cotr)?;
        Ok((are_homotopic(&a, &b, solver)?.is_some(), are_homotopic(&c, &d, solver)?.is_some()))
    }
}

/// Trace and cotrace for `pair = x ⊗ dual(x)` (generator `(i, j)` at `i·n + j`).
pub fn trace_maps(x: &IotaComplex, pair: &IotaComplex) -> Result<TraceMaps, InvolutiveError> {
    let n = x.len();
    if pair.len() != n * n {
        return Err(InvolutiveError::Shape("trace needs the tensor of a complex with its dual".into()));
    }
    let unit = pair.unit_like()?;
    let mut tr = PMat::zeros(n * n, 1);
    let mut cotr = PMat::zeros(1, n * n);
    for i in 0..n {
        tr.add_mono(i * n + i, 0, Mono::ONE);
        cotr.add_mono(0, i * n + i, Mono::ONE);
    }
    let trace = GradedMap::new(pair.complex.clone(), unit.complex.clone(), (0, 0), MapKind::Linear, tr)?;
    let cotrace = GradedMap::new(unit.complex.clone(), pair.complex.clone(), (0, 0), MapKind::Linear, cotr)?;
    Ok(TraceMaps { unit, trace, cotrace })
}

/// The map `F = id⊗id + f⊗Φ` between the two orderings of the tensor
/// involution, with the homotopies that certify it.
#[derive(Clone, Debug)]
pub struct CommutativityWitness {
    pub map: GradedMap,
    /// `ι⊗ι + Φι⊗ιΦ` on the truncation.
    pub iota1: GradedMap,
    /// `ι⊗ι + ιΦ⊗Φι` on the truncation.
    pub iota2: GradedMap,
    pub is_chain_map: bool,
    /// `F² + id = ∂H + H∂`.
    pub square_homotopy: Option<GradedMap>,
    /// `F̂ι₁ + ι₂F̂` (apply `ι₁` first) is nullhomotopic.
    pub forward_homotopy: Option<GradedMap>,
    /// `ι₁F̂ + F̂ι₂` (apply `F̂` first) is nullhomotopic.
    pub backward_homotopy: Option<GradedMap>,
}

impl CommutativityWitness {
    pub fn holds(&self) -> bool {
        self.is_chain_map
            && self.square_homotopy.is_some()
            && self.forward_homotopy.is_some()
            && self.backward_homotopy.is_some()
    }
}

pub fn commutativity_witness(
    x: &IotaComplex,
    y: &IotaComplex,
    solver: &Solver,
) -> Result<CommutativityWitness, InvolutiveError> {
    require(x, Flavor::Horizontal)?;
    require(y, Flavor::Horizontal)?;
    let f =
        ensure_psi_lift(x, solver)?.ok_or_else(|| InvolutiveError::Shape("first factor has no lift of ιΦι".into()))?;
    let t = Arc::new(tensor(&x.complex, &y.complex)?);
    let ring = t.ring();
    let mut m = PMat::identity(t.len());
    m.add_assign(&f.matrix.kron(&y.phi()?.map.matrix, ring));
    let big_f = GradedMap::new(t.clone(), t.clone(), (0, 0), MapKind::Linear, m)?;
    let is_chain_map = big_f.is_chain_map();
    let square = big_f.then(&big_f)?.add(&GradedMap::identity(t.clone()))?;
    let square_homotopy = find_null_homotopy(&square, solver)?;

    let t_hat = Arc::new(crate::complex::ops::truncate(&t, Flavor::Horizontal.hat_mode())?);
    let (px, py) = (x.phi_hat()?, y.phi_hat()?);
    let i1 = kron_sum(&[(&x.iota, &y.iota), (&x.iota.then(&px)?, &py.then(&y.iota)?)], Ring::F2);
    let i2 = kron_sum(&[(&x.iota, &y.iota), (&px.then(&x.iota)?, &y.iota.then(&py)?)], Ring::F2);
    let iota1 = GradedMap::new(t_hat.clone(), t_hat.clone(), (0, 0), MapKind::Skew, i1)?;
    let iota2 = GradedMap::new(t_hat.clone(), t_hat.clone(), (0, 0), MapKind::Skew, i2)?;
    let fh = hat_of(&big_f, &t_hat, &t_hat)?;
    let forward_homotopy = are_homotopic(&iota1.then(&fh)?, &fh.then(&iota2)?, solver)?;
    let backward_homotopy = are_homotopic(&fh.then(&iota1)?, &iota2.then(&fh)?, solver)?;
    Ok(CommutativityWitness {
        map: big_f,
        iota1,
        iota2,
        is_chain_map,
        square_homotopy,
        forward_homotopy,
        backward_homotopy,
    })
}

/// The same complex with the inverse involution on the truncation.
pub fn reverse(x: &IotaComplex) -> Result<IotaComplex, InvolutiveError> {
    let n = x.hat.len();
    let mut m = F2Matrix::zeros(n, n);
    for (r, c, p) in x.iota.matrix.entries() {
        if p.contains(Mono::ONE) {
            m.set(r, c, true);
        }
    }
    let inv = m.inverse().ok_or(InvolutiveError::NotInvertible)?;
    let mut out = PMat::zeros(n, n);
    for r in 0..n {
        for c in inv.row(r).ones() {
            out.add_mono(r, c, Mono::ONE);
        }
    }
    IotaComplex::new(GradedComplex::clone(&x.complex), x.flavor, out)
}

/// Cancels unit arrows and moves `ι` (and its lifts) across the reduction.
pub fn reduce_iota(x: &IotaComplex) -> Result<IotaComplex, InvolutiveError> {
    let r = crate::complex::reduce(&x.complex)?;
    let reduced = (*r.reduced).clone();
    let hat = Arc::new(crate::complex::ops::truncate(&reduced, x.flavor.hat_mode())?);
    let inc = hat_of(&r.include, &hat, &x.hat)?;
    let proj = hat_of(&r.project, &x.hat, &hat)?;
    let mut y = IotaComplex::new(reduced, x.flavor, inc.then(&x.iota)?.then(&proj)?.matrix)?;
    if let Some(f) = &x.full_iota {
        y = y.with_full_iota(r.include.then(f)?.then(&r.project)?.matrix)?;
    }
    if let Some(p) = &x.psi_lift {
        y = y.with_psi_lift(r.include.then(p)?.then(&r.project)?.matrix)?;
    }
    Ok(y)
}
