//! Axiom checks for horizontal and full ι-complexes.

use std::fmt;

use crate::algebra::{homology_over_f2u, F2Matrix, Mono, PMat, Ring};
use crate::complex::ops::truncate;
use crate::complex::{validate, Convention, GradedMap, MapKind, TruncMode};
use crate::morphism::{
    are_homotopic, homotopy_shift, map_from_assignment, positions, sym_boundary, LinearSystem, SolveOutcome, Solver,
    SymMap, Var,
};

use super::{hat_of, Flavor, InvolutiveError, IotaComplex};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Informational only.
    Noted(bool),
}

#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub flavor: Flavor,
    pub checks: Vec<AxiomCheck>,
    /// The lift of `ιΦι` that was verified or found, if any.
    pub psi_lift: Option<GradedMap>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail).collect()
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, holds: bool, detail: impl Into<String>) {
        let status = if holds { CheckStatus::Pass } else { CheckStatus::Fail };
        self.checks.push(AxiomCheck { name, status, detail: detail.into() });
    }

    fn note(&mut self, name: &'static str, holds: bool, detail: impl Into<String>) {
        self.checks.push(AxiomCheck { name, status: CheckStatus::Noted(holds), detail: detail.into() });
    }

    fn push_result(&mut self, name: &'static str, r: Result<(bool, String), InvolutiveError>) {
        match r {
            Ok((holds, detail)) => self.push(name, holds, detail),
            Err(e) => self.push(name, false, format!("error: {e}")),
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ι-complex axioms:", self.flavor)?;
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Noted(true) => "note: holds",
                CheckStatus::Noted(false) => "note: fails",
            };
            writeln!(f, "  [{tag}] {}: {}", c.name, c.detail)?;
        }
        write!(f, "{}", if self.passed() { "all axioms hold" } else { "some axioms fail" })
    }
}

pub const GRADING: &str = "grading convention";
pub const LOCALIZATION: &str = "localized homology has rank one";
pub const SKEW: &str = "ι is skew-graded";
pub const EQUIVALENCE: &str = "ι is a homotopy equivalence of the truncation";
pub const COMMUTE: &str = "ΦιΦι ∼ ιΦιΦ";
pub const SQUARE: &str = "ι² ∼ 1+ΦιΦι";
pub const SQUARE_UV: &str = "ι² ∼ 1+ΦΨ";
pub const LIFT: &str = "ιΦι lifts to a chain map";
pub const FOURTH: &str = "ι⁴ ∼ 1";
pub const FULL_CHAIN: &str = "full involution is a skew chain map";

/// Whether the endomorphism `f` of an `F2` complex has acyclic cone.
fn is_quasi_iso(f: &GradedMap) -> bool {
    let to_f2 = |m: &PMat| {
        let mut out = F2Matrix::zeros(m.rows(), m.cols());
        for (r, c, p) in m.entries() {
            if p.terms().len() % 2 == 1 {
                out.set(r, c, true);
            }
        }
        out
    };
    let (n, k) = (f.source.len(), f.target.len());
    let ds = to_f2(f.source.differential());
    let dt = to_f2(f.target.differential());
    let fm = to_f2(&f.matrix);
    let mut cone = F2Matrix::zeros(n + k, n + k);
    for r in 0..n {
        for c in 0..n {
            cone.set(r, c, ds.get(r, c));
        }
        for c in 0..k {
            cone.set(r, n + c, fm.get(r, c));
        }
    }
    for r in 0..k {
        for c in 0..k {
            cone.set(n + r, n + c, dt.get(r, c));
        }
    }
    2 * cone.rank() == n + k
}

fn homotopy_check(f: &GradedMap, g: &GradedMap, solver: &Solver) -> Result<(bool, String), InvolutiveError> {
    Ok(match are_homotopic(f, g, solver)? {
        Some(h) if h.is_zero() => (true, "equal on the nose".into()),
        Some(h) => (true, format!("homotopy with {} nonzero entries", h.matrix.nnz())),
        None => {
            let diff = f.add(g)?;
            (false, format!("no homotopy; the difference is\n{}", indent(&diff.describe())))
        }
    })
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("      {l}")).collect::<Vec<_>>().join("\n")
}

fn skew_check(x: &IotaComplex) -> (bool, String) {
    if x.iota.kind != MapKind::Skew {
        return (false, "ι is stored as a linear map".into());
    }
    let bad = x.iota.inhomogeneous_entries();
    if bad.is_empty() {
        return (true, "every entry respects the skew grading".into());
    }
    let list: Vec<String> = bad.iter().map(|&(a, b, _)| format!("{} -> {}", x.hat.label(a), x.hat.label(b))).collect();
    (false, format!("inhomogeneous entries: {}", list.join(", ")))
}

fn equivalence_check(x: &IotaComplex) -> (bool, String) {
    if !x.iota.is_chain_map() {
        return (false, "ι does not commute with the truncated differential".into());
    }
    if is_quasi_iso(&x.iota) {
        (true, "chain map with acyclic mapping cone".into())
    } else {
        (false, "mapping cone has homology".into())
    }
}

fn grading_check(x: &IotaComplex, allowed: &[Convention]) -> (bool, String) {
    let report = validate(&x.complex);
    if !report.is_valid() {
        return (false, report.to_string());
    }
    let conv = x.convention();
    if !allowed.contains(&conv) {
        return (false, format!("{conv} convention"));
    }
    let detail = match conv {
        Convention::Horizontal => "U has bigrading (-1,-2) and the differential is homogeneous",
        Convention::Diagonal => "diagonal convention: the variable acts as UV in bigrading (-2,-2)",
        Convention::UV => "U and V have bigradings (-2,0) and (0,-2)",
    };
    (true, detail.into())
}

fn localization_rank(x: &IotaComplex) -> Result<usize, InvolutiveError> {
    let c = &x.complex;
    Ok(match c.ring() {
        Ring::F2U | Ring::F2 => homology_over_f2u(c)?.free_rank,
        Ring::R => homology_over_f2u(&truncate(c, TruncMode::V0)?)?.free_rank,
        Ring::F2UV => {
            // graded: inverting U and V is the U = V = 1 complex tensored up
            let mut d = F2Matrix::zeros(c.len(), c.len());
            for (r, col, p) in c.differential().entries() {
                if p.terms().len() % 2 == 1 {
                    d.set(r, col, true);
                }
            }
            c.len() - 2 * d.rank()
        }
    })
}

/// Returns a chain map on the complex whose truncation is homotopic to
/// `ιΦι`: the stored lift if it qualifies, otherwise one found by solving.
pub fn ensure_psi_lift(x: &IotaComplex, solver: &Solver) -> Result<Option<GradedMap>, InvolutiveError> {
    let target = x.psi_hat()?;
    if let Some(f) = &x.psi_lift {
        if f.is_chain_map() && f.is_homogeneous() && are_homotopic(&x.hat_map(f)?, &target, solver)?.is_some() {
            return Ok(Some(f.clone()));
        }
    }
    let (c, hat) = (&x.complex, &x.hat);
    let shift = x.psi_shift();
    let fpos = positions(c, c, shift, MapKind::Linear);
    let hs = homotopy_shift(hat, shift);
    let hpos = positions(hat, hat, hs, MapKind::Linear);
    let nf = fpos.len();
    let total = nf + hpos.len();
    let fs = SymMap::unknowns(c.len(), c.len(), &fpos, 0);
    let hsym = SymMap::unknowns(hat.len(), hat.len(), &hpos, nf as Var);
    let mut sys = LinearSystem::new(total);
    sys.push_map(&sym_boundary(&fs, c, c, MapKind::Linear), "lift is a chain map", c, c);
    let mut rel = sym_boundary(&hsym, hat, hat, MapKind::Linear);
    rel.add_assign(&fs.filter_monos(Mono::is_one));
    rel.add_pmat(&target.matrix);
    sys.push_map(&rel, "truncated lift homotopic to ιΦι", hat, hat);
    let kept = sys.compact();
    let build = |bits: &crate::algebra::BitVec| {
        let full = LinearSystem::expand(&kept, bits, total);
        let f = map_from_assignment(c, c, shift, MapKind::Linear, &fpos, &full, 0);
        let h = map_from_assignment(hat, hat, hs, MapKind::Linear, &hpos, &full, nf);
        (f, h)
    };
    let check = |bits: &crate::algebra::BitVec| {
        let (f, h) = build(bits);
        let Ok(fh) = hat_of(&f, hat, hat) else { return false };
        f.is_chain_map() && fh.matrix.add(&target.matrix) == h.boundary().matrix
    };
    Ok(match solver.solve(&sys, &check) {
        SolveOutcome::Solved { particular, .. } => Some(build(&particular).0),
        SolveOutcome::Inconsistent { .. } => None,
    })
}

type Checked = Result<(bool, String), InvolutiveError>;

fn horizontal_identities(x: &IotaComplex, solver: &Solver) -> (Checked, Checked, Checked) {
    let run = || -> Result<(GradedMap, GradedMap, GradedMap, GradedMap), InvolutiveError> {
        let i = &x.iota;
        let p = x.phi_hat()?;
        let pipi = i.then(&p)?.then(i)?.then(&p)?;
        let ipip = p.then(i)?.then(&p)?.then(i)?;
        let ii = i.then(i)?;
        Ok((pipi, ipip, ii.clone(), ii.then(&ii)?))
    };
    match run() {
        Ok((pipi, ipip, ii, iiii)) => {
            let id = GradedMap::identity(x.hat.clone());
            let commute = homotopy_check(&pipi, &ipip, solver);
            let square = id.add(&pipi).map_err(Into::into).and_then(|rhs| homotopy_check(&ii, &rhs, solver));
            let fourth = homotopy_check(&iiii, &id, solver);
            (commute, square, fourth)
        }
        Err(e) => (Err(e.clone()), Err(e.clone()), Err(e)),
    }
}

/// Every bullet of the horizontal definition, plus `ι⁴ ∼ 1` as a note.
pub fn check_horizontal_axioms(x: &IotaComplex, solver: &Solver) -> AxiomReport {
    let mut report = AxiomReport { flavor: Flavor::Horizontal, checks: Vec::new(), psi_lift: None };
    if x.flavor != Flavor::Horizontal {
        report.push(GRADING, false, format!("{} ι-complex given", x.flavor));
        return report;
    }
    let (ok, detail) = grading_check(x, &[Convention::Horizontal, Convention::Diagonal]);
    report.push(GRADING, ok, detail);
    if !ok {
        return report;
    }
    report.push_result(LOCALIZATION, localization_rank(x).map(|r| (r == 1, format!("free rank {r}"))));
    let (ok, detail) = skew_check(x);
    report.push(SKEW, ok, detail);
    let (ok, detail) = equivalence_check(x);
    report.push(EQUIVALENCE, ok, detail);
    let (commute, square, fourth) = horizontal_identities(x, solver);
    report.push_result(COMMUTE, commute);
    report.push_result(SQUARE, square);
    match ensure_psi_lift(x, solver) {
        Ok(Some(f)) => {
            let detail = format!("lift with {} nonzero entries", f.matrix.nnz());
            report.psi_lift = Some(f);
            report.push(LIFT, true, detail);
        }
        Ok(None) => report.push(LIFT, false, "no chain map truncates to a map homotopic to ιΦι"),
        Err(e) => report.push(LIFT, false, format!("error: {e}")),
    }
    match fourth {
        Ok((holds, detail)) => report.note(FOURTH, holds, detail),
        Err(e) => report.note(FOURTH, false, format!("error: {e}")),
    }
    report
}

fn full_checks(x: &IotaComplex, solver: &Solver) -> AxiomReport {
    let mut report = AxiomReport { flavor: Flavor::FullUV, checks: Vec::new(), psi_lift: None };
    let (ok, detail) = grading_check(x, &[Convention::UV]);
    report.push(GRADING, ok, detail);
    if !ok {
        return report;
    }
    report.push_result(LOCALIZATION, localization_rank(x).map(|r| (r == 1, format!("rank {r}"))));
    let (ok, detail) = skew_check(x);
    report.push(SKEW, ok, detail);
    let (ok, detail) = equivalence_check(x);
    report.push(EQUIVALENCE, ok, detail);
    let square = (|| -> Checked {
        let i = &x.iota;
        let ii = i.then(i)?;
        let phipsi = x.psi_hat()?.then(&x.phi_hat()?)?;
        let rhs = GradedMap::identity(x.hat.clone()).add(&phipsi)?;
        homotopy_check(&ii, &rhs, solver)
    })();
    report.push_result(SQUARE_UV, square);
    if let Some(full) = &x.full_iota {
        let homogeneous = full.is_homogeneous();
        let chain = full.is_chain_map();
        let detail = match (homogeneous, chain) {
            (true, true) => "homogeneous and commutes with ∂ after conjugation".to_string(),
            (false, _) => "inhomogeneous entries".to_string(),
            (true, false) => format!("ι∂ + ∂ι is\n{}", indent(&full.boundary().describe())),
        };
        report.push(FULL_CHAIN, homogeneous && chain, detail);
    }
    report
}

/// Dispatches on the flavor.
pub fn check_axioms(x: &IotaComplex, solver: &Solver) -> AxiomReport {
    match x.flavor {
        Flavor::Horizontal => check_horizontal_axioms(x, solver),
        Flavor::FullUV => full_checks(x, solver),
    }
}
