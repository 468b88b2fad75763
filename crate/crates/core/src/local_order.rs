//! Almost local maps, the order they define, and the `𝔄` classifier.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{homology_over_f2u, BitVec, Mono, PMat, PolyUV, Ring};
use crate::complex::{ComplexError, GradedComplex, GradedMap, MapKind};
use crate::involutive::{
    check_horizontal_axioms, dual_iota, hat_of, tensor_iota, Flavor, InvolutiveError, IotaComplex,
};
use crate::morphism::{
    find_null_homotopy, free_part, homotopy_shift, is_local, locality_form, locality_monomial, map_from_assignment,
    positions, sym_boundary, Lin, LinearSystem, MorphismError, SolveOutcome, Solver, SymMap, Var,
};
use crate::oracle::is_local_at_one;
use crate::standard::{c_e, c_o};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalOrderError {
    #[error(transparent)]
    Involutive(#[from] InvolutiveError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{side} is not a horizontal almost ι-complex:\n{report}")]
    Axioms { side: &'static str, report: String },
    #[error("{0} and {1} complexes cannot be compared")]
    Carrier(String, String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
}

/// A vector in a complex: generator index to coefficient.
pub type Element = BTreeMap<usize, PolyUV>;

/// An almost local map and the homotopy `H` with
/// `f̂ι_Y + ι_X f̂ = ∂H + H∂` on truncations.
#[derive(Clone, Debug)]
pub struct AlmostLocalMap {
    pub map: GradedMap,
    pub homotopy: GradedMap,
}

/// Outcome of a search for an almost local map.
#[derive(Clone, Debug)]
pub enum Search {
    Found(AlmostLocalMap),
    /// Labels of equations summing to `0 = 1`.
    Absent {
        certificate: Vec<String>,
    },
}

impl Search {
    pub fn found(&self) -> Option<&AlmostLocalMap> {
        match self {
            Search::Found(m) => Some(m),
            Search::Absent { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

fn require_axioms(x: &IotaComplex, side: &'static str, solver: &Solver) -> Result<(), LocalOrderError> {
    let r = check_horizontal_axioms(x, solver);
    if r.passed() {
        Ok(())
    } else {
        Err(LocalOrderError::Axioms { side, report: r.to_string() })
    }
}

fn same_carrier(x: &IotaComplex, y: &IotaComplex) -> Result<(), LocalOrderError> {
    let ok = x.flavor == Flavor::Horizontal
        && y.flavor == Flavor::Horizontal
        && x.complex.ring() == y.complex.ring()
        && x.convention() == y.convention();
    if ok {
        Ok(())
    } else {
        let name = |c: &IotaComplex| format!("{} {} ({})", c.flavor, c.complex.ring(), c.convention());
        Err(LocalOrderError::Carrier(name(x), name(y)))
    }
}

/// Searches for an almost local map `X → Y` after checking both inputs.
pub fn find_almost_local_map(x: &IotaComplex, y: &IotaComplex, solver: &Solver) -> Result<Search, LocalOrderError> {
    same_carrier(x, y)?;
    require_axioms(x, "source", solver)?;
    require_axioms(y, "target", solver)?;
    search_local_map(x, y, solver)
}

/// The search itself, without the axiom check: one affine system in the
/// entries of `f` and `H`.
pub fn search_local_map(x: &IotaComplex, y: &IotaComplex, solver: &Solver) -> Result<Search, LocalOrderError> {
    same_carrier(x, y)?;
    let (cx, cy) = (&x.complex, &y.complex);
    let (hx, hy) = (&x.hat, &y.hat);
    let fpos = positions(cx, cy, (0, 0), MapKind::Linear);
    let hs = homotopy_shift(hy, (0, 0));
    let hpos = positions(hx, hy, hs, MapKind::Skew);
    let nf = fpos.len();
    let total = nf + hpos.len();
    let fs = SymMap::unknowns(cx.len(), cy.len(), &fpos, 0);
    let hsym = SymMap::unknowns(hx.len(), hy.len(), &hpos, nf as Var);

    let mut sys = LinearSystem::new(total);
    sys.push_map(&sym_boundary(&fs, cx, cy, MapKind::Linear), "chain map", cx, cy);
    let fhat = fs.filter_monos(Mono::is_one);
    let mut rel = fhat.then_concrete(&y.iota.matrix, Ring::F2, true);
    rel.add_assign(&fhat.after_concrete(&x.iota.matrix, Ring::F2, false));
    rel.add_assign(&sym_boundary(&hsym, hx, hy, MapKind::Skew));
    sys.push_map(&rel, "ι-commutation", hx, hy);
    let (fx, fy) = (free_part(cx, "source")?, free_part(cy, "target")?);
    match locality_monomial(cy, &fx, &fy, (0, 0)) {
        Some(mono) => {
            let mut lin = locality_form(&fs, &fx, &fy, mono);
            lin.add_assign(&Lin::constant(true));
            sys.push(lin, "locality: induced map on free homology is nonzero");
        }
        None => sys.push(Lin::constant(true), "locality: free generators sit in incompatible gradings"),
    }

    let kept = sys.compact();
    let build = |bits: &BitVec| {
        let all = LinearSystem::expand(&kept, bits, total);
        let f = map_from_assignment(cx, cy, (0, 0), MapKind::Linear, &fpos, &all, 0);
        let h = map_from_assignment(hx, hy, hs, MapKind::Skew, &hpos, &all, nf);
        (f, h)
    };
    let check = |bits: &BitVec| {
        let (f, h) = build(bits);
        f.is_chain_map()
            && is_local_at_one(&f) == Some(true)
            && commutation_defect(&f, x, y).is_ok_and(|d| d == h.boundary().matrix)
    };
    Ok(match solver.solve(&sys, &check) {
        SolveOutcome::Solved { particular, .. } => {
            let (map, homotopy) = build(&particular);
            Search::Found(AlmostLocalMap { map, homotopy })
        }
        SolveOutcome::Inconsistent { certificate } => Search::Absent { certificate },
    })
}

/// `f̂ι_Y + ι_X f̂` on truncations.
fn commutation_defect(f: &GradedMap, x: &IotaComplex, y: &IotaComplex) -> Result<PMat, ComplexError> {
    let fh = hat_of(f, &x.hat, &y.hat)?;
    Ok(fh.then(&y.iota)?.add(&x.iota.then(&fh)?)?.matrix)
}

/// Result of checking a given map.
#[derive(Clone, Debug)]
pub enum Verification {
    Verified(AlmostLocalMap),
    NotChainMap,
    Inhomogeneous,
    NotLocal,
    NoHomotopy,
}

impl Verification {
    pub fn verified(&self) -> Option<&AlmostLocalMap> {
        match self {
            Verification::Verified(m) => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verification::Verified(_) => "almost local",
            Verification::NotChainMap => "not a chain map",
            Verification::Inhomogeneous => "not homogeneous of degree zero",
            Verification::NotLocal => "not local",
            Verification::NoHomotopy => "does not commute with ι up to homotopy",
        })
    }
}

/// Checks that `f: X → Y` is almost local and finds the homotopy.
pub fn verify_almost_local(
    f: &GradedMap,
    x: &IotaComplex,
    y: &IotaComplex,
    solver: &Solver,
) -> Result<Verification, LocalOrderError> {
    same_carrier(x, y)?;
    if f.source != x.complex || f.target != y.complex {
        return Err(ComplexError::Shape("map ends differ from the given complexes".into()).into());
    }
    if f.shift != (0, 0) || f.kind != MapKind::Linear || !f.is_homogeneous() {
        return Ok(Verification::Inhomogeneous);
    }
    if !f.is_chain_map() {
        return Ok(Verification::NotChainMap);
    }
    if !is_local(f)? {
        return Ok(Verification::NotLocal);
    }
    let fh = hat_of(f, &x.hat, &y.hat)?;
    let defect = fh.then(&y.iota)?.add(&x.iota.then(&fh)?)?;
    Ok(match find_null_homotopy(&defect, solver)? {
        Some(homotopy) => Verification::Verified(AlmostLocalMap { map: f.clone(), homotopy }),
        None => Verification::NoHomotopy,
    })
}

/// Composite of two almost local maps (apply `first`, then `second`).
pub fn compose(first: &AlmostLocalMap, second: &AlmostLocalMap) -> Result<GradedMap, LocalOrderError> {
    Ok(first.map.then(&second.map)?)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    Equivalent,
    /// `X < Y`: a map `X → Y` and none back.
    Less,
    /// `X > Y`.
    Greater,
    Incomparable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "equivalent",
            Verdict::Less => "less",
            Verdict::Greater => "greater",
            Verdict::Incomparable => "incomparable",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonResult {
    pub verdict: Verdict,
    /// Search for `X → Y`.
    pub forward: Search,
    /// Search for `Y → X`.
    pub backward: Search,
}

pub fn compare(x: &IotaComplex, y: &IotaComplex, solver: &Solver) -> Result<ComparisonResult, LocalOrderError> {
    same_carrier(x, y)?;
    require_axioms(x, "first", solver)?;
    require_axioms(y, "second", solver)?;
    let forward = search_local_map(x, y, solver)?;
    let backward = search_local_map(y, x, solver)?;
    let verdict = match (forward.is_found(), backward.is_found()) {
        (true, true) => Verdict::Equivalent,
        (true, false) => Verdict::Less,
        (false, true) => Verdict::Greater,
        (false, false) => Verdict::Incomparable,
    };
    Ok(ComparisonResult { verdict, forward, backward })
}

/// Value of `𝔄` on a complex, or what can be said when it is not torsion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AClass {
    Zero,
    One,
    /// Not equivalent to either; verdicts against `C_O` and `C_E`.
    Evidence {
        vs_o: Verdict,
        vs_e: Verdict,
    },
}

impl AClass {
    pub fn value(self) -> Option<u8> {
        match self {
            AClass::Zero => Some(0),
            AClass::One => Some(1),
            AClass::Evidence { .. } => None,
        }
    }

    /// Comparable to both `C_O` and `C_E`, which rules out finite order.
    pub fn certifies_infinite_order(self) -> bool {
        matches!(self, AClass::Evidence { vs_o, vs_e } if vs_o != Verdict::Incomparable && vs_e != Verdict::Incomparable)
    }
}

impl fmt::Display for AClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AClass::Zero => f.write_str("0"),
            AClass::One => f.write_str("1"),
            AClass::Evidence { vs_o, vs_e } => {
                write!(f, "nontorsion evidence: {vs_o} than C_O, {vs_e} than C_E")?;
                if self.certifies_infinite_order() {
                    f.write_str(" (infinite order)")?;
                }
                Ok(())
            }
        }
    }
}

fn standard_pair(x: &IotaComplex) -> Result<(IotaComplex, IotaComplex), LocalOrderError> {
    let (o, e) = (c_o(), c_e());
    same_carrier(x, &o)?;
    Ok((o, e))
}

pub fn classify_a(x: &IotaComplex, solver: &Solver) -> Result<AClass, LocalOrderError> {
    let (o, e) = standard_pair(x)?;
    let vs_o = compare(x, &o, solver)?.verdict;
    if vs_o == Verdict::Equivalent {
        return Ok(AClass::Zero);
    }
    let vs_e = compare(x, &e, solver)?.verdict;
    if vs_e == Verdict::Equivalent {
        return Ok(AClass::One);
    }
    Ok(AClass::Evidence { vs_o, vs_e })
}

/// Which alternative of the trichotomy holds for a pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Trichotomy {
    pub verdict: Verdict,
    /// Verdict of `X ⊗ dual(Y)` against `C_E`, computed for every pair.
    pub difference_vs_e: Verdict,
}

impl Trichotomy {
    /// Exactly one of `X ≡ Y`, `X < Y`, `X > Y`, `X ⊗ Y* ≡ C_E`.
    pub fn exactly_one(self) -> bool {
        let incomparable = self.verdict == Verdict::Incomparable;
        incomparable == (self.difference_vs_e == Verdict::Equivalent)
    }
}

pub fn trichotomy(x: &IotaComplex, y: &IotaComplex, solver: &Solver) -> Result<Trichotomy, LocalOrderError> {
    let verdict = compare(x, y, solver)?.verdict;
    let diff = tensor_iota(x, &dual_iota(y)?, solver)?;
    let difference_vs_e = compare(&diff, &c_e(), solver)?.verdict;
    Ok(Trichotomy { verdict, difference_vs_e })
}

fn apply_d(c: &Arc<GradedComplex>, v: &Element) -> Element {
    GradedMap::differential(c.clone()).apply(v)
}

fn hat_part(v: &Element) -> BitVec {
    let n = v.keys().next_back().map_or(0, |&k| k + 1);
    let mut out = BitVec::zeros(n);
    for (&i, p) in v {
        if p.contains(Mono::ONE) {
            out.set(i, true);
        }
    }
    out
}

fn hat_vector(v: &Element, n: usize) -> BitVec {
    let mut out = BitVec::zeros(n);
    for i in hat_part(v).ones() {
        out.set(i, true);
    }
    out
}

fn divide_by_u(v: &Element, what: &str) -> Result<Element, LocalOrderError> {
    let mut out = Element::new();
    for (&i, p) in v {
        let mut q = PolyUV::zero();
        for &m in p.terms() {
            let d = m
                .div(Mono::u(1))
                .ok_or_else(|| LocalOrderError::Hypothesis(format!("{what} is not divisible by U")))?;
            q.add_mono(d);
        }
        if !q.is_zero() {
            out.insert(i, q);
        }
    }
    Ok(out)
}

fn iota_of(x: &IotaComplex, v: &BitVec) -> BitVec {
    let mut out = BitVec::zeros(x.hat.len());
    for i in v.ones() {
        for (&j, p) in x.iota.image(i) {
            if p.contains(Mono::ONE) {
                out.flip(j);
            }
        }
    }
    out
}

fn lift(v: &BitVec) -> Element {
    v.ones().map(|i| (i, PolyUV::one())).collect()
}

/// Builds an element from `(label, coefficient)` pairs.
pub fn element(c: &GradedComplex, entries: &[(&str, &str)]) -> Result<Element, ComplexError> {
    let mut out = Element::new();
    for &(label, p) in entries {
        let poly: PolyUV = p.parse()?;
        let slot = out.entry(c.index_of(label)?).or_insert_with(PolyUV::zero);
        slot.add_assign(&poly);
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// The map `C_E → X` sending `a, b, c, d, x` to `a′, b′, c′, d′, x′`, where
/// `∂a′ = Ub′`, `c′` lifts `ι(b′)` and `∂c′ = Ud′`.
pub fn figure_eight_witness_map(
    x: &IotaComplex,
    a_prime: &Element,
    x_prime: &Element,
    solver: &Solver,
) -> Result<AlmostLocalMap, LocalOrderError> {
    let e = c_e();
    same_carrier(&e, x)?;
    let c = &x.complex;
    let n = c.len();
    if c.has_unit_entry() {
        return Err(LocalOrderError::Hypothesis("the differential is not reduced".into()));
    }
    if !apply_d(c, x_prime).is_empty() {
        return Err(LocalOrderError::Hypothesis("x′ is not a cycle".into()));
    }
    let unit = x.unit_like()?;
    let mut m = PMat::zeros(1, n);
    for (&i, p) in x_prime {
        m.add_entry(0, i, p);
    }
    let gen = GradedMap::new(unit.complex.clone(), c.clone(), (0, 0), MapKind::Linear, m)?;
    if !gen.is_homogeneous() || !is_local(&gen)? {
        return Err(LocalOrderError::Hypothesis("x′ does not generate the localized homology".into()));
    }
    let a_hat = hat_vector(a_prime, n);
    let mut omega = iota_of(x, &a_hat);
    omega.xor_assign(&a_hat);
    if omega != hat_vector(x_prime, n) {
        return Err(LocalOrderError::Hypothesis("a′ + ι(a′) differs from x′ on the truncation".into()));
    }
    let b_prime = divide_by_u(&apply_d(c, a_prime), "∂a′")?;
    let c_prime = lift(&iota_of(x, &hat_vector(&b_prime, n)));
    let d_prime = divide_by_u(&apply_d(c, &c_prime), "∂c′")?;

    let mut f = PMat::zeros(e.len(), n);
    for (label, v) in [("a", a_prime), ("b", &b_prime), ("c", &c_prime), ("d", &d_prime), ("x", x_prime)] {
        let row = e.complex.index_of(label)?;
        for (&j, p) in v {
            f.add_entry(row, j, p);
        }
    }
    let f = GradedMap::new(e.complex.clone(), c.clone(), (0, 0), MapKind::Linear, f)?;
    match verify_almost_local(&f, &e, x, solver)? {
        Verification::Verified(m) => Ok(m),
        other => Err(LocalOrderError::Hypothesis(format!("the constructed map is {other}"))),
    }
}

/// What the quotient construction gives.
#[derive(Clone, Debug)]
pub enum Quotient {
    /// `x ∉ Z + W`: the quotient map onto the free summand.
    Map(AlmostLocalMap),
    /// `x ∈ Z + W`, with data `(a′, x′)` for the figure-eight map.
    InSpan { certificate: Vec<String>, a_prime: Element, x_prime: Element },
}

/// Builds `Z + W` in a diagonal basis `∂y_i = U^{n_i} z_i` and, when the free
/// generator avoids it, the quotient map onto `F2[U]`.
pub fn quotient_map_to_co(x: &IotaComplex, solver: &Solver) -> Result<Quotient, LocalOrderError> {
    let o = x.unit_like()?;
    same_carrier(x, &o)?;
    let c = &x.complex;
    let n = c.len();
    let h = homology_over_f2u(c)?;
    if h.free_rank != 1 {
        return Err(MorphismError::FreeRank { side: "complex", rank: h.free_rank }.into());
    }
    let dg = &h.diagonal;
    let free = h.free[0];
    let gr = c.grading(free);
    let bar = |i: usize| {
        let mut v = BitVec::zeros(n);
        for (&j, &k) in dg.new_vector(i) {
            if k == 0 {
                v.set(j, true);
            }
        }
        v
    };
    let xbar = bar(free);
    let zs: Vec<usize> = dg.pairs.iter().map(|p| p.1).collect();
    let omega_rows: Vec<BitVec> = (0..n)
        .map(|j| {
            let mut v = BitVec::unit(n, j);
            v.xor_assign(&iota_of(x, &BitVec::unit(n, j)));
            v
        })
        .collect();

    // functional φ supported in the grading of x
    let support: Vec<usize> = (0..n).filter(|&j| c.grading(j) == gr).collect();
    let form = |v: &BitVec| Lin {
        vars: support.iter().enumerate().filter(|&(_, &j)| v.get(j)).map(|(k, _)| k as Var).collect(),
        constant: false,
    };
    let mut sys = LinearSystem::new(support.len());
    let mut one = form(&xbar);
    one.constant = true;
    sys.push(one, format!("φ(x) = 1 for the free generator at {}", c.label(free)));
    for &z in &zs {
        sys.push(form(&bar(z)), format!("φ vanishes on Z (torsion target at {})", c.label(z)));
    }
    for (j, w) in omega_rows.iter().enumerate() {
        sys.push(form(w), format!("φ vanishes on W: ω({})", c.label(j)));
    }
    let quotient = |phi: &BitVec| -> Result<GradedMap, ComplexError> {
        let values: Vec<bool> = (0..n)
            .map(|i| {
                let b = bar(i);
                support.iter().enumerate().filter(|&(k, &j)| phi.get(k) && b.get(j)).count() % 2 == 1
            })
            .collect();
        let mut m = PMat::zeros(n, 1);
        for (i, &val) in values.iter().enumerate() {
            if val {
                for (&j, &k) in dg.coordinate(i) {
                    m.add_mono(j, 0, Mono::u(k));
                }
            }
        }
        GradedMap::new(c.clone(), o.complex.clone(), (0, 0), MapKind::Linear, m)
    };
    let check = |bits: &BitVec| {
        let Ok(q) = quotient(bits) else { return false };
        let Ok(qh) = hat_of(&q, &x.hat, &o.hat) else { return false };
        let Ok(iq) = x.iota.then(&qh) else { return false };
        q.is_homogeneous() && q.is_chain_map() && iq.matrix == qh.matrix && is_local_at_one(&q) == Some(true)
    };
    match solver.solve(&sys, &check) {
        SolveOutcome::Solved { particular, .. } => {
            let q = quotient(&particular)?;
            match verify_almost_local(&q, x, &o, solver)? {
                Verification::Verified(m) => Ok(Quotient::Map(m)),
                other => Err(LocalOrderError::Hypothesis(format!("quotient map is {other}"))),
            }
        }
        SolveOutcome::Inconsistent { certificate } => {
            let (a_prime, x_prime) = span_witness(x, &h, &zs, &omega_rows, &support, solver)?;
            Ok(Quotient::InSpan { certificate, a_prime, x_prime })
        }
    }
}

/// Solves `x̄ = Σ α_i z̄_i + ω(b)` with `b` and the `z_i` in the grading of
/// `x`, returning `a′ = b` and `x′ = x + Σ α_i z_i`.
fn span_witness(
    x: &IotaComplex,
    h: &crate::algebra::FreeHomology,
    zs: &[usize],
    omega_rows: &[BitVec],
    support: &[usize],
    solver: &Solver,
) -> Result<(Element, Element), LocalOrderError> {
    let c = &x.complex;
    let n = c.len();
    let dg = &h.diagonal;
    let free = h.free[0];
    let gr = c.grading(free);
    let zs: Vec<usize> = zs.iter().copied().filter(|&z| c.grading(z) == gr).collect();
    let full =
        |i: usize| -> Element { dg.new_vector(i).iter().map(|(&j, &k)| (j, PolyUV::mono(Mono::u(k)))).collect() };
    let bar = |i: usize| hat_vector(&full(i), n);
    let nv = zs.len() + support.len();
    let column = |v: usize| if v < zs.len() { bar(zs[v]) } else { omega_rows[support[v - zs.len()]].clone() };
    let xbar = bar(free);
    let mut sys = LinearSystem::new(nv);
    for j in 0..n {
        let lin =
            Lin { vars: (0..nv).filter(|&v| column(v).get(j)).map(|v| v as Var).collect(), constant: xbar.get(j) };
        sys.push(lin, format!("coordinate {}", c.label(j)));
    }
    let combo = |bits: &BitVec| {
        let mut v = BitVec::zeros(n);
        for k in bits.ones() {
            v.xor_assign(&column(k));
        }
        v
    };
    let check = |bits: &BitVec| combo(bits) == xbar;
    let SolveOutcome::Solved { particular, .. } = solver.solve(&sys, &check) else {
        return Err(LocalOrderError::Hypothesis("x lies in Z + W only through other gradings".into()));
    };
    let mut x_prime = full(free);
    let mut a_prime = Element::new();
    for v in particular.ones() {
        if v < zs.len() {
            for (j, p) in full(zs[v]) {
                let slot = x_prime.entry(j).or_insert_with(PolyUV::zero);
                slot.add_assign(&p);
            }
        } else {
            let j = support[v - zs.len()];
            a_prime.insert(j, PolyUV::one());
        }
    }
    x_prime.retain(|_, p| !p.is_zero());
    Ok((a_prime, x_prime))
}
