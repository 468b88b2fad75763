//! Named bordered modules: the unknot and figure-eight complements, the
//! identity pattern `ν` and the `(2n+1, -1)`-cable pattern.

use std::fmt;

use super::algebra::{Idem, Rho};
use super::typea::{AFamily, AOp, TypeA};
use super::typed::{BGen, TypeD};
use super::BorderedError;

/// `CFD` of the 0-framed unknot complement: `δ t = ρ₁₂ t`.
pub fn cfd_unknot() -> TypeD {
    TypeD::builder().generator("t", Idem::Zero).arrow("t", "t", "rho12").build().expect("unknot complement")
}

/// `CFD` of the 0-framed figure-eight complement, nine generators.
pub fn cfd_e() -> TypeD {
    TypeD::builder()
        .generator("e0", Idem::Zero)
        .generator("f0", Idem::Zero)
        .generator("g0", Idem::Zero)
        .generator("h0", Idem::Zero)
        .generator("e1", Idem::One)
        .generator("f1", Idem::One)
        .generator("g1", Idem::One)
        .generator("h1", Idem::One)
        .generator("w", Idem::Zero)
        .arrow("e0", "e1", "rho3")
        .arrow("e0", "h1", "rho1")
        .arrow("e1", "f0", "rho2")
        .arrow("f0", "f1", "rho1")
        .arrow("g0", "f1", "rho123")
        .arrow("g1", "g0", "rho2")
        .arrow("h0", "g1", "rho3")
        .arrow("h0", "h1", "rho123")
        .arrow("w", "w", "rho12")
        .build()
        .expect("figure-eight complement")
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Pattern {
    Nu,
    Cable(u32),
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Nu => write!(f, "nu"),
            Pattern::Cable(n) => write!(f, "cable({n})"),
        }
    }
}

/// `CFA⁻` of the identity pattern: one generator `s` with
/// `m(s; ρ₃, ρ₂₃^k, ρ₂) = U^{k+1} s`.
pub fn cfa_nu() -> TypeA {
    let gens = vec![BGen { label: "s".into(), idem: Idem::Zero }];
    let fam =
        AFamily { source: 0, prefix: vec![Rho::R3], repeat: Rho::R23, suffix: vec![Rho::R2], base_power: 1, target: 0 };
    TypeA::new(gens, Vec::new(), vec![fam]).expect("identity pattern")
}

/// `CFA⁻` of the `(2n+1, -1)`-cable pattern, generators `z`, `a_i`, `b_i`.
pub fn cfa_cable(n: u32) -> Result<TypeA, BorderedError> {
    if n < 1 {
        return Err(BorderedError::Shape(format!("cable pattern needs n >= 1, got {n}")));
    }
    let top = 2 * n as usize + 1;
    let mut gens = vec![BGen { label: "z".into(), idem: Idem::Zero }];
    gens.extend((1..=top).map(|i| BGen { label: format!("a{i}"), idem: Idem::One }));
    gens.extend((1..=top).map(|i| BGen { label: format!("b{i}"), idem: Idem::One }));
    let z = 0;
    let a = |i: usize| i;
    let b = |i: usize| top + i;
    let mut ops = Vec::new();
    for i in 1..=top {
        ops.push(AOp { source: a(i), seq: vec![], power: i as u32, target: b(i) });
    }
    for i in 1..top {
        ops.push(AOp { source: a(i), seq: vec![Rho::R2, Rho::R1], power: 0, target: a(i + 1) });
        ops.push(AOp { source: b(i), seq: vec![Rho::R2, Rho::R1], power: 1, target: b(i + 1) });
    }
    ops.push(AOp { source: a(top), seq: vec![Rho::R2], power: 0, target: z });
    ops.push(AOp { source: z, seq: vec![Rho::R3], power: 0, target: b(top) });
    TypeA::new(gens, ops, Vec::new())
}

pub fn cfa_pattern(p: Pattern) -> Result<TypeA, BorderedError> {
    match p {
        Pattern::Nu => Ok(cfa_nu()),
        Pattern::Cable(n) => cfa_cable(n),
    }
}
