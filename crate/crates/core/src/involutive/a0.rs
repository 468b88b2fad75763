//! The Alexander-grading-zero part of a full complex, as a complex over
//! `F2[U']` with `U'` acting as `UV`.

use std::sync::Arc;

use crate::algebra::{Mono, PMat, Ring};
use crate::complex::{ComplexError, Convention, Generator, GradedComplex, GradedMap};

use super::{Flavor, InvolutiveError, IotaComplex};

#[derive(Clone, Debug)]
pub struct A0Extraction {
    pub full: Arc<GradedComplex>,
    pub a0: IotaComplex,
    /// Generator `i` of `a0` is `monomials[i] · x_i`.
    pub monomials: Vec<Mono>,
}

fn uv_power(q: Mono) -> Option<u32> {
    (q.u == q.v).then_some(q.u)
}

/// Label of `m · x` in the extracted complex.
fn scaled_label(m: Mono, label: &str) -> String {
    if m.is_one() {
        label.to_string()
    } else {
        format!("{m}{label}")
    }
}

pub fn a0_extract(x: &IotaComplex) -> Result<A0Extraction, InvolutiveError> {
    let c = &x.complex;
    if x.flavor != Flavor::FullUV || c.ring() != Ring::F2UV {
        return Err(InvolutiveError::Carrier { flavor: x.flavor, ring: c.ring(), convention: c.convention() });
    }
    let full_iota = x.full_iota.as_ref().ok_or(InvolutiveError::NeedsFullIota)?;
    let conv = Convention::UV;
    let mut monomials = Vec::with_capacity(c.len());
    let mut gens = Vec::with_capacity(c.len());
    for g in c.generators() {
        let (gu, gv) = g.grading;
        if (gu - gv) % 2 != 0 {
            return Err(ComplexError::OddAlexander(g.label.clone()).into());
        }
        let a = (gu - gv) / 2;
        let m = if a >= 0 { Mono::u(a as u32) } else { Mono::v((-a) as u32) };
        let (du, dv) = conv.mono_degree(m);
        gens.push(Generator::new(scaled_label(m, &g.label), (gu + du, gv + dv)));
        monomials.push(m);
    }
    let quotient = |from: usize, to: usize, t: Mono, conj: bool| -> Result<u32, InvolutiveError> {
        let lead = if conj { monomials[from].swap() } else { monomials[from] };
        lead.mul(t).div(monomials[to]).and_then(uv_power).ok_or_else(|| {
            InvolutiveError::Shape(format!(
                "{t} from {} to {} leaves Alexander grading zero",
                c.label(from),
                c.label(to)
            ))
        })
    };
    let mut d = PMat::zeros(c.len(), c.len());
    for (i, j, p) in c.differential().entries() {
        for &t in p.terms() {
            d.add_mono(i, j, Mono::u(quotient(i, j, t, false)?));
        }
    }
    let mut iota = PMat::zeros(c.len(), c.len());
    for (i, j, p) in full_iota.matrix.entries() {
        for &t in p.terms() {
            if quotient(i, j, t, true)? == 0 {
                iota.add_mono(i, j, Mono::ONE);
            }
        }
    }
    let complex = GradedComplex::new(Ring::F2U, Convention::Diagonal, gens, d)?;
    let a0 = IotaComplex::new(complex, Flavor::Horizontal, iota)?;
    Ok(A0Extraction { full: c.clone(), a0, monomials })
}

impl A0Extraction {
    /// Extends `f: source.a0 → self.a0` along `F2[UV] → F2[U,V]`. The source
    /// must be generated in Alexander grading zero.
    pub fn extend(&self, source: &A0Extraction, f: &GradedMap) -> Result<GradedMap, InvolutiveError> {
        if source.monomials.iter().any(|m| !m.is_one()) {
            return Err(InvolutiveError::Shape("extension needs a source generated in Alexander grading zero".into()));
        }
        let mut m = PMat::zeros(source.full.len(), self.full.len());
        for (x, y, p) in f.matrix.entries() {
            for t in p.terms() {
                m.add_mono(x, y, Mono::new(t.u, t.u).mul(self.monomials[y]));
            }
        }
        Ok(GradedMap::new(source.full.clone(), self.full.clone(), f.shift, f.kind, m)?)
    }
}
