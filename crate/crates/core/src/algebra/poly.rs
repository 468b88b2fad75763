//! Sparse polynomials over F2 in one variable `U` or two variables `U, V`.

use std::fmt;
use std::str::FromStr;

use super::AlgebraError;

/// A monomial `U^u V^v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Mono {
    pub u: u32,
    pub v: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { u: 0, v: 0 };

    pub const fn new(u: u32, v: u32) -> Self {
        Mono { u, v }
    }

    pub const fn u(k: u32) -> Self {
        Mono { u: k, v: 0 }
    }

    pub const fn v(k: u32) -> Self {
        Mono { u: 0, v: k }
    }

    pub fn is_one(self) -> bool {
        self.u == 0 && self.v == 0
    }

    pub fn is_mixed(self) -> bool {
        self.u > 0 && self.v > 0
    }

    pub fn mul(self, other: Mono) -> Mono {
        Mono { u: self.u + other.u, v: self.v + other.v }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(self, other: Mono) -> Option<Mono> {
        (self.u >= other.u && self.v >= other.v).then(|| Mono { u: self.u - other.u, v: self.v - other.v })
    }

    /// Exchanges the roles of `U` and `V`.
    pub fn swap(self) -> Mono {
        Mono { u: self.v, v: self.u }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn part(f: &mut fmt::Formatter<'_>, var: char, k: u32) -> fmt::Result {
            match k {
                0 => Ok(()),
                1 => write!(f, "{var}"),
                _ => write!(f, "{var}^{k}"),
            }
        }
        if self.is_one() {
            return write!(f, "1");
        }
        part(f, 'U', self.u)?;
        part(f, 'V', self.v)
    }
}

impl FromStr for Mono {
    type Err = AlgebraError;

    /// Accepts `1`, `U`, `U^k`, `V^k`, `U^aV^b` and `U^a*V^b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::BadMonomial(s.to_string());
        let t = s.trim();
        if t == "1" {
            return Ok(Mono::ONE);
        }
        let mut mono = Mono::ONE;
        let mut rest = t;
        let mut seen_u = false;
        let mut seen_v = false;
        while !rest.is_empty() {
            rest = rest.trim_start_matches('*');
            let mut chars = rest.chars();
            let var = chars.next().ok_or_else(bad)?;
            rest = chars.as_str();
            let mut exp = 1u32;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                exp = r[..end].parse().map_err(|_| bad())?;
                rest = &r[end..];
            }
            match var {
                'U' if !seen_u => {
                    mono.u = exp;
                    seen_u = true;
                }
                'V' if !seen_v => {
                    mono.v = exp;
                    seen_v = true;
                }
                _ => return Err(bad()),
            }
        }
        if !seen_u && !seen_v {
            return Err(bad());
        }
        Ok(mono)
    }
}

/// Polynomial in `U, V` over F2: a sorted list of distinct monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PolyUV {
    terms: Vec<Mono>,
}

impl PolyUV {
    pub fn zero() -> Self {
        PolyUV { terms: Vec::new() }
    }

    pub fn one() -> Self {
        PolyUV::mono(Mono::ONE)
    }

    pub fn mono(m: Mono) -> Self {
        PolyUV { terms: vec![m] }
    }

    /// Builds a polynomial from monomials, cancelling repeats in pairs.
    pub fn from_monos<I: IntoIterator<Item = Mono>>(monos: I) -> Self {
        let mut terms: Vec<Mono> = monos.into_iter().collect();
        terms.sort_unstable();
        let mut out: Vec<Mono> = Vec::with_capacity(terms.len());
        for m in terms {
            if out.last() == Some(&m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        PolyUV { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Mono] {
        &self.terms
    }

    pub fn contains(&self, m: Mono) -> bool {
        self.terms.binary_search(&m).is_ok()
    }

    pub fn single(&self) -> Option<Mono> {
        match self.terms.as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn add_mono(&mut self, m: Mono) {
        match self.terms.binary_search(&m) {
            Ok(i) => {
                self.terms.remove(i);
            }
            Err(i) => self.terms.insert(i, m),
        }
    }

    pub fn add_assign(&mut self, other: &PolyUV) {
        if other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        self.terms = out;
    }

    pub fn add(&self, other: &PolyUV) -> PolyUV {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn mul(&self, other: &PolyUV) -> PolyUV {
        PolyUV::from_monos(self.terms.iter().flat_map(|a| other.terms.iter().map(move |b| a.mul(*b))))
    }

    pub fn mul_mono(&self, m: Mono) -> PolyUV {
        PolyUV { terms: self.terms.iter().map(|t| t.mul(m)).collect() }
    }

    pub fn swap(&self) -> PolyUV {
        PolyUV::from_monos(self.terms.iter().map(|m| m.swap()))
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(Mono) -> bool) -> PolyUV {
        PolyUV { terms: self.terms.iter().copied().filter(|&m| keep(m)).collect() }
    }

    pub fn map_monos(&self, f: impl Fn(Mono) -> Mono) -> PolyUV {
        PolyUV::from_monos(self.terms.iter().map(|&m| f(m)))
    }

    /// Formal partial derivative with respect to `U` (or `V` when `wrt_v`).
    pub fn derivative(&self, wrt_v: bool) -> PolyUV {
        let terms = self.terms.iter().filter_map(|&m| {
            let k = if wrt_v { m.v } else { m.u };
            (k % 2 == 1).then(|| if wrt_v { Mono::new(m.u, m.v - 1) } else { Mono::new(m.u - 1, m.v) })
        });
        PolyUV::from_monos(terms)
    }

    pub fn has_mixed(&self) -> bool {
        self.terms.iter().any(|m| m.is_mixed())
    }
}

impl From<Mono> for PolyUV {
    fn from(m: Mono) -> Self {
        PolyUV::mono(m)
    }
}

impl fmt::Display for PolyUV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyUV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PolyUV {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "0" {
            return Ok(PolyUV::zero());
        }
        let monos = t.split('+').map(str::parse).collect::<Result<Vec<Mono>, _>>()?;
        Ok(PolyUV::from_monos(monos))
    }
}

/// Polynomial in `U` alone, stored as sorted distinct exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyU {
    exps: Vec<u32>,
}

impl PolyU {
    pub fn zero() -> Self {
        PolyU::default()
    }

    pub fn monomial(k: u32) -> Self {
        PolyU { exps: vec![k] }
    }

    pub fn from_exps<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        let p = PolyUV::from_monos(exps.into_iter().map(Mono::u));
        PolyU { exps: p.terms().iter().map(|m| m.u).collect() }
    }

    /// Projects a polynomial with no `V` terms; other inputs are rejected.
    pub fn try_from_uv(p: &PolyUV) -> Result<Self, AlgebraError> {
        if p.terms().iter().any(|m| m.v > 0) {
            return Err(AlgebraError::NotUnivariate(p.to_string()));
        }
        Ok(PolyU { exps: p.terms().iter().map(|m| m.u).collect() })
    }

    pub fn to_uv(&self) -> PolyUV {
        PolyUV::from_monos(self.exps.iter().map(|&k| Mono::u(k)))
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Lowest exponent present.
    pub fn valuation(&self) -> Option<u32> {
        self.exps.first().copied()
    }

    pub fn degree(&self) -> Option<u32> {
        self.exps.last().copied()
    }

    pub fn add(&self, other: &PolyU) -> PolyU {
        PolyU::from_exps(self.exps.iter().chain(&other.exps).copied())
    }

    pub fn mul(&self, other: &PolyU) -> PolyU {
        PolyU::from_exps(self.exps.iter().flat_map(|a| other.exps.iter().map(move |b| a + b)))
    }

    pub fn coeff(&self, k: u32) -> bool {
        self.exps.binary_search(&k).is_ok()
    }
}

impl fmt::Display for PolyU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_uv())
    }
}

impl fmt::Debug for PolyU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of `F2[U,V]/(UV)`; a mixed monomial can never be stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct RElem(PolyUV);

impl RElem {
    pub fn new(p: PolyUV) -> Result<Self, AlgebraError> {
        if p.has_mixed() {
            return Err(AlgebraError::MixedMonomial(p.to_string()));
        }
        Ok(RElem(p))
    }

    /// Image of `p` under the quotient map.
    pub fn reduce(p: &PolyUV) -> Self {
        RElem(p.filter(|m| !m.is_mixed()))
    }

    pub fn as_poly(&self) -> &PolyUV {
        &self.0
    }

    pub fn into_poly(self) -> PolyUV {
        self.0
    }

    pub fn add(&self, other: &RElem) -> RElem {
        RElem(self.0.add(&other.0))
    }

    pub fn mul(&self, other: &RElem) -> RElem {
        RElem::reduce(&self.0.mul(&other.0))
    }
}

impl fmt::Display for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
