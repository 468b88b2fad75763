//! Named complexes, involutions and maps.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Mono, PMat, Ring};
use crate::bordered::{cfa_cable, cfa_nu, cfd_e, cfd_unknot, BorderedError, TypeA, TypeD};
use crate::complex::grading::GradingEdge;
use crate::complex::{solve_gradings, ComplexError, Convention, GradedComplex, GradedMap, MapKind};
use crate::involutive::{Flavor, InvolutiveError, IotaComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StandardError {
    #[error("unknown standard object `{0}`")]
    UnknownName(String),
    #[error("{name} needs n >= {min}, got {n}")]
    Parameter { name: &'static str, n: u32, min: u32 },
    #[error(transparent)]
    Involutive(#[from] InvolutiveError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{0}")]
    Bordered(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum StandardName {
    CO,
    CE,
    Cn(u32),
    CfkUvE,
    CableSummand(u32),
    CfdUnknot,
    CfdE,
    CfaNu,
    CfaCable(u32),
}

impl fmt::Display for StandardName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardName::CO => write!(f, "C_O"),
            StandardName::CE => write!(f, "C_E"),
            StandardName::Cn(n) => write!(f, "C_n({n})"),
            StandardName::CfkUvE => write!(f, "CFK_UV_E"),
            StandardName::CableSummand(n) => write!(f, "CableSummand({n})"),
            StandardName::CfdUnknot => write!(f, "CFD_unknot"),
            StandardName::CfdE => write!(f, "CFD_E"),
            StandardName::CfaNu => write!(f, "CFA_nu"),
            StandardName::CfaCable(n) => write!(f, "CFA_cable({n})"),
        }
    }
}

impl StandardName {
    pub const ALL_TAGS: [&'static str; 9] =
        ["C_O", "C_E", "C_n(n)", "CFK_UV_E", "CableSummand(n)", "CFD_unknot", "CFD_E", "CFA_nu", "CFA_cable(n)"];

    /// Parses names such as `C_E`, `C_n(3)`, `C_3` or `CableSummand(2)`;
    /// `default_n` fills a missing parameter.
    pub fn parse_with(s: &str, default_n: Option<u32>) -> Result<Self, StandardError> {
        let s = s.trim();
        let s = s.strip_prefix("std:").unwrap_or(s);
        let bad = || StandardError::UnknownName(s.to_string());
        let (head, arg) = match s.split_once('(') {
            Some((h, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(bad)?;
                (h, Some(inner.trim().parse::<u32>().map_err(|_| bad())?))
            }
            None => (s, None),
        };
        let n = arg.or(default_n);
        let need = |name: &'static str, min: u32| -> Result<u32, StandardError> {
            let n = n.ok_or_else(bad)?;
            if n < min {
                return Err(StandardError::Parameter { name, n, min });
            }
            Ok(n)
        };
        Ok(match head {
            "C_O" | "CO" => StandardName::CO,
            "C_E" | "CE" => StandardName::CE,
            "C_n" | "Cn" => StandardName::Cn(need("C_n", 1)?),
            "CFK_UV_E" => StandardName::CfkUvE,
            "CableSummand" => StandardName::CableSummand(need("CableSummand", 1)?),
            "CFD_unknot" => StandardName::CfdUnknot,
            "CFD_E" => StandardName::CfdE,
            "CFA_nu" => StandardName::CfaNu,
            "CFA_cable" => StandardName::CfaCable(need("CFA_cable", 1)?),
            other => match other.strip_prefix("C_").and_then(|k| k.parse::<u32>().ok()) {
                Some(k) if arg.is_none() => {
                    if k < 1 {
                        return Err(StandardError::Parameter { name: "C_n", n: k, min: 1 });
                    }
                    StandardName::Cn(k)
                }
                _ => return Err(bad()),
            },
        })
    }
}

impl FromStr for StandardName {
    type Err = StandardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StandardName::parse_with(s, None)
    }
}

/// What [`make`] returns for a name.
#[derive(Clone, Debug)]
pub enum StandardObject {
    Iota(IotaComplex),
    TypeD(TypeD),
    TypeA(TypeA),
}

impl StandardObject {
    pub fn iota(&self) -> Option<&IotaComplex> {
        match self {
            StandardObject::Iota(x) => Some(x),
            _ => None,
        }
    }
}

fn bordered(e: BorderedError) -> StandardError {
    StandardError::Bordered(e.to_string())
}

pub fn make(name: StandardName) -> Result<StandardObject, StandardError> {
    Ok(match name {
        StandardName::CO => StandardObject::Iota(c_o()),
        StandardName::CE => StandardObject::Iota(c_e()),
        StandardName::Cn(n) => StandardObject::Iota(c_n(n)?),
        StandardName::CfkUvE => StandardObject::Iota(cfk_uv_e()),
        StandardName::CableSummand(n) => StandardObject::Iota(cable_summand(n)?),
        StandardName::CfdUnknot => StandardObject::TypeD(cfd_unknot()),
        StandardName::CfdE => StandardObject::TypeD(cfd_e()),
        StandardName::CfaNu => StandardObject::TypeA(cfa_nu()),
        StandardName::CfaCable(n) => StandardObject::TypeA(cfa_cable(n).map_err(bordered)?),
    })
}

/// The unknot: `F2[U]` in degree zero with the identity involution.
pub fn c_o() -> IotaComplex {
    IotaComplex::trivial(Flavor::Horizontal)
}

/// The figure-eight horizontal complex.
pub fn c_e() -> IotaComplex {
    let c = GradedComplex::builder(Ring::F2U, Convention::Horizontal)
        .generator("a", 0, 0)
        .generator("b", 1, 1)
        .generator("c", -1, -1)
        .generator("d", 0, 0)
        .generator("x", 0, 0)
        .arrow("a", "b", "U")
        .arrow("c", "d", "U")
        .build()
        .expect("figure-eight complex");
    IotaComplex::from_labels(
        c,
        Flavor::Horizontal,
        &[("a", "a"), ("a", "x"), ("b", "c"), ("c", "b"), ("d", "d"), ("x", "x"), ("x", "d")],
    )
    .expect("figure-eight involution")
}

/// `C_E` with `ι(b) = b`, which breaks grading and the `ι²` identity.
pub fn c_e_broken() -> IotaComplex {
    let e = c_e();
    IotaComplex::from_labels(
        GradedComplex::clone(&e.complex),
        Flavor::Horizontal,
        &[("a", "a"), ("a", "x"), ("b", "b"), ("c", "b"), ("d", "d"), ("x", "x"), ("x", "d")],
    )
    .expect("same carrier")
}

fn suffixed(base: &str, n: u32) -> String {
    format!("{base}{n}")
}

/// `C_n`: `∂a = U^n b`, `∂c = U^n d`, with `ι(a) = a + x`, `ι(b) = c`.
pub fn c_n(n: u32) -> Result<IotaComplex, StandardError> {
    if n < 1 {
        return Err(StandardError::Parameter { name: "C_n", n, min: 1 });
    }
    let k = n as i32;
    let [a, b, c, d, x] = ["a", "b", "c", "d", "x"].map(|s| suffixed(s, n));
    let power = format!("U^{n}");
    let cx = GradedComplex::builder(Ring::F2U, Convention::Horizontal)
        .generator(&a, 0, 0)
        .generator(&b, k, 2 * k - 1)
        .generator(&c, -k, -1)
        .generator(&d, 0, 2 * k - 2)
        .generator(&x, 0, 0)
        .arrow(&a, &b, &power)
        .arrow(&c, &d, &power)
        .build()?;
    Ok(IotaComplex::from_labels(cx, Flavor::Horizontal, &[(&a, &a), (&a, &x), (&b, &c), (&c, &b), (&d, &d), (&x, &x)])?)
}

/// The full figure-eight complex `x, h, s, t, z` over `F2[U,V]`.
pub fn cfk_uv_e() -> IotaComplex {
    let c = GradedComplex::builder(Ring::F2UV, Convention::UV)
        .generator("x", 0, 0)
        .generator("h", 0, 0)
        .generator("s", 1, -1)
        .generator("t", -1, 1)
        .generator("z", 0, 0)
        .arrow("h", "s", "U")
        .arrow("h", "t", "V")
        .arrow("s", "z", "V")
        .arrow("t", "z", "U")
        .build()
        .expect("figure-eight full complex");
    let n = c.len();
    IotaComplex::new(c, Flavor::FullUV, PMat::zeros(n, n))
        .and_then(|e| {
            e.full_iota_from_labels(&[
                ("h", "h", "1"),
                ("h", "x", "1"),
                ("x", "x", "1"),
                ("x", "z", "1"),
                ("s", "t", "1"),
                ("t", "s", "1"),
                ("z", "z", "1"),
            ])
        })
        .expect("figure-eight full involution")
}

const CABLE_LABELS: [&str; 7] = ["a", "b", "c", "d", "e", "f", "g"];

/// Differential and involution of the seven-generator cable summand.
fn cable_summand_data(n: u32) -> (Vec<(usize, usize, Mono)>, Vec<(usize, usize, Mono)>) {
    let [a, b, c, d, e, f, g] = [0, 1, 2, 3, 4, 5, 6];
    let diff = vec![
        (b, c, Mono::u(n)),
        (b, d, Mono::new(1, 1)),
        (b, e, Mono::v(n)),
        (c, f, Mono::v(1)),
        (e, g, Mono::u(1)),
        (d, f, Mono::u(n - 1)),
        (d, g, Mono::v(n - 1)),
    ];
    let iota = vec![
        (a, a, Mono::ONE),
        (a, f, Mono::u(n - 1)),
        (b, b, Mono::ONE),
        (b, a, Mono::ONE),
        (c, e, Mono::ONE),
        (e, c, Mono::ONE),
        (f, g, Mono::ONE),
        (g, f, Mono::ONE),
        (d, d, Mono::ONE),
    ];
    (diff, iota)
}

/// Gradings of the cable summand, forced by homogeneity of `∂` and `ι`
/// with `a` at `(0,0)`.
pub fn cable_summand_gradings(n: u32) -> Result<Vec<(i32, i32)>, StandardError> {
    let (diff, iota) = cable_summand_data(n);
    let mut edges: Vec<GradingEdge> =
        diff.iter().map(|&(from, to, mono)| GradingEdge::Differential { from, to, mono }).collect();
    edges.extend(iota.iter().map(|&(from, to, mono)| GradingEdge::Skew { from, to, mono, shift: (0, 0) }));
    let sol = solve_gradings(CABLE_LABELS.len(), Convention::UV, &edges, &[(0, (0, 0))])?;
    if sol.anchored.iter().any(|&a| !a) {
        return Err(StandardError::Bordered("cable summand gradings are not all forced".into()));
    }
    Ok(sol.gradings)
}

/// The cable summand `∂b = U^n c + UV d + V^n e` with its involution.
pub fn cable_summand(n: u32) -> Result<IotaComplex, StandardError> {
    if n < 1 {
        return Err(StandardError::Parameter { name: "CableSummand", n, min: 1 });
    }
    let gradings = cable_summand_gradings(n)?;
    let (diff, iota) = cable_summand_data(n);
    let mut builder = GradedComplex::builder(Ring::F2UV, Convention::UV);
    for (l, g) in CABLE_LABELS.iter().zip(&gradings) {
        builder = builder.generator(l, g.0, g.1);
    }
    let mut c = builder.build()?;
    let mut d = PMat::zeros(7, 7);
    for &(x, y, m) in &diff {
        d.add_mono(x, y, m);
    }
    c = c.with_differential(d)?;
    let mut im = PMat::zeros(7, 7);
    for &(x, y, m) in &iota {
        im.add_mono(x, y, m);
    }
    Ok(IotaComplex::new(c, Flavor::FullUV, PMat::zeros(7, 7))?.with_full_iota(im)?)
}

/// A map with a homotopy certifying `ι f + f ι = ∂H + H∂`.
#[derive(Clone, Debug)]
pub struct MapWithHomotopy {
    pub map: GradedMap,
    pub homotopy: GradedMap,
}

impl MapWithHomotopy {
    pub fn is_chain_map(&self) -> bool {
        self.map.is_chain_map()
    }

    /// `ι_target ∘ f + f ∘ ι_source + ∂H + H∂`.
    pub fn defect(&self, source: &IotaComplex, target: &IotaComplex) -> Result<GradedMap, StandardError> {
        let (si, ti) = match (&source.full_iota, &target.full_iota) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(InvolutiveError::NeedsFullIota.into()),
        };
        let lhs = self.map.then(ti)?.add(&si.then(&self.map)?)?;
        Ok(lhs.add(&self.homotopy.boundary())?)
    }

    pub fn verifies(&self, source: &IotaComplex, target: &IotaComplex) -> bool {
        self.is_chain_map() && self.defect(source, target).is_ok_and(|d| d.is_zero())
    }
}

/// How the map from the figure-eight complex into a cable summand is read.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CableFig8Reading {
    /// Target `CableSummand(n+1)` and `f(z) = V^n g`, the reading under
    /// which `f` is a chain map.
    Consistent,
    /// Target `CableSummand(n)` and `f(z) = V^n d`, entry by entry as
    /// printed.
    Literal,
}

/// The map `f_n: CFK_UV(E) → cable summand` and homotopy `H(z) = H(x) = d`.
pub fn cable_fig8_map(
    n: u32,
    reading: CableFig8Reading,
) -> Result<(IotaComplex, IotaComplex, MapWithHomotopy), StandardError> {
    if n < 1 {
        return Err(StandardError::Parameter { name: "cable_fig8_map", n, min: 1 });
    }
    let source = cfk_uv_e();
    let (target, z_image) = match reading {
        CableFig8Reading::Consistent => (cable_summand(n + 1)?, "g"),
        CableFig8Reading::Literal => (cable_summand(n)?, "d"),
    };
    let un = format!("U^{n}");
    let vn = format!("V^{n}");
    let map = GradedMap::from_labels(
        source.complex.clone(),
        target.complex.clone(),
        (0, 0),
        MapKind::Linear,
        &[("x", "a", "1"), ("h", "b", "1"), ("s", "c", &un), ("s", "d", "V"), ("t", "e", &vn), ("z", z_image, &vn)],
    )?;
    let hs = crate::morphism::homotopy_shift(&target.complex, (0, 0));
    let homotopy = GradedMap::from_labels(
        source.complex.clone(),
        target.complex.clone(),
        hs,
        MapKind::Skew,
        &[("z", "d", "1"), ("x", "d", "1")],
    )?;
    Ok((source, target, MapWithHomotopy { map, homotopy }))
}

/// `f_n: C_n → C_{n+1}`: `a ↦ a'`, `b ↦ U b'`, `c, d ↦ 0`, `x ↦ x'`.
pub fn cn_ladder_map(n: u32) -> Result<(IotaComplex, IotaComplex, GradedMap), StandardError> {
    if n < 2 {
        return Err(StandardError::Parameter { name: "cn_ladder_map", n, min: 2 });
    }
    let src = c_n(n)?;
    let tgt = c_n(n + 1)?;
    let lbl = |s: &str, k: u32| suffixed(s, k);
    let entries =
        [(lbl("a", n), lbl("a", n + 1), "1"), (lbl("b", n), lbl("b", n + 1), "U"), (lbl("x", n), lbl("x", n + 1), "1")];
    let refs: Vec<(&str, &str, &str)> = entries.iter().map(|(a, b, p)| (a.as_str(), b.as_str(), *p)).collect();
    let f = GradedMap::from_labels(src.complex.clone(), tgt.complex.clone(), (0, 0), MapKind::Linear, &refs)?;
    Ok((src, tgt, f))
}

/// Identity-on-labels comparison of two involution tables on the same
/// generator set.
pub fn same_involution(x: &IotaComplex, y: &IotaComplex) -> bool {
    x.iota.matrix == y.iota.matrix
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!("C_E".parse::<StandardName>().unwrap(), StandardName::CE);
        assert_eq!("C_n(3)".parse::<StandardName>().unwrap(), StandardName::Cn(3));
        assert_eq!("C_4".parse::<StandardName>().unwrap(), StandardName::Cn(4));
        assert_eq!("std:CableSummand(2)".parse::<StandardName>().unwrap(), StandardName::CableSummand(2));
        assert_eq!(StandardName::parse_with("C_n", Some(2)).unwrap(), StandardName::Cn(2));
        assert!("C_n".parse::<StandardName>().is_err());
        assert!("C_n(0)".parse::<StandardName>().is_err());
        assert!("nope".parse::<StandardName>().is_err());
    }

    #[test]
    fn cable_gradings_are_forced() {
        for n in 1..5 {
            let k = n as i32;
            let g = cable_summand_gradings(n).unwrap();
            assert_eq!(
                g,
                vec![(0, 0), (0, 0), (2 * k - 1, -1), (1, 1), (-1, 2 * k - 1), (2 * k - 2, 0), (0, 2 * k - 2)]
            );
        }
    }

    #[test]
    fn cable_summand_is_a_complex_with_involution() {
        for n in 1..4 {
            let c = cable_summand(n).unwrap();
            assert!(crate::complex::validate(&c.complex).is_valid());
            let full = c.full_iota.as_ref().unwrap();
            assert!(full.is_chain_map());
            assert!(full.is_homogeneous());
        }
    }
}
