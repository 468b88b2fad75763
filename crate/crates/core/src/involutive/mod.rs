//! Involutions on truncated complexes, the maps `Φ`, `Ψ`, and the ι-complex
//! axioms.

pub mod a0;
pub mod axioms;
pub mod io;
pub mod ops;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Mono, PMat, Ring};
use crate::complex::grading::sub;
use crate::complex::ops::truncate;
use crate::complex::{ComplexError, Convention, GradedComplex, GradedMap, Grading, MapKind, TruncMode};
use crate::morphism::MorphismError;

pub use a0::{a0_extract, A0Extraction};
pub use axioms::{check_axioms, check_horizontal_axioms, ensure_psi_lift, AxiomCheck, AxiomReport, CheckStatus};
pub use io::{parse_iota, print_iota};
pub use ops::{
    commutativity_witness, connected_sum_iota, dual_iota, reduce_iota, reverse, tensor_iota, trace_maps,
    CommutativityWitness, TraceMaps,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    /// `F2[U]` complex, involution on the `U = 0` truncation.
    Horizontal,
    /// `F2[U,V]` or `R` complex, involution on the `U = V = 0` truncation.
    FullUV,
}

impl Flavor {
    pub fn hat_mode(self) -> TruncMode {
        match self {
            Flavor::Horizontal => TruncMode::U0,
            Flavor::FullUV => TruncMode::UV0,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Horizontal => "horizontal",
            Flavor::FullUV => "fullUV",
        })
    }
}

impl FromStr for Flavor {
    type Err = InvolutiveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "horizontal" => Ok(Flavor::Horizontal),
            "fulluv" | "uv" => Ok(Flavor::FullUV),
            other => Err(InvolutiveError::Shape(format!("unknown flavor `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Variable {
    U,
    V,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variable::U => "U",
            Variable::V => "V",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvolutiveError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("{variable} is not a variable of {ring}")]
    MissingVariable { variable: Variable, ring: Ring },
    #[error("expected a {expected} ι-complex, got {found}")]
    FlavorMismatch { expected: Flavor, found: Flavor },
    #[error("a {flavor} ι-complex cannot live over {ring} with the {convention} convention")]
    Carrier { flavor: Flavor, ring: Ring, convention: Convention },
    #[error("this operation needs the involution on the whole complex")]
    NeedsFullIota,
    #[error("the involution is not invertible on the truncation")]
    NotInvertible,
    #[error("{0}")]
    Shape(String),
}

/// `∂/∂U` or `∂/∂V` of the differential.
#[derive(Clone, Debug)]
pub struct PhiMap {
    pub map: GradedMap,
    pub variable: Variable,
}

/// Formal derivative of the differential: `U^k` contributes `k U^(k-1)`.
pub fn phi(c: &Arc<GradedComplex>, variable: Variable) -> Result<PhiMap, InvolutiveError> {
    let ring = c.ring();
    let (present, mono) = match variable {
        Variable::U => (ring.has_u(), Mono::u(1)),
        Variable::V => (ring.has_v(), Mono::v(1)),
    };
    if !present {
        return Err(InvolutiveError::MissingVariable { variable, ring });
    }
    let conv = c.convention();
    let shift = sub(conv.differential_degree(), conv.mono_degree(mono));
    let m = c.differential().map_entries(|p| p.derivative(variable == Variable::V));
    let map = GradedMap::new(c.clone(), c.clone(), shift, MapKind::Linear, m)?;
    Ok(PhiMap { map, variable })
}

/// Constant part of `f`, viewed between the given truncations.
pub fn hat_of(
    f: &GradedMap,
    source_hat: &Arc<GradedComplex>,
    target_hat: &Arc<GradedComplex>,
) -> Result<GradedMap, ComplexError> {
    GradedMap::new(
        source_hat.clone(),
        target_hat.clone(),
        f.shift,
        f.kind,
        f.matrix.map_entries(|p| p.filter(Mono::is_one)),
    )
}

/// A complex with an involution on its truncation.
#[derive(Clone, Debug)]
pub struct IotaComplex {
    pub complex: Arc<GradedComplex>,
    pub flavor: Flavor,
    pub hat: Arc<GradedComplex>,
    /// Skew map of degree zero on `hat`.
    pub iota: GradedMap,
    /// Skew chain map on `complex` whose truncation is `iota`.
    pub full_iota: Option<GradedMap>,
    /// Chain map on `complex` whose truncation is homotopic to `ιΦι`.
    pub psi_lift: Option<GradedMap>,
}

fn check_carrier(flavor: Flavor, c: &GradedComplex) -> Result<(), InvolutiveError> {
    let ok = match flavor {
        Flavor::Horizontal => {
            c.ring() == Ring::F2U && matches!(c.convention(), Convention::Horizontal | Convention::Diagonal)
        }
        Flavor::FullUV => matches!(c.ring(), Ring::R | Ring::F2UV) && c.convention() == Convention::UV,
    };
    if ok {
        Ok(())
    } else {
        Err(InvolutiveError::Carrier { flavor, ring: c.ring(), convention: c.convention() })
    }
}

impl IotaComplex {
    /// `iota` is read on the truncation; only constant entries survive.
    pub fn new(complex: GradedComplex, flavor: Flavor, iota: PMat) -> Result<Self, InvolutiveError> {
        check_carrier(flavor, &complex)?;
        let complex = Arc::new(complex);
        let hat = Arc::new(truncate(&complex, flavor.hat_mode())?);
        let iota = GradedMap::new(
            hat.clone(),
            hat.clone(),
            (0, 0),
            MapKind::Skew,
            iota.map_entries(|p| p.filter(Mono::is_one)),
        )?;
        Ok(IotaComplex { complex, flavor, hat, iota, full_iota: None, psi_lift: None })
    }

    /// Involution given as `(from, to)` label pairs on the truncation.
    pub fn from_labels(
        complex: GradedComplex,
        flavor: Flavor,
        entries: &[(&str, &str)],
    ) -> Result<Self, InvolutiveError> {
        let mut m = PMat::zeros(complex.len(), complex.len());
        for &(x, y) in entries {
            m.add_mono(complex.index_of(x)?, complex.index_of(y)?, Mono::ONE);
        }
        IotaComplex::new(complex, flavor, m)
    }

    /// Involution on the whole complex (full flavor only); the truncated
    /// involution is replaced by its constant part.
    pub fn with_full_iota(self, m: PMat) -> Result<Self, InvolutiveError> {
        if self.flavor != Flavor::FullUV {
            return Err(InvolutiveError::FlavorMismatch { expected: Flavor::FullUV, found: self.flavor });
        }
        let full = GradedMap::new(self.complex.clone(), self.complex.clone(), (0, 0), MapKind::Skew, m)?;
        let iota = hat_of(&full, &self.hat, &self.hat)?;
        Ok(IotaComplex { iota, full_iota: Some(full), ..self })
    }

    pub fn full_iota_from_labels(self, entries: &[(&str, &str, &str)]) -> Result<Self, InvolutiveError> {
        let mut m = PMat::zeros(self.complex.len(), self.complex.len());
        for &(x, y, p) in entries {
            let poly: crate::algebra::PolyUV = p.parse().map_err(ComplexError::from)?;
            m.add_entry(self.complex.index_of(x)?, self.complex.index_of(y)?, &poly);
        }
        self.with_full_iota(m)
    }

    pub fn with_psi_lift(self, m: PMat) -> Result<Self, InvolutiveError> {
        let shift = self.psi_shift();
        let f = GradedMap::new(self.complex.clone(), self.complex.clone(), shift, MapKind::Linear, m)?;
        Ok(IotaComplex { psi_lift: Some(f), ..self })
    }

    /// The trivial complex: one generator `1` in degree zero.
    pub fn trivial(flavor: Flavor) -> Self {
        let (ring, conv) = match flavor {
            Flavor::Horizontal => (Ring::F2U, Convention::Horizontal),
            Flavor::FullUV => (Ring::F2UV, Convention::UV),
        };
        IotaComplex::trivial_over(flavor, ring, conv).expect("standard carrier")
    }

    /// The trivial complex over a given carrier.
    pub fn trivial_over(flavor: Flavor, ring: Ring, convention: Convention) -> Result<Self, InvolutiveError> {
        let c = GradedComplex::builder(ring, convention).generator("1", 0, 0).build()?;
        let x = IotaComplex::new(c, flavor, PMat::identity(1))?;
        let x = match flavor {
            Flavor::FullUV => x.with_full_iota(PMat::identity(1))?,
            Flavor::Horizontal => x,
        };
        let zero = GradedMap::zero(x.complex.clone(), x.complex.clone(), x.psi_shift(), MapKind::Linear);
        Ok(IotaComplex { psi_lift: Some(zero), ..x })
    }

    /// The trivial complex over the same ring and convention as `self`.
    pub fn unit_like(&self) -> Result<Self, InvolutiveError> {
        IotaComplex::trivial_over(self.flavor, self.complex.ring(), self.convention())
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn convention(&self) -> Convention {
        self.complex.convention()
    }

    pub fn phi_shift(&self) -> Grading {
        let conv = self.convention();
        sub(conv.differential_degree(), conv.mono_degree(Mono::u(1)))
    }

    /// Degree of `ιΦι`.
    pub fn psi_shift(&self) -> Grading {
        self.convention().skew(self.phi_shift())
    }

    /// Truncates an endomorphism of `complex` to `hat`.
    pub fn hat_map(&self, f: &GradedMap) -> Result<GradedMap, ComplexError> {
        hat_of(f, &self.hat, &self.hat)
    }

    pub fn phi(&self) -> Result<PhiMap, InvolutiveError> {
        phi(&self.complex, Variable::U)
    }

    pub fn phi_hat(&self) -> Result<GradedMap, InvolutiveError> {
        Ok(self.hat_map(&self.phi()?.map)?)
    }

    /// `Ψ` on the truncation: `∂/∂V` for the full flavor, `ιΦι` otherwise.
    pub fn psi_hat(&self) -> Result<GradedMap, InvolutiveError> {
        match self.flavor {
            Flavor::FullUV => Ok(self.hat_map(&phi(&self.complex, Variable::V)?.map)?),
            Flavor::Horizontal => Ok(self.iota.then(&self.phi_hat()?)?.then(&self.iota)?),
        }
    }

    /// The `V = 0` truncation of a full complex, keeping the involution:
    /// both truncations have the same `U = V = 0` quotient.
    pub fn horizontal_truncation(&self) -> Result<IotaComplex, InvolutiveError> {
        if self.flavor != Flavor::FullUV {
            return Err(InvolutiveError::FlavorMismatch { expected: Flavor::FullUV, found: self.flavor });
        }
        let c = truncate(&self.complex, TruncMode::V0)?;
        IotaComplex::new(c, Flavor::Horizontal, self.iota.matrix.clone())
    }

    /// Image of a generator under the truncated involution, as labels.
    pub fn iota_labels(&self, x: &str) -> Result<Vec<String>, InvolutiveError> {
        let i = self.hat.index_of(x)?;
        Ok(self.iota.image(i).keys().map(|&j| self.hat.label(j).to_string()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_eight() -> IotaComplex {
        let c = GradedComplex::builder(Ring::F2U, Convention::Horizontal)
            .generator("a", 0, 0)
            .generator("b", 1, 1)
            .generator("c", -1, -1)
            .generator("d", 0, 0)
            .generator("x", 0, 0)
            .arrow("a", "b", "U")
            .arrow("c", "d", "U")
            .build()
            .unwrap();
        IotaComplex::from_labels(
            c,
            Flavor::Horizontal,
            &[("a", "a"), ("a", "x"), ("b", "c"), ("c", "b"), ("d", "d"), ("x", "x"), ("x", "d")],
        )
        .unwrap()
    }

    #[test]
    fn phi_is_the_derivative() {
        let e = figure_eight();
        let p = e.phi().unwrap();
        assert!(p.map.is_chain_map());
        assert_eq!(p.map.shift, (1, 1));
        assert!(p.map.is_homogeneous());
        assert_eq!(p.map.describe(), "a -> b\nc -> d\n");
        assert!(phi(&e.complex, Variable::V).is_err());
    }

    #[test]
    fn psi_degree_matches_composite() {
        let e = figure_eight();
        let composite = e.psi_hat().unwrap();
        assert_eq!(composite.shift, e.psi_shift());
        assert_eq!(composite.kind, MapKind::Linear);
    }
}
