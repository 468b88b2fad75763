use std::fmt;
use std::str::FromStr;

use super::poly::{Mono, PolyUV};
use super::AlgebraError;

/// Coefficient ring of a complex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Ring {
    F2,
    F2U,
    /// `F2[U,V]/(UV)`.
    R,
    F2UV,
}

impl Ring {
    pub fn has_u(self) -> bool {
        !matches!(self, Ring::F2)
    }

    pub fn has_v(self) -> bool {
        matches!(self, Ring::R | Ring::F2UV)
    }

    /// Whether `m` is a nonzero monomial of this ring.
    pub fn admits(self, m: Mono) -> bool {
        match self {
            Ring::F2 => m.is_one(),
            Ring::F2U => m.v == 0,
            Ring::R => !m.is_mixed(),
            Ring::F2UV => true,
        }
    }

    /// Drops the monomials that vanish in this ring.
    pub fn normalize(self, p: &PolyUV) -> PolyUV {
        if p.terms().iter().all(|&m| self.admits(m)) {
            p.clone()
        } else {
            p.filter(|m| self.admits(m))
        }
    }

    pub fn mul(self, a: &PolyUV, b: &PolyUV) -> PolyUV {
        self.normalize(&a.mul(b))
    }

    pub fn name(self) -> &'static str {
        match self {
            Ring::F2 => "F2",
            Ring::F2U => "F2U",
            Ring::R => "R",
            Ring::F2UV => "F2UV",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ring {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "F2" => Ok(Ring::F2),
            "F2U" => Ok(Ring::F2U),
            "R" => Ok(Ring::R),
            "F2UV" => Ok(Ring::F2UV),
            other => Err(AlgebraError::UnknownRing(other.to_string())),
        }
    }
}
