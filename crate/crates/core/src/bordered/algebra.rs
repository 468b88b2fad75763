//! The torus algebra `A(T²)` over `F2`.

use std::fmt;
use std::str::FromStr;

use super::BorderedError;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Idem {
    Zero,
    One,
}

impl Idem {
    pub fn index(self) -> u8 {
        match self {
            Idem::Zero => 0,
            Idem::One => 1,
        }
    }
}

impl fmt::Display for Idem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl FromStr for Idem {
    type Err = BorderedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" | "i0" => Ok(Idem::Zero),
            "1" | "i1" => Ok(Idem::One),
            other => Err(BorderedError::Parse { line: 0, msg: format!("bad idempotent `{other}`") }),
        }
    }
}

/// A Reeb element `ρ_I`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Rho {
    R1,
    R2,
    R3,
    R12,
    R23,
    R123,
}

impl Rho {
    pub const ALL: [Rho; 6] = [Rho::R1, Rho::R2, Rho::R3, Rho::R12, Rho::R23, Rho::R123];

    /// Left idempotent: `ρ = start · ρ · end`.
    pub fn start(self) -> Idem {
        match self {
            Rho::R1 | Rho::R3 | Rho::R12 | Rho::R123 => Idem::Zero,
            Rho::R2 | Rho::R23 => Idem::One,
        }
    }

    pub fn end(self) -> Idem {
        match self {
            Rho::R1 | Rho::R3 | Rho::R23 | Rho::R123 => Idem::One,
            Rho::R2 | Rho::R12 => Idem::Zero,
        }
    }

    pub fn mul(self, other: Rho) -> Option<Rho> {
        match (self, other) {
            (Rho::R1, Rho::R2) => Some(Rho::R12),
            (Rho::R2, Rho::R3) => Some(Rho::R23),
            (Rho::R1, Rho::R23) | (Rho::R12, Rho::R3) => Some(Rho::R123),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rho::R1 => "rho1",
            Rho::R2 => "rho2",
            Rho::R3 => "rho3",
            Rho::R12 => "rho12",
            Rho::R23 => "rho23",
            Rho::R123 => "rho123",
        }
    }

    fn bit(self) -> u8 {
        match self {
            Rho::R1 => 2,
            Rho::R2 => 3,
            Rho::R3 => 4,
            Rho::R12 => 5,
            Rho::R23 => 6,
            Rho::R123 => 7,
        }
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rho {
    type Err = BorderedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let digits = t.strip_prefix("rho").or_else(|| t.strip_prefix("ρ")).or_else(|| t.strip_prefix('r')).unwrap_or(t);
        let digits = digits.trim_start_matches('_');
        Ok(match digits {
            "1" => Rho::R1,
            "2" => Rho::R2,
            "3" => Rho::R3,
            "12" => Rho::R12,
            "23" => Rho::R23,
            "123" => Rho::R123,
            _ => return Err(BorderedError::Parse { line: 0, msg: format!("bad Reeb element `{t}`") }),
        })
    }
}

/// Basis element of `A(T²)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Basis {
    Idem(Idem),
    Rho(Rho),
}

impl Basis {
    pub const ALL: [Basis; 8] = [
        Basis::Idem(Idem::Zero),
        Basis::Idem(Idem::One),
        Basis::Rho(Rho::R1),
        Basis::Rho(Rho::R2),
        Basis::Rho(Rho::R3),
        Basis::Rho(Rho::R12),
        Basis::Rho(Rho::R23),
        Basis::Rho(Rho::R123),
    ];

    pub fn start(self) -> Idem {
        match self {
            Basis::Idem(i) => i,
            Basis::Rho(r) => r.start(),
        }
    }

    pub fn end(self) -> Idem {
        match self {
            Basis::Idem(i) => i,
            Basis::Rho(r) => r.end(),
        }
    }

    fn bit(self) -> u8 {
        match self {
            Basis::Idem(i) => i.index(),
            Basis::Rho(r) => r.bit(),
        }
    }

    pub fn mul(self, other: Basis) -> Option<Basis> {
        match (self, other) {
            (Basis::Idem(a), b) => (a == b.start()).then_some(b),
            (a, Basis::Idem(b)) => (a.end() == b).then_some(a),
            (Basis::Rho(a), Basis::Rho(b)) => a.mul(b).map(Basis::Rho),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Idem(i) => write!(f, "i{i}"),
            Basis::Rho(r) => write!(f, "{r}"),
        }
    }
}

/// An `F2`-combination of basis elements, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct AlgElem(u8);

impl AlgElem {
    pub const ZERO: AlgElem = AlgElem(0);

    pub fn basis(b: Basis) -> Self {
        AlgElem(1 << b.bit())
    }

    pub fn rho(r: Rho) -> Self {
        AlgElem::basis(Basis::Rho(r))
    }

    pub fn idem(i: Idem) -> Self {
        AlgElem::basis(Basis::Idem(i))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn terms(self) -> impl Iterator<Item = Basis> {
        Basis::ALL.into_iter().filter(move |b| self.0 & (1 << b.bit()) != 0)
    }

    /// The single basis element, if there is exactly one.
    pub fn single(self) -> Option<Basis> {
        let mut t = self.terms();
        let first = t.next()?;
        t.next().is_none().then_some(first)
    }

    pub fn add(self, other: AlgElem) -> AlgElem {
        AlgElem(self.0 ^ other.0)
    }

    pub fn add_assign(&mut self, other: AlgElem) {
        self.0 ^= other.0;
    }

    pub fn mul(self, other: AlgElem) -> AlgElem {
        let mut out = AlgElem::ZERO;
        for a in self.terms() {
            for b in other.terms() {
                if let Some(c) = a.mul(b) {
                    out.add_assign(AlgElem::basis(c));
                }
            }
        }
        out
    }
}

impl From<Rho> for AlgElem {
    fn from(r: Rho) -> Self {
        AlgElem::rho(r)
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|b| b.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for AlgElem {
    type Err = BorderedError;

    /// Words like `rho12`, `1`, `i0` or sums `rho1+rho3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = AlgElem::ZERO;
        for part in s.split('+') {
            let p = part.trim();
            let b = match p {
                "i0" => Basis::Idem(Idem::Zero),
                "i1" => Basis::Idem(Idem::One),
                _ => Basis::Rho(p.parse()?),
            };
            out.add_assign(AlgElem::basis(b));
        }
        Ok(out)
    }
}
