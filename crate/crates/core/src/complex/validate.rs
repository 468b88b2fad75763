use std::fmt;

use crate::algebra::{Mono, PolyUV};

use super::GradedComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Issue {
    /// A monomial not present in the ring (e.g. `UV` over `R`).
    RingViolation { from: String, to: String, mono: Mono },
    /// A differential monomial whose degree does not match the gradings.
    Inhomogeneous { from: String, to: String, mono: Mono },
    /// A nonzero coefficient of `∂²`.
    DSquared { from: String, to: String, value: PolyUV },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::RingViolation { from, to, mono } => write!(f, "entry {from}->{to}: {mono} is not in the ring"),
            Issue::Inhomogeneous { from, to, mono } => write!(f, "entry {from}->{to}: {mono} is not homogeneous"),
            Issue::DSquared { from, to, value } => write!(f, "d^2 is nonzero at ({from},{to}): {value}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        for issue in &self.issues {
            writeln!(f, "{issue}")?;
        }
        Ok(())
    }
}

/// Lists every violated invariant of `c`.
pub fn validate(c: &GradedComplex) -> ValidationReport {
    let mut issues = Vec::new();
    let conv = c.convention();
    let dd = conv.differential_degree();
    for (x, y, p) in c.differential().entries() {
        for &m in p.terms() {
            let (from, to) = (c.label(x).to_string(), c.label(y).to_string());
            if !c.ring().admits(m) {
                issues.push(Issue::RingViolation { from, to, mono: m });
            } else if conv.forced_mono(c.grading(x), c.grading(y), dd, false) != Some(m) {
                issues.push(Issue::Inhomogeneous { from, to, mono: m });
            }
        }
    }
    let d2 = c.differential().mul(c.differential(), c.ring());
    for (x, y, p) in d2.entries() {
        issues.push(Issue::DSquared { from: c.label(x).to_string(), to: c.label(y).to_string(), value: p.clone() });
    }
    ValidationReport { issues }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::complex::Convention;

    #[test]
    fn d_squared_detected() {
        let c = GradedComplex::builder(Ring::F2, Convention::Horizontal)
            .generator("a", 0, 0)
            .generator("b", 0, -1)
            .generator("c", 0, -2)
            .arrow("a", "b", "1")
            .arrow("b", "c", "1")
            .build()
            .unwrap();
        let r = validate(&c);
        assert_eq!(r.issues.len(), 1);
        assert!(matches!(&r.issues[0], Issue::DSquared { from, to, .. } if from == "a" && to == "c"));
    }
}
