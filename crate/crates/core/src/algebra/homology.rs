//! Homology of a free graded complex over `F2[U]` via diagonalization.

use std::collections::BTreeMap;

use crate::complex::{validate, ComplexError, GradedComplex};

use super::diag::{diagonalize, Diagonalization};
use super::poly::Mono;
use super::ring::Ring;

/// `H(C) ≅ F2[U]^free_rank ⊕ ⨁ F2[U]/(U^k)`.
#[derive(Clone, Debug)]
pub struct FreeHomology {
    pub free_rank: usize,
    /// Torsion orders `k`, sorted ascending.
    pub torsion: Vec<u32>,
    /// Free generators, as indices of the diagonal basis.
    pub free: Vec<usize>,
    pub diagonal: Diagonalization,
}

impl FreeHomology {
    /// The cycle `ξ` generating the free part (when the rank is 1).
    pub fn representative(&self) -> Option<BTreeMap<usize, Mono>> {
        let &[z] = self.free.as_slice() else { return None };
        Some(self.diagonal.new_vector(z).iter().map(|(&i, &k)| (i, Mono::u(k))).collect())
    }

    /// The functional `θ` reading off the free coordinate: `θ(e_j)`.
    pub fn free_coordinate(&self) -> Option<BTreeMap<usize, Mono>> {
        let &[z] = self.free.as_slice() else { return None };
        Some(self.diagonal.coordinate(z).iter().map(|(&i, &k)| (i, Mono::u(k))).collect())
    }
}

/// Univariate exponent entries of a complex over `F2` or `F2[U]`.
pub(crate) fn exponent_entries(c: &GradedComplex) -> Result<Vec<(usize, usize, u32)>, ComplexError> {
    let mut out = Vec::with_capacity(c.differential().nnz());
    for (x, y, p) in c.differential().entries() {
        let m = p
            .single()
            .ok_or_else(|| ComplexError::Invalid(format!("entry {}->{} is not a monomial", c.label(x), c.label(y))))?;
        if m.v > 0 {
            return Err(ComplexError::Invalid(format!("entry {}->{} involves V", c.label(x), c.label(y))));
        }
        out.push((x, y, m.u));
    }
    Ok(out)
}

/// Computes free rank, torsion orders and a free-part cycle.
pub fn homology_over_f2u(c: &GradedComplex) -> Result<FreeHomology, ComplexError> {
    if !matches!(c.ring(), Ring::F2U | Ring::F2) {
        return Err(ComplexError::Invalid(format!("homology over F2[U] needs an F2U complex, got {}", c.ring())));
    }
    let report = validate(c);
    if !report.is_valid() {
        return Err(ComplexError::Invalid(report.to_string()));
    }
    let diagonal = diagonalize(c.len(), &exponent_entries(c)?)?;
    let mut torsion = diagonal.torsion_orders();
    if c.ring() == Ring::F2 {
        torsion.clear();
    }
    let free: Vec<usize> = diagonal.free.clone();
    Ok(FreeHomology { free_rank: free.len(), torsion, free, diagonal })
}
