//! Barcodes of `F2[U]` complexes, graded isomorphism and summand matching.

use std::fmt;

use crate::algebra::{diagonalize, Mono, Ring};
use crate::complex::grading::add;
use crate::complex::{ComplexError, GradedComplex, Grading};

/// A summand `F2[U]` (free) or `F2[U] → U^k F2[U]` of a complex, with the
/// grading of its top generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bar {
    pub length: Option<u32>,
    pub start: Grading,
    /// `false` when the grading is only known up to a shift.
    pub anchored: bool,
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.anchored { "" } else { "~" };
        match self.length {
            None => write!(f, "free@{star}{:?}", self.start),
            Some(k) => write!(f, "U^{k}@{star}{:?}", self.start),
        }
    }
}

/// Bars of positive length and free bars; unit pairs are dropped.
/// `anchored[i]` marks generators with a pinned grading (all by default).
pub fn barcode(c: &GradedComplex, anchored: Option<&[bool]>) -> Result<Vec<Bar>, ComplexError> {
    if !matches!(c.ring(), Ring::F2U | Ring::F2) {
        return Err(ComplexError::Invalid(format!("barcodes need an F2U complex, got {}", c.ring())));
    }
    let entries = crate::algebra::homology::exponent_entries(c)?;
    let diag = diagonalize(c.len(), &entries).map_err(ComplexError::from)?;
    let conv = c.convention();
    let bar = |i: usize, length: Option<u32>| {
        let v = diag.new_vector(i);
        let (&j, &k) = v.iter().next().expect("basis vectors are nonzero");
        let start = add(c.grading(j), conv.mono_degree(Mono::u(k)));
        let anchored = anchored.is_none_or(|a| v.keys().all(|&t| a[t]));
        Bar { length, start, anchored }
    };
    let mut out: Vec<Bar> = diag.pairs.iter().filter(|p| p.2 > 0).map(|&(x, _, k)| bar(x, Some(k))).collect();
    out.extend(diag.free.iter().map(|&z| bar(z, None)));
    out.sort();
    Ok(out)
}

fn compatible(want: &Bar, have: &Bar) -> bool {
    want.length == have.length && (!have.anchored || !want.anchored || want.start == have.start)
}

/// Assigns every bar of `want` to a distinct compatible bar of `have`
/// (bipartite matching); `result[i]` is the index matched with `want[i]`.
pub fn match_bars(want: &[Bar], have: &[Bar]) -> Option<Vec<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; have.len()];
    fn augment(i: usize, want: &[Bar], have: &[Bar], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in 0..have.len() {
            if seen[j] || !compatible(&want[i], &have[j]) {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, want, have, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..want.len() {
        let mut seen = vec![false; have.len()];
        if !augment(i, want, have, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut out = vec![0; want.len()];
    for (j, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            out[*i] = j;
        }
    }
    Some(out)
}

/// Graded isomorphism of two `F2[U]` complexes, up to floating bars.
pub fn graded_isomorphic(
    c: &GradedComplex,
    ca: Option<&[bool]>,
    d: &GradedComplex,
    da: Option<&[bool]>,
) -> Result<bool, ComplexError> {
    let (bc, bd) = (barcode(c, ca)?, barcode(d, da)?);
    Ok(bc.len() == bd.len() && match_bars(&bc, &bd).is_some())
}

/// Whether `s` is (up to floating bars) a direct summand of `c`.
pub fn contains_summand(
    c: &GradedComplex,
    ca: Option<&[bool]>,
    s: &GradedComplex,
) -> Result<Option<Vec<Bar>>, ComplexError> {
    let have = barcode(c, ca)?;
    let want = barcode(s, None)?;
    Ok(match_bars(&want, &have).map(|m| m.into_iter().map(|j| have[j]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Convention;

    #[test]
    fn figure_eight_bars() {
        let c = GradedComplex::builder(Ring::F2U, Convention::Horizontal)
            .generator("x", 0, 0)
            .generator("h", 1, 1)
            .generator("s", 0, 2)
            .arrow("h", "s", "U")
            .build()
            .unwrap();
        let b = barcode(&c, None).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.contains(&Bar { length: Some(1), start: (1, 1), anchored: true }));
        assert!(b.contains(&Bar { length: None, start: (0, 0), anchored: true }));
    }

    #[test]
    fn matching_needs_augmenting_paths() {
        let fl = |k, g| Bar { length: Some(k), start: g, anchored: false };
        let an = |k, g| Bar { length: Some(k), start: g, anchored: true };
        let want = [an(1, (0, 0)), an(1, (5, 5))];
        let have = [fl(1, (9, 9)), an(1, (0, 0))];
        assert!(match_bars(&want, &have).is_some());
        assert!(match_bars(&[an(2, (0, 0))], &have).is_none());
    }
}
