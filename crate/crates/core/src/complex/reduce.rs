//! Cancellation of unit entries of the differential.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Mono, PMat, PolyUV, Ring};

use super::{ComplexError, GradedComplex, GradedMap, MapKind};

/// A reduced complex with the homotopy equivalence data relating it to the
/// original: `project: C → C'`, `include: C' → C`, and `homotopy: C → C`
/// with `id + include∘project = ∂h + h∂` and `project∘include = id`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub original: Arc<GradedComplex>,
    pub reduced: Arc<GradedComplex>,
    pub project: GradedMap,
    pub include: GradedMap,
    pub homotopy: GradedMap,
    /// The cancelled pairs `(x, y)` with `∂x = y + ...`, as labels.
    pub cancelled: Vec<(String, String)>,
}

type Row = BTreeMap<usize, PolyUV>;

fn axpy(row: &mut Row, c: &PolyUV, src: &Row, ring: Ring) {
    for (&k, p) in src {
        let slot = row.entry(k).or_default();
        slot.add_assign(&ring.mul(c, p));
        if slot.is_zero() {
            row.remove(&k);
        }
    }
}

/// Repeatedly cancels unit entries `∂x = y + r` until none remain.
pub fn reduce(c: &GradedComplex) -> Result<Reduction, ComplexError> {
    let ring = c.ring();
    let n = c.len();
    let one = PolyUV::one();
    let mut d: Vec<Row> = (0..n).map(|i| c.d_of(i).clone()).collect();
    let mut project: Vec<Row> = (0..n).map(|i| Row::from([(i, one.clone())])).collect();
    let mut include: Vec<Row> = project.clone();
    let mut homotopy: Vec<Row> = vec![Row::new(); n];
    let mut alive = vec![true; n];
    let mut cancelled = Vec::new();
    loop {
        let pick = (0..n).filter(|&x| alive[x]).find_map(|x| {
            d[x].iter().find(|(_, p)| p.contains(Mono::ONE) && p.terms().len() == 1).map(|(&y, _)| (x, y))
        });
        let Some((x, y)) = pick else { break };
        if x == y {
            return Err(ComplexError::Invalid(format!("generator `{}` has a unit self-arrow", c.label(x))));
        }
        let mut r = d[x].clone();
        r.remove(&y);
        if r.contains_key(&x) {
            return Err(ComplexError::Invalid(format!("generator `{}` hits itself", c.label(x))));
        }
        let coeff_y: Vec<(usize, PolyUV)> =
            (0..n).filter(|&w| alive[w] && w != x).filter_map(|w| d[w].get(&y).map(|p| (w, p.clone()))).collect();
        let include_x = include[x].clone();
        // include: w ↦ w + ∂(w)_y x
        for (w, cw) in &coeff_y {
            axpy(&mut include[*w], cw, &include_x, ring);
        }
        // project and homotopy are updated through the old projection's y-coefficient
        for o in 0..n {
            if let Some(cy) = project[o].get(&y).cloned() {
                axpy(&mut homotopy[o], &cy, &include_x, ring);
                axpy(&mut project[o], &cy, &r, ring);
            }
            project[o].remove(&x);
            project[o].remove(&y);
        }
        for (w, cw) in &coeff_y {
            axpy(&mut d[*w], cw, &r, ring);
        }
        for row in d.iter_mut() {
            row.remove(&x);
            row.remove(&y);
        }
        d[x].clear();
        d[y].clear();
        alive[x] = false;
        alive[y] = false;
        cancelled.push((c.label(x).to_string(), c.label(y).to_string()));
    }
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let mut new_index = vec![usize::MAX; n];
    for (j, &i) in keep.iter().enumerate() {
        new_index[i] = j;
    }
    let m = keep.len();
    let mut rd = PMat::zeros(m, m);
    for (j, &i) in keep.iter().enumerate() {
        for (&k, p) in &d[i] {
            rd.set(j, new_index[k], p.clone());
        }
    }
    let gens = keep.iter().map(|&i| c.generators()[i].clone()).collect();
    let reduced = Arc::new(GradedComplex::new(ring, c.convention(), gens, rd)?);
    let original = Arc::new(c.clone());
    let mut pm = PMat::zeros(n, m);
    for (o, row) in project.iter().enumerate() {
        for (&k, p) in row {
            pm.set(o, new_index[k], p.clone());
        }
    }
    let mut im = PMat::zeros(m, n);
    for (j, &i) in keep.iter().enumerate() {
        for (&k, p) in &include[i] {
            im.set(j, k, p.clone());
        }
    }
    let mut hm = PMat::zeros(n, n);
    for (o, row) in homotopy.iter().enumerate() {
        for (&k, p) in row {
            hm.set(o, k, p.clone());
        }
    }
    let conv = c.convention();
    let dd = conv.differential_degree();
    Ok(Reduction {
        project: GradedMap::new(original.clone(), reduced.clone(), (0, 0), MapKind::Linear, pm)?,
        include: GradedMap::new(reduced.clone(), original.clone(), (0, 0), MapKind::Linear, im)?,
        homotopy: GradedMap::new(original.clone(), original.clone(), (-dd.0, -dd.1), MapKind::Linear, hm)?,
        original,
        reduced,
        cancelled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{validate, Convention};

    fn sample() -> GradedComplex {
        // a -> p (unit), a -> U q ; p -> U r, q -> r
        GradedComplex::builder(Ring::F2U, Convention::Horizontal)
            .generator("a", 0, 0)
            .generator("p", 0, -1)
            .generator("q", 1, 1)
            .generator("r", 1, 0)
            .arrow("a", "p", "1")
            .arrow("a", "q", "U")
            .arrow("p", "r", "U")
            .arrow("q", "r", "1")
            .build()
            .unwrap()
    }

    #[test]
    fn equivalence_data_is_consistent() {
        let c = sample();
        assert!(validate(&c).is_valid());
        let red = reduce(&c).unwrap();
        assert!(red.reduced.is_empty() || !red.reduced.has_unit_entry());
        assert!(red.project.is_chain_map());
        assert!(red.include.is_chain_map());
        let pi = red.include.then(&red.project).unwrap();
        assert_eq!(pi.matrix, PMat::identity(red.reduced.len()));
        let ip = red.project.then(&red.include).unwrap();
        let lhs = GradedMap::identity(red.original.clone()).add(&ip).unwrap();
        let rhs = red.homotopy.boundary();
        assert_eq!(lhs.matrix, rhs.matrix);
        assert!(red.project.is_homogeneous() && red.include.is_homogeneous() && red.homotopy.is_homogeneous());
    }
}
