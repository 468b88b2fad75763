//! Type-D structures of 0-framed knot complements from `CFK` over `R`.

use std::collections::BTreeMap;

use crate::algebra::{homology_over_f2u, Diagonalization, Mono, Ring};
use crate::complex::grading::add;
use crate::complex::ops::truncate;
use crate::complex::{Convention, GradedComplex, Grading, TruncMode};

use super::algebra::{AlgElem, Idem, Rho};
use super::typed::{check_type_d, BGen, TypeD};
use super::BorderedError;

fn check_input(c: &GradedComplex) -> Result<(), BorderedError> {
    if !matches!(c.ring(), Ring::R | Ring::F2UV) || c.convention() != Convention::UV {
        return Err(BorderedError::Shape(format!(
            "need an R or F2UV complex in the uv convention, got {} / {}",
            c.ring(),
            c.convention()
        )));
    }
    let report = crate::complex::validate(c);
    if !report.is_valid() {
        return Err(BorderedError::Shape(report.to_string()));
    }
    Ok(())
}

/// One truncation diagonalized, with the hat reductions of its bases.
struct Simplified {
    diagonal: Diagonalization,
    free: usize,
    /// `hat[i]`: generators in the `U = 0` part of the new basis vector `i`.
    hat: Vec<Vec<usize>>,
    /// `coord[i]`: generators `e_j` whose expansion contains new vector `i`.
    coord: Vec<Vec<usize>>,
    grading: Grading,
}

fn simplify(c: &GradedComplex, mode: TruncMode, what: &'static str) -> Result<Simplified, BorderedError> {
    let t = truncate(c, mode)?;
    let h = homology_over_f2u(&t)?;
    if h.free_rank != 1 {
        return Err(BorderedError::Rank { what, rank: h.free_rank });
    }
    let diagonal = h.diagonal;
    let free = diagonal.free[0];
    let zero_part = |m: &BTreeMap<usize, u32>| m.iter().filter(|(_, &k)| k == 0).map(|(&j, _)| j).collect::<Vec<_>>();
    let hat = (0..t.len()).map(|i| zero_part(diagonal.new_vector(i))).collect();
    let mut coord = vec![Vec::new(); t.len()];
    for (i, slot) in coord.iter_mut().enumerate() {
        *slot = zero_part(diagonal.coordinate(i));
    }
    let (&j, &k) = diagonal.new_vector(free).iter().next().expect("nonzero cycle");
    let grading = add(t.grading(j), t.convention().mono_degree(Mono::u(k)));
    Ok(Simplified { diagonal, free, hat, coord, grading })
}

/// `τ`: the Alexander grading of the generator of vertical homology.
pub fn compute_tau(c: &GradedComplex) -> Result<i32, BorderedError> {
    check_input(c)?;
    let v = simplify(c, TruncMode::U0, "vertical complex")?;
    // vertical gradings are (-A, gr_V)
    Ok(-v.grading.0)
}

/// Builds `CFD` of the 0-framed complement from a reduced complex with
/// `τ = 0`, attaching stable chains along vertically and horizontally
/// simplified bases and a single unstable `ρ₁₂` arrow.
pub fn cfd_from_cfk(c: &GradedComplex) -> Result<TypeD, BorderedError> {
    check_input(c)?;
    let r = truncate(c, TruncMode::ModUV)?;
    if let Some((x, y, _)) = r.differential().entries().find(|(_, _, p)| p.contains(Mono::ONE)) {
        return Err(BorderedError::NotReduced(format!("{} -> {}", r.label(x), r.label(y))));
    }
    let tau = compute_tau(&r)?;
    if tau != 0 {
        return Err(BorderedError::Tau(tau));
    }
    let v = simplify(&r, TruncMode::U0, "vertical complex")?;
    let h = simplify(&r, TruncMode::V0, "horizontal complex")?;
    let mut gens: Vec<BGen> =
        r.generators().iter().map(|g| BGen { label: g.label.clone(), idem: Idem::Zero }).collect();
    let mut arrows: Vec<(usize, usize, AlgElem)> = Vec::new();
    let chain = |gens: &mut Vec<BGen>, name: String, len: u32| -> Vec<usize> {
        (1..=len)
            .map(|i| {
                gens.push(BGen { label: format!("{name}{i}"), idem: Idem::One });
                gens.len() - 1
            })
            .collect()
    };
    // out of basis vector i: every e_j with i in its expansion
    let from_vector = |s: &Simplified, i: usize| s.coord[i].clone();
    for &(x, y, k) in &v.diagonal.pairs {
        let kappa = chain(&mut gens, format!("{}v", r.label(x)), k);
        for j in from_vector(&v, x) {
            arrows.push((j, kappa[0], Rho::R1.into()));
        }
        for w in kappa.windows(2) {
            arrows.push((w[1], w[0], Rho::R23.into()));
        }
        for j in from_vector(&v, y) {
            arrows.push((j, kappa[kappa.len() - 1], Rho::R123.into()));
        }
    }
    for &(x, y, k) in &h.diagonal.pairs {
        let lambda = chain(&mut gens, format!("{}h", r.label(x)), k);
        for j in from_vector(&h, x) {
            arrows.push((j, lambda[0], Rho::R3.into()));
        }
        for w in lambda.windows(2) {
            arrows.push((w[0], w[1], Rho::R23.into()));
        }
        for &j in &h.hat[y] {
            arrows.push((lambda[lambda.len() - 1], j, Rho::R2.into()));
        }
    }
    for j in from_vector(&v, v.free) {
        for &l in &h.hat[h.free] {
            arrows.push((j, l, Rho::R12.into()));
        }
    }
    let d = TypeD::new(gens, &arrows)?;
    let report = check_type_d(&d);
    if !report.is_valid() {
        return Err(BorderedError::InvalidD(report.to_string()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bordered::pattern::{cfd_e, cfd_unknot};
    use crate::bordered::typed::find_isomorphism;
    use crate::standard::{cable_summand, cfk_uv_e};

    fn unknot() -> GradedComplex {
        GradedComplex::builder(Ring::R, Convention::UV).generator("t", 0, 0).build().unwrap()
    }

    #[test]
    fn unknot_complement() {
        let d = cfd_from_cfk(&unknot()).unwrap();
        assert!(find_isomorphism(&d, &cfd_unknot()).is_some());
    }

    #[test]
    fn figure_eight_complement() {
        let d = cfd_from_cfk(&cfk_uv_e().complex).unwrap();
        let perm = find_isomorphism(&d, &cfd_e()).expect("isomorphic to the nine-generator module");
        let image = |l: &str| cfd_e().label(perm[d.index_of(l).unwrap()]).to_string();
        assert_eq!(["h", "s", "z", "t", "x"].map(image), ["e0", "f0", "g0", "h0", "w"]);
    }

    #[test]
    fn taus() {
        assert_eq!(compute_tau(&unknot()).unwrap(), 0);
        assert_eq!(compute_tau(&cfk_uv_e().complex).unwrap(), 0);
        for n in 1..4 {
            let c = cable_summand(n).unwrap();
            assert_eq!(compute_tau(&c.complex).unwrap(), 0);
        }
        let trefoil = GradedComplex::builder(Ring::R, Convention::UV)
            .generator("a", 2, 0)
            .generator("b", 1, 1)
            .generator("c", 0, 2)
            .arrow("b", "a", "U")
            .arrow("b", "c", "V")
            .build()
            .unwrap();
        assert_eq!(compute_tau(&trefoil).unwrap(), 1);
        assert_eq!(cfd_from_cfk(&trefoil).unwrap_err(), BorderedError::Tau(1));
    }

    #[test]
    fn long_vertical_arrow_gives_long_chain() {
        let c = GradedComplex::builder(Ring::R, Convention::UV)
            .generator("o", 0, 0)
            .generator("x", 0, 0)
            .generator("y", -1, 3)
            .generator("p", 1, -1)
            .generator("q", 0, 2)
            .arrow("x", "y", "V^2")
            .arrow("x", "p", "U")
            .arrow("y", "q", "U")
            .arrow("p", "q", "V^2")
            .build()
            .unwrap();
        let d = cfd_from_cfk(&c).unwrap();
        assert!(check_type_d(&d).is_valid());
        assert_eq!(d.len(), 5 + 2 + 2 + 1 + 1);
        let (x, x1, x2, y) = (
            d.index_of("x").unwrap(),
            d.index_of("xv1").unwrap(),
            d.index_of("xv2").unwrap(),
            d.index_of("y").unwrap(),
        );
        assert_eq!(d.delta(x).get(&x1), Some(&Rho::R1.into()));
        assert_eq!(d.delta(x2).get(&x1), Some(&Rho::R23.into()));
        assert_eq!(d.delta(y).get(&x2), Some(&Rho::R123.into()));
    }

    #[test]
    fn non_reduced_input_is_rejected() {
        let c = GradedComplex::builder(Ring::R, Convention::UV)
            .generator("t", 0, 0)
            .generator("p", 1, 1)
            .generator("q", 0, 0)
            .arrow("p", "q", "1")
            .build()
            .unwrap();
        assert!(matches!(cfd_from_cfk(&c), Err(BorderedError::NotReduced(_))));
    }
}
