use std::sync::Arc;

use kfc_core::algebra::{homology_over_f2u, Ring};
use kfc_core::bordered::*;
use kfc_core::complex::ops::truncate;
use kfc_core::complex::{validate, Convention, GradedComplex, TruncMode};
use kfc_core::morphism::is_local;
use kfc_core::standard::{cable_summand, cfk_uv_e};

fn unknot_cfk() -> GradedComplex {
    GradedComplex::builder(Ring::F2UV, Convention::UV).generator("1", 0, 0).build().unwrap()
}

fn free_only(c: &GradedComplex) -> bool {
    let h = homology_over_f2u(c).unwrap();
    h.free_rank == 1 && h.torsion.is_empty()
}

#[test]
fn nu_with_unknot() {
    let d = cfd_from_cfk(&unknot_cfk()).unwrap();
    let t = box_tensor(&cfa_pattern(Pattern::Nu).unwrap(), &d).unwrap();
    assert_eq!(t.complex.len(), 1);
    assert!(t.complex.differential().is_zero());
    assert_eq!(t.complex.grading(0), (0, 0));
}

#[test]
fn nu_with_figure_eight_is_the_horizontal_complex() {
    let t = box_tensor(&cfa_nu(), &cfd_e()).unwrap();
    assert!(validate(&t.complex).is_valid());
    let e = truncate(&cfk_uv_e().complex, TruncMode::V0).unwrap();
    assert!(graded_isomorphic(&t.complex, Some(&t.anchored), &e, None).unwrap());
    let c = truncate(&cable_summand(2).unwrap().complex, TruncMode::V0).unwrap();
    assert!(!graded_isomorphic(&t.complex, Some(&t.anchored), &c, None).unwrap());
}

#[test]
fn figure_eight_complement_from_its_complex() {
    let d = cfd_from_cfk(&cfk_uv_e().complex).unwrap();
    assert_eq!(d.len(), 9);
    assert!(find_isomorphism(&d, &cfd_e()).is_some());
    assert!(find_isomorphism(&d, &cfd_unknot().direct_sum(&cfd_unknot()).unwrap()).is_none());
}

#[test]
fn cable_of_unknot_is_trivial() {
    for n in 1..4 {
        let t = box_tensor(&cfa_cable(n).unwrap(), &cfd_unknot()).unwrap();
        let r = kfc_core::complex::reduce(&t.complex).unwrap();
        assert_eq!(r.reduced.len(), 1, "n={n}");
        assert!(free_only(&t.complex));
    }
}

#[test]
fn differential_of_a_h1() {
    for n in 1..4 {
        let t = cable_of_figure_eight(n).unwrap();
        for i in 1..=2 * n + 1 {
            let a = t.index_of(&format!("a{i}"), "h1").unwrap();
            let b = t.index_of(&format!("b{i}"), "h1").unwrap();
            let d = t.complex.d_of(a);
            assert_eq!(d.len(), 1, "n={n} i={i}");
            assert_eq!(d[&b].to_string(), if i == 1 { "U".to_string() } else { format!("U^{i}") });
            assert!(t.complex.d_of(b).is_empty());
            assert_eq!(t.complex.grading(a), (0, 0));
        }
    }
}

#[test]
fn cable_pipeline_contains_the_summand() {
    for n in 1..3 {
        let t = cable_of_figure_eight(n).unwrap();
        assert!(validate(&t.complex).is_valid());
        let s = truncate(&cable_summand(n).unwrap().complex, TruncMode::V0).unwrap();
        assert!(contains_summand(&t.complex, Some(&t.anchored), &s).unwrap().is_some(), "n={n}");
    }
    let t = cable_of_figure_eight(1).unwrap();
    let too_long = truncate(&cable_summand(4).unwrap().complex, TruncMode::V0).unwrap();
    assert!(contains_summand(&t.complex, Some(&t.anchored), &too_long).unwrap().is_none());
}

#[test]
fn box_tensors_square_to_zero() {
    let modules = [cfd_unknot(), cfd_e(), cfd_e().direct_sum(&cfd_unknot()).unwrap()];
    let patterns = [cfa_nu(), cfa_nu().hat(), cfa_cable(1).unwrap(), cfa_cable(2).unwrap().hat()];
    for a in &patterns {
        for d in &modules {
            let t = box_tensor(a, d).unwrap();
            assert!(validate(&t.complex).is_valid());
        }
    }
}

#[test]
fn morphisms_pair_functorially() {
    let e = Arc::new(cfd_e());
    let id = TypeDMorphism::identity(e.clone());
    let zero = TypeDMorphism::zero(e.clone(), e.clone());
    for a in [cfa_nu(), cfa_cable(1).unwrap()] {
        let m = box_tensor_morphism(&a, &id).unwrap();
        assert!(m.map.is_chain_map());
        assert_eq!(m.map, kfc_core::complex::GradedMap::identity(m.source.complex.clone()));
        assert!(box_tensor_morphism(&a, &zero).unwrap().map.is_zero());
    }
    let h = TypeDMorphism::from_labels(e.clone(), e.clone(), &[("h1", "e0", "rho2")]).unwrap();
    let f = h.boundary();
    assert!(f.is_chain_map());
    let ff = f.then(&f).unwrap();
    let a = cfa_nu();
    let lhs = box_tensor_morphism(&a, &ff).unwrap().map;
    let single = box_tensor_morphism(&a, &f).unwrap().map;
    assert_eq!(lhs, single.then(&single).unwrap());
}

#[test]
fn locality_of_morphisms() {
    let e = Arc::new(cfd_e());
    let sum = Arc::new(cfd_e().direct_sum(&cfd_e()).unwrap());
    assert!(is_local_type_d(&TypeDMorphism::identity(e.clone())).unwrap());
    assert!(!is_local_type_d(&TypeDMorphism::zero(e.clone(), e.clone())).unwrap());
    let inc = TypeDMorphism::inclusion(e.clone(), sum.clone(), &(0..9).collect::<Vec<_>>()).unwrap();
    assert!(inc.is_chain_map());
    // The pairing of E ⊕ E has rank two at U = 1.
    assert!(matches!(is_local_type_d(&inc), Err(BorderedError::Rank { rank: 2, .. })));
    let id = minus_of_morphism(&TypeDMorphism::identity(e.clone())).unwrap();
    assert_eq!(is_local(&id.map).unwrap(), is_local_type_d(&TypeDMorphism::identity(e)).unwrap());
}

#[test]
fn null_homotopic_maps_kill_a_h1() {
    let e = Arc::new(cfd_e());
    let homotopies: [&[(&str, &str, &str)]; 4] = [
        &[("h1", "e0", "rho2")],
        &[("e0", "e0", "i0")],
        &[("h1", "h1", "i1"), ("e0", "g0", "i0")],
        &[("f1", "h1", "i1"), ("e1", "g1", "i1")],
    ];
    for n in 1..3 {
        let a = cfa_cable(n).unwrap().hat();
        for h in homotopies {
            let f = TypeDMorphism::from_labels(e.clone(), e.clone(), h).unwrap().boundary();
            let m = box_tensor_morphism(&a, &f).unwrap();
            assert!(m.map.is_chain_map());
            for i in 1..=2 * n + 1 {
                let x = m.source.index_of(&format!("a{i}"), "h1").unwrap();
                assert!(m.map.image(x).is_empty(), "n={n} h={h:?}");
            }
        }
        let id = box_tensor_morphism(&a, &TypeDMorphism::identity(e.clone())).unwrap();
        let x = id.source.index_of("a1", "h1").unwrap();
        assert!(!id.map.image(x).is_empty());
    }
}

#[test]
fn rho23_cycle_does_not_terminate() {
    let d = TypeD::builder()
        .generator("p", Idem::Zero)
        .generator("q", Idem::One)
        .generator("r", Idem::One)
        .arrow("p", "q", "rho3")
        .arrow("q", "r", "rho23")
        .arrow("r", "q", "rho23")
        .build()
        .unwrap();
    assert!(matches!(box_tensor(&cfa_nu(), &d), Err(BorderedError::Nontermination(_))));
}

#[test]
fn negative_control_for_type_d() {
    let good = cfd_e();
    assert!(check_type_d(&good).is_valid());
    let mut text = print_type_d(&good);
    let before = text.clone();
    text = text.replace("darrow e0 e1 rho3", "darrow e0 e1 rho1");
    assert_ne!(text, before);
    let bad = parse_type_d(&text).unwrap();
    let r = check_type_d(&bad);
    assert!(!r.is_valid());
    assert!(r.issues.iter().any(|i| matches!(i, DIssue::Square { .. })), "{r}");
    let without_rho1 = parse_type_d(&before.replace("darrow e0 h1 rho1\n", "")).unwrap();
    assert!(check_type_d(&without_rho1).is_valid());
}

#[test]
fn files_round_trip() {
    for d in [cfd_unknot(), cfd_e()] {
        assert_eq!(parse_type_d(&print_type_d(&d)).unwrap(), d);
    }
    for a in [cfa_nu(), cfa_cable(2).unwrap()] {
        let back = parse_type_a(&print_type_a(&a)).unwrap();
        assert_eq!(back.describe(), a.describe());
    }
}

#[test]
fn tau_gate() {
    let trefoil = GradedComplex::builder(Ring::F2UV, Convention::UV)
        .generator("a", 2, 0)
        .generator("b", 1, 1)
        .generator("c", 0, 2)
        .arrow("b", "a", "U")
        .arrow("b", "c", "V")
        .build()
        .unwrap();
    assert_eq!(compute_tau(&trefoil).unwrap(), 1);
    assert!(matches!(cfd_from_cfk(&trefoil), Err(BorderedError::Tau(1))));
}
