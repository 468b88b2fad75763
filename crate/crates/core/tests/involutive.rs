use kfc_core::complex::ops::truncate;
use kfc_core::complex::{GradedMap, MapKind, TruncMode};
use kfc_core::involutive::axioms::{SKEW, SQUARE};
use kfc_core::involutive::{
    a0_extract, check_axioms, check_horizontal_axioms, commutativity_witness, connected_sum_iota, dual_iota, phi,
    reverse, tensor_iota, trace_maps, Flavor, IotaComplex, Variable,
};
use kfc_core::morphism::{are_homotopic, find_null_homotopy, Solver};
use kfc_core::standard::{c_e, c_e_broken, c_n, c_o, cable_summand, cfk_uv_e};

fn image(x: &IotaComplex, label: &str) -> Vec<String> {
    x.iota_labels(label).unwrap()
}

#[test]
fn standard_horizontal_objects_pass() {
    let solver = Solver::with_oracle();
    for x in [c_o(), c_e(), c_n(2).unwrap(), c_n(3).unwrap(), c_n(4).unwrap()] {
        let r = check_horizontal_axioms(&x, &solver);
        assert!(r.passed(), "{r}");
        assert!(r.psi_lift.is_some());
    }
    assert_eq!(solver.tally().disagreements, 0);
}

#[test]
fn broken_figure_eight_fails_square() {
    let solver = Solver::with_oracle();
    let r = check_horizontal_axioms(&c_e_broken(), &solver);
    assert!(!r.passed());
    let names: Vec<&str> = r.failures().iter().map(|c| c.name).collect();
    assert!(names.contains(&SQUARE), "{r}");
    assert!(names.contains(&SKEW), "{r}");
}

#[test]
fn c1_is_not_an_iota_complex() {
    let r = check_horizontal_axioms(&c_n(1).unwrap(), &Solver::new());
    let names: Vec<&str> = r.failures().iter().map(|c| c.name).collect();
    assert_eq!(names, [SQUARE]);
}

#[test]
fn phi_examples() {
    let e = c_e();
    assert_eq!(e.phi().unwrap().map.describe(), "a -> b\nc -> d\n");
    for n in 2..5 {
        assert!(c_n(n).unwrap().phi_hat().unwrap().is_zero());
    }
    let k = cfk_uv_e();
    assert_eq!(phi(&k.complex, Variable::U).unwrap().map.describe(), "h -> s\nt -> z\n");
    assert_eq!(phi(&k.complex, Variable::V).unwrap().map.describe(), "h -> t\ns -> z\n");
}

#[test]
fn phi_squared_is_nullhomotopic() {
    let solver = Solver::new();
    for x in [c_e(), c_n(2).unwrap(), cfk_uv_e(), cable_summand(2).unwrap()] {
        let p = x.phi().unwrap().map;
        assert!(p.is_chain_map());
        let sq = p.then(&p).unwrap();
        assert!(find_null_homotopy(&sq, &solver).unwrap().is_some());
    }
}

#[test]
fn tensor_of_figure_eights() {
    let solver = Solver::new();
    let t = tensor_iota(&c_e(), &c_e(), &solver).unwrap();
    assert_eq!(image(&t, "b*d"), ["c*d"]);
    let mut aa = image(&t, "a*a");
    aa.sort();
    let mut want = vec!["a*a", "a*x", "x*a", "x*x", "b*c"];
    want.sort();
    assert_eq!(aa, want);
    let r = check_horizontal_axioms(&t, &solver);
    assert!(r.passed(), "{r}");
}

#[test]
fn tensor_with_unknot_is_the_factor() {
    let solver = Solver::new();
    let e = c_e();
    let t = tensor_iota(&e, &c_o(), &solver).unwrap();
    assert_eq!(t.iota.matrix, e.iota.matrix);
}

#[test]
fn tensor_products_stay_in_the_group() {
    let solver = Solver::new();
    let pool = [c_o(), c_e(), c_n(2).unwrap(), c_n(3).unwrap()];
    for x in &pool {
        for y in &pool {
            let t = tensor_iota(x, y, &solver).unwrap();
            let r = check_horizontal_axioms(&t, &solver);
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn associativity_up_to_homotopy() {
    let solver = Solver::new();
    let (a, b, c) = (c_e(), c_n(2).unwrap(), c_e());
    let left = tensor_iota(&tensor_iota(&a, &b, &solver).unwrap(), &c, &solver).unwrap();
    let right = tensor_iota(&a, &tensor_iota(&b, &c, &solver).unwrap(), &solver).unwrap();
    let moved = right.iota.retarget(left.hat.clone(), left.hat.clone()).unwrap();
    assert!(are_homotopic(&left.iota, &moved, &solver).unwrap().is_some());
}

#[test]
fn commutativity_witness_checks() {
    let solver = Solver::new();
    let pool = [c_e(), c_n(2).unwrap(), c_o()];
    for x in &pool {
        for y in &pool {
            let w = commutativity_witness(x, y, &solver).unwrap();
            assert!(w.holds(), "{} / {}", x.complex.len(), y.complex.len());
        }
    }
}

#[test]
fn connected_sums() {
    let e = cfk_uv_e();
    let o = IotaComplex::trivial(Flavor::FullUV);
    let s = connected_sum_iota(&e, &o).unwrap();
    assert_eq!(s.iota.matrix, e.iota.matrix);
    let ee = connected_sum_iota(&e, &e).unwrap();
    let mut hh = image(&ee, "h*h");
    hh.sort();
    let mut want = vec!["h*h", "h*x", "x*h", "x*x", "s*t"];
    want.sort();
    assert_eq!(hh, want);
    assert_eq!(image(&ee, "z*z"), ["z*z"]);
    let r = check_axioms(&ee, &Solver::new());
    assert!(r.passed(), "{r}");
}

#[test]
fn full_objects_pass() {
    let solver = Solver::new();
    for x in [cfk_uv_e(), IotaComplex::trivial(Flavor::FullUV)] {
        let r = check_axioms(&x, &solver);
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn duals_and_traces() {
    let solver = Solver::new();
    let o = dual_iota(&c_o()).unwrap();
    assert_eq!(o.iota.matrix, c_o().iota.matrix);
    let e = c_e();
    let ed = dual_iota(&e).unwrap();
    assert_eq!(image(&ed, "c^"), ["b^"]);
    assert!(check_horizontal_axioms(&ed, &solver).passed());
    let pair = tensor_iota(&e, &ed, &solver).unwrap();
    let tm = trace_maps(&e, &pair).unwrap();
    assert!(tm.trace.is_chain_map());
    assert!(tm.cotrace.is_chain_map());
    assert_eq!(tm.intertwine(&pair, &solver).unwrap(), (true, true));
}

#[test]
fn a0_of_the_figure_eight() {
    let a = a0_extract(&cfk_uv_e()).unwrap();
    assert_eq!(a.a0.len(), 5);
    assert_eq!(image(&a.a0, "Us"), ["Vt"]);
    let o = a0_extract(&IotaComplex::trivial(Flavor::FullUV)).unwrap();
    assert_eq!(o.a0.len(), 1);
    assert!(check_horizontal_axioms(&o.a0, &Solver::new()).passed());
}

#[test]
fn reversal_inverts_iota() {
    let e = c_e();
    let r = reverse(&e).unwrap();
    let prod = e.iota.then(&r.iota).unwrap();
    assert_eq!(prod, GradedMap::identity(e.hat.clone()));
    assert!(check_horizontal_axioms(&r, &Solver::new()).passed());
}

#[test]
fn truncated_full_iota_matches() {
    let k = cfk_uv_e();
    let full = k.full_iota.clone().unwrap();
    assert_eq!(full.kind, MapKind::Skew);
    let hat = truncate(&k.complex, TruncMode::UV0).unwrap();
    assert_eq!(*k.hat, hat);
    assert_eq!(image(&k, "x"), ["x", "z"]);
}
