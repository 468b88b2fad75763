use kfc_core::algebra::Ring;
use kfc_core::complex::{Convention, GradedComplex};
use kfc_core::involutive::{dual_iota, tensor_iota, Flavor, IotaComplex};
use kfc_core::local_order::{
    classify_a, compare, compose, element, figure_eight_witness_map, find_almost_local_map, quotient_map_to_co,
    trichotomy, verify_almost_local, AClass, LocalOrderError, Quotient, Search, Verdict, Verification,
};
use kfc_core::morphism::Solver;
use kfc_core::standard::{c_e, c_e_broken, c_n, c_o, cn_ladder_map};

#[test]
fn unknot_maps_into_cn() {
    let solver = Solver::with_oracle();
    for n in 2..5 {
        let cn = c_n(n).unwrap();
        let m = find_almost_local_map(&c_o(), &cn, &solver).unwrap();
        let found = m.found().expect("C_O ≤ C_n");
        assert_eq!(found.map.describe(), format!("1 -> x{n}\n"));
    }
    assert_eq!(solver.tally().disagreements, 0);
}

#[test]
fn figure_eight_does_not_map_to_unknot() {
    let solver = Solver::with_oracle();
    match find_almost_local_map(&c_e(), &c_o(), &solver).unwrap() {
        Search::Absent { certificate } => assert!(!certificate.is_empty()),
        Search::Found(m) => panic!("unexpected map\n{}", m.map.describe()),
    }
    let r = compare(&c_o(), &c_e(), &solver).unwrap();
    assert_eq!(r.verdict, Verdict::Incomparable);
    assert_eq!(solver.tally().disagreements, 0);
}

#[test]
fn ladder_maps_exist_and_verify() {
    let solver = Solver::new();
    for n in 2..5 {
        let (src, tgt, f) = cn_ladder_map(n).unwrap();
        let v = verify_almost_local(&f, &src, &tgt, &solver).unwrap();
        let m = v.verified().expect("ladder map is almost local");
        assert!(m.homotopy.is_zero());
        assert!(find_almost_local_map(&src, &tgt, &solver).unwrap().is_found());
    }
}

#[test]
fn ordering_of_cn() {
    let solver = Solver::new();
    let r = compare(&c_n(2).unwrap(), &c_n(3).unwrap(), &solver).unwrap();
    assert_eq!(r.verdict, Verdict::Less);
    assert!(matches!(r.backward, Search::Absent { .. }));
    assert_eq!(compare(&c_o(), &c_n(2).unwrap(), &solver).unwrap().verdict, Verdict::Less);
}

#[test]
fn figure_eight_is_two_torsion() {
    let solver = Solver::new();
    let ee = tensor_iota(&c_e(), &c_e(), &solver).unwrap();
    assert_eq!(compare(&ee, &c_o(), &solver).unwrap().verdict, Verdict::Equivalent);
    assert_eq!(classify_a(&ee, &solver).unwrap(), AClass::Zero);
}

#[test]
fn classifier_values() {
    let solver = Solver::new();
    assert_eq!(classify_a(&c_o(), &solver).unwrap(), AClass::Zero);
    assert_eq!(classify_a(&c_e(), &solver).unwrap(), AClass::One);
    let x = tensor_iota(&c_e(), &c_n(2).unwrap(), &solver).unwrap();
    let a = classify_a(&x, &solver).unwrap();
    assert!(a.value().is_none(), "{a}");
}

#[test]
fn axiom_failures_are_rejected() {
    let solver = Solver::new();
    let err = find_almost_local_map(&c_e_broken(), &c_o(), &solver).unwrap_err();
    assert!(matches!(err, LocalOrderError::Axioms { side: "source", .. }));
}

#[test]
fn witness_on_figure_eight_is_the_identity() {
    let solver = Solver::new();
    let e = c_e();
    let a = element(&e.complex, &[("a", "1")]).unwrap();
    let x = element(&e.complex, &[("x", "1")]).unwrap();
    let m = figure_eight_witness_map(&e, &a, &x, &solver).unwrap();
    assert_eq!(m.map.describe(), "a -> a\nb -> b\nc -> c\nd -> d\nx -> x\n");
}

#[test]
fn witness_on_cn() {
    let solver = Solver::new();
    for n in 2..5 {
        let cn = c_n(n).unwrap();
        let a = element(&cn.complex, &[(&format!("a{n}"), "1")]).unwrap();
        let x = element(&cn.complex, &[(&format!("x{n}"), "1")]).unwrap();
        let m = figure_eight_witness_map(&cn, &a, &x, &solver).unwrap();
        let u = if n == 2 { "U".to_string() } else { format!("U^{}", n - 1) };
        assert_eq!(m.map.describe(), format!("a -> a{n}\nb -> {u} b{n}\nx -> x{n}\n"));
    }
}

#[test]
fn witness_on_unknot_fails() {
    let o = c_o();
    let one = element(&o.complex, &[("1", "1")]).unwrap();
    let err = figure_eight_witness_map(&o, &one, &one, &Solver::new()).unwrap_err();
    assert!(matches!(err, LocalOrderError::Hypothesis(_)));
}

#[test]
fn quotient_examples() {
    let solver = Solver::with_oracle();
    match quotient_map_to_co(&c_o(), &solver).unwrap() {
        Quotient::Map(m) => assert_eq!(m.map.describe(), "1 -> 1\n"),
        other => panic!("{other:?}"),
    }
    let e = c_e();
    match quotient_map_to_co(&e, &solver).unwrap() {
        Quotient::InSpan { a_prime, x_prime, certificate } => {
            assert!(!certificate.is_empty());
            figure_eight_witness_map(&e, &a_prime, &x_prime, &solver).unwrap();
        }
        Quotient::Map(m) => panic!("{}", m.map.describe()),
    }
    let c = GradedComplex::builder(Ring::F2U, Convention::Horizontal)
        .generator("1", 0, 0)
        .generator("y", 0, 0)
        .generator("z", 1, 1)
        .arrow("y", "z", "U")
        .build()
        .unwrap();
    let x = IotaComplex::from_labels(c, Flavor::Horizontal, &[("1", "1"), ("y", "y"), ("z", "z")]).unwrap();
    match quotient_map_to_co(&x, &solver).unwrap() {
        Quotient::Map(m) => assert_eq!(m.map.describe(), "1 -> 1\n"),
        other => panic!("{other:?}"),
    }
    assert_eq!(solver.tally().disagreements, 0, "{:?}", solver.tally().notes);
}

#[test]
fn quotient_agrees_with_search() {
    let solver = Solver::new();
    let pool = [c_o(), c_e(), c_n(2).unwrap(), tensor_iota(&c_e(), &c_n(2).unwrap(), &solver).unwrap()];
    for x in &pool {
        let q = quotient_map_to_co(x, &solver).unwrap();
        let s = find_almost_local_map(x, &c_o(), &solver).unwrap();
        assert_eq!(matches!(q, Quotient::Map(_)), s.is_found());
    }
}

#[test]
fn composites_stay_almost_local() {
    let solver = Solver::new();
    let chain = [c_o(), c_n(2).unwrap(), c_n(3).unwrap(), c_n(4).unwrap()];
    for w in chain.windows(3) {
        let f = find_almost_local_map(&w[0], &w[1], &solver).unwrap();
        let g = find_almost_local_map(&w[1], &w[2], &solver).unwrap();
        let h = compose(f.found().unwrap(), g.found().unwrap()).unwrap();
        assert!(matches!(verify_almost_local(&h, &w[0], &w[2], &solver).unwrap(), Verification::Verified(_)));
    }
}

#[test]
fn trichotomy_on_a_pool() {
    let solver = Solver::new();
    let e = c_e();
    let c2 = c_n(2).unwrap();
    let pool = [c_o(), e.clone(), c2.clone(), dual_iota(&c2).unwrap(), tensor_iota(&e, &c2, &solver).unwrap()];
    for x in &pool {
        for y in &pool {
            let t = trichotomy(x, y, &solver).unwrap();
            assert!(t.exactly_one(), "{t:?}");
        }
    }
}
