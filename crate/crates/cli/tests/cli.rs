use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use kfc_core::bordered::contains_summand;
use kfc_core::complex::io::parse_complex;
use kfc_core::complex::ops::truncate;
use kfc_core::complex::TruncMode;
use kfc_core::standard::cable_summand;

fn kfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kfc")).args(args).output().expect("kfc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kfc-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const NAMES: [&str; 17] = [
    "C_O",
    "C_E",
    "C_n(2)",
    "C_n(3)",
    "C_n(5)",
    "CFK_UV_E",
    "CableSummand(1)",
    "CableSummand(2)",
    "CableSummand(3)",
    "CFD_unknot",
    "CFD_E",
    "CFA_nu",
    "CFA_cable(1)",
    "CFA_cable(2)",
    "CFA_cable(3)",
    "C_4",
    "C_n",
];

#[test]
fn standard_files_check_clean() {
    for name in NAMES {
        let o = kfc(&["--n", "2", "standard", name]);
        assert_eq!(code(&o), 0, "{name}");
        let p = scratch(&format!("std-{}.txt", name.replace(['(', ')'], "_")), &stdout(&o));
        let c = kfc(&["check", p.to_str().unwrap()]);
        assert_eq!(code(&c), 0, "{name}: {}", stdout(&c));
    }
}

#[test]
fn c1_is_not_an_iota_complex() {
    let o = kfc(&["standard", "C_n(1)"]);
    assert_eq!(code(&o), 0);
    let p = scratch("c1.txt", &stdout(&o));
    let c = kfc(&["check", p.to_str().unwrap()]);
    assert_eq!(code(&c), 2);
    assert!(stdout(&c).contains("[FAIL]"));
    assert_eq!(code(&kfc(&["compare", "std:C_n(1)", "std:C_E"])), 3);
}

#[test]
fn o_and_e_are_incomparable() {
    let o = kfc(&["--oracle", "compare", "std:C_O", "std:C_E"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("verdict: incomparable\n"), "{s}");
    assert_eq!(s.matches("certificate: ").count(), 2);
    assert!(s.contains(", 0 disagreements"), "{s}");
}

#[test]
fn compare_prints_a_witness() {
    let s = stdout(&kfc(&["compare", "std:C_O", "std:C_2"]));
    assert!(s.starts_with("verdict: less\n"), "{s}");
    assert!(s.contains("std:C_O -> std:C_2: found\n# map\nsource: std:C_O\ntarget: std:C_2\n"));
    assert!(s.contains("map 1 x2 1\n"));
}

#[test]
fn json_compare_is_structured() {
    let o = kfc(&["--json", "compare", "std:C_E", "std:C_E"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "equivalent");
    assert_eq!(v["forward"]["found"], true);
    assert!(v["forward"]["map"].as_str().unwrap().contains("kind: linear"));
}

#[test]
fn classify_figure_eight() {
    let s = stdout(&kfc(&["classify", "std:C_E"]));
    assert!(s.starts_with("A = 1\n"), "{s}");
    assert!(s.contains("C_O      incomparable"));
    assert!(stdout(&kfc(&["classify", "std:C_O"])).starts_with("A = 0\n"));
    let s = stdout(&kfc(&["classify", "std:C_3"]));
    assert!(s.starts_with("A: nontorsion evidence: greater than C_O, greater than C_E"), "{s}");
}

#[test]
fn classify_truncates_full_complexes() {
    let s = stdout(&kfc(&["classify", "std:CFK_UV_E"]));
    assert!(s.contains("using the V = 0 truncation"));
    assert!(s.contains("A = 1\n"), "{s}");
}

#[test]
fn cable_of_figure_eight() {
    let o = kfc(&["cable", "--n", "1", "std:CFK_UV_E"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("# V = 0 truncation of CableSummand(1): contained"), "{s}");
    // Independent route: the emitted reduced complex itself splits off the summand.
    let c = parse_complex(&s).unwrap();
    let want = truncate(&cable_summand(1).unwrap().complex, TruncMode::V0).unwrap();
    let floating: Vec<&str> = s
        .lines()
        .find_map(|l| l.strip_prefix("# gradings known up to shift: "))
        .map(|l| l.split(' ').collect())
        .unwrap_or_default();
    let anchored: Vec<bool> = (0..c.len()).map(|i| !floating.contains(&c.label(i))).collect();
    assert!(contains_summand(&c, Some(&anchored), &want).unwrap().is_some());
    assert!(!c.has_unit_entry());
}

#[test]
fn cable_of_the_unknot_is_the_unknot() {
    let p = scratch("unknot.txt", "ring: F2UV\nconvention: uv\ngen 1 0 0\n");
    let s = stdout(&kfc(&["cable", "--n", "2", p.to_str().unwrap()]));
    assert!(s.contains("reduced to 1\n"), "{s}");
}

#[test]
fn pair_runs_files() {
    let a = scratch("nu.txt", &stdout(&kfc(&["standard", "CFA_nu"])));
    let d = scratch("e.txt", &stdout(&kfc(&["standard", "CFD_E"])));
    let o = kfc(&["pair", a.to_str().unwrap(), d.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let c = parse_complex(&stdout(&o)).unwrap();
    assert_eq!(c.len(), 5);
    assert_eq!(code(&kfc(&["pair", d.to_str().unwrap(), a.to_str().unwrap()])), 3);
}

#[test]
fn reduce_keeps_the_involution() {
    let o = kfc(&["reduce", "std:CableSummand(1)"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("# reduced from 7 to 5 generators\n"), "{s}");
    let p = scratch("reduced.txt", &s);
    assert_eq!(code(&kfc(&["check", p.to_str().unwrap()])), 0);
    assert!(stdout(&kfc(&["compare", p.to_str().unwrap(), "std:C_E"])).contains("verdict: equivalent"));
}

#[test]
fn exit_codes() {
    let garbage = scratch("garbage.txt", "ring: F2U\nconvention: horizontal\ngen a 0\n");
    assert_eq!(code(&kfc(&["check", garbage.to_str().unwrap()])), 1);
    assert_eq!(code(&kfc(&["check", "/nonexistent/file"])), 1);
    assert_eq!(code(&kfc(&["standard", "C_Z"])), 1);
    assert_eq!(code(&kfc(&["frobnicate"])), 1);
    assert_eq!(code(&kfc(&["cable", "std:CFK_UV_E"])), 1);

    let bad =
        scratch("d2.txt", "ring: F2\nconvention: horizontal\ngen a 0 0\ngen b -1 -1\ngen c -2 -2\nd a b 1\nd b c 1\n");
    let o = kfc(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(!stdout(&o).is_empty());

    let trefoil =
        scratch("trefoil.txt", "ring: F2UV\nconvention: uv\ngen a 2 0\ngen b 1 1\ngen c 0 2\nd b a U\nd b c V\n");
    assert_eq!(code(&kfc(&["cable", "--n", "1", trefoil.to_str().unwrap()])), 3);
    assert_eq!(code(&kfc(&["classify", "std:CFD_E"])), 3);
    assert_eq!(code(&kfc(&["reduce", "std:CFA_nu"])), 3);
    assert_eq!(code(&kfc(&["--help"])), 0);
}

#[test]
fn output_is_deterministic() {
    for args in
        [&["--json", "--oracle", "report"][..], &["cable", "--n", "2", "std:CFK_UV_E"], &["classify", "std:C_2"]]
    {
        let a = kfc(args);
        let b = kfc(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn report_summarizes_the_library() {
    let o = kfc(&["--json", "--oracle", "report"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let objects = v["objects"].as_array().unwrap();
    let invalid: Vec<&str> =
        objects.iter().filter(|o| o["valid"] == false).map(|o| o["name"].as_str().unwrap()).collect();
    assert_eq!(invalid, ["C_n(1)"]);
    assert_eq!(v["oracle"]["disagreements"], 0);
    assert!(v["oracle"]["checked"].as_u64().unwrap() > 0);
    let e = v["classify"].as_array().unwrap().iter().find(|c| c["name"] == "C_E").unwrap();
    assert_eq!(e["A"], "1");
}
