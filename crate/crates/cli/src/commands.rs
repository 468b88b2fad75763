//! One method per verb. Each returns the full report text or a [`Failure`].

use std::fmt::Write as _;

use serde_json::{json, Value};

use kfc_core::bordered::{
    barcode, box_tensor, cfa_cable, cfd_e, cfd_from_cfk, cfd_unknot, check_type_a, check_type_a_against, check_type_d,
    contains_summand, declared_length, print_type_a, print_type_d, BorderedError, TypeA,
};
use kfc_core::complex::io::{print_complex, print_map};
use kfc_core::complex::ops::truncate;
use kfc_core::complex::{reduce, validate, GradedComplex, TruncMode};
use kfc_core::involutive::{check_axioms, print_iota, reduce_iota, AxiomReport, CheckStatus, Flavor, IotaComplex};
use kfc_core::local_order::{classify_a, compare, AClass, LocalOrderError, Search};
use kfc_core::morphism::Solver;
use kfc_core::standard::{c_e, c_n, c_o, cable_summand, make, StandardError, StandardName, StandardObject};

use crate::input::{load, Input, InputError};

pub const PARSE: u8 = 1;
pub const INVARIANT: u8 = 2;
pub const PRECONDITION: u8 = 3;

/// A nonzero exit: the code, whatever report was produced, and a message.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub output: String,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, output: String::new(), message: message.into() }
    }

    fn with_output(mut self, output: String) -> Self {
        self.output = output;
        self
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        let code = match &e {
            InputError::Standard(s) => standard_code(s),
            _ => PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<StandardError> for Failure {
    fn from(e: StandardError) -> Self {
        Failure::new(standard_code(&e), e.to_string())
    }
}

impl From<LocalOrderError> for Failure {
    fn from(e: LocalOrderError) -> Self {
        let code = match e {
            LocalOrderError::Axioms { .. } | LocalOrderError::Carrier(..) | LocalOrderError::Hypothesis(_) => {
                PRECONDITION
            }
            _ => INVARIANT,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<BorderedError> for Failure {
    fn from(e: BorderedError) -> Self {
        let code = match e {
            BorderedError::Parse { .. } => PARSE,
            BorderedError::Tau(_)
            | BorderedError::NotReduced(_)
            | BorderedError::Rank { .. }
            | BorderedError::Nontermination(_)
            | BorderedError::Shape(_) => PRECONDITION,
            _ => INVARIANT,
        };
        Failure::new(code, e.to_string())
    }
}

fn standard_code(e: &StandardError) -> u8 {
    match e {
        StandardError::UnknownName(_) | StandardError::Parameter { .. } => PARSE,
        _ => INVARIANT,
    }
}

fn invariant(e: impl std::fmt::Display) -> Failure {
    Failure::new(INVARIANT, e.to_string())
}

pub struct Context {
    n: Option<u32>,
    json: bool,
    solver: Solver,
}

type Outcome = Result<String, Failure>;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn describe_complex(c: &GradedComplex) -> String {
    format!("{} generators over {} ({})", c.len(), c.ring(), c.convention())
}

fn status_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Noted(true) => "note-holds",
        CheckStatus::Noted(false) => "note-fails",
    }
}

fn axioms_json(r: &AxiomReport) -> Value {
    let checks: Vec<Value> =
        r.checks.iter().map(|c| json!({"name": c.name, "status": status_name(c.status), "detail": c.detail})).collect();
    json!({"flavor": r.flavor.to_string(), "passed": r.passed(), "checks": checks})
}

fn search_json(s: &Search, src: &str, tgt: &str) -> Value {
    match s {
        Search::Found(m) => json!({
            "found": true,
            "map": print_map(&m.map, src, tgt),
            "homotopy": print_map(&m.homotopy, src, tgt),
        }),
        Search::Absent { certificate } => json!({"found": false, "certificate": certificate}),
    }
}

fn search_text(out: &mut String, s: &Search, src: &str, tgt: &str) {
    match s {
        Search::Found(m) => {
            writeln!(out, "{src} -> {tgt}: found").unwrap();
            writeln!(out, "# map").unwrap();
            out.push_str(&print_map(&m.map, src, tgt));
            writeln!(out, "# homotopy on the truncation").unwrap();
            out.push_str(&print_map(&m.homotopy, src, tgt));
        }
        Search::Absent { certificate } => {
            writeln!(out, "{src} -> {tgt}: absent").unwrap();
            writeln!(out, "certificate: {}", certificate.join(" + ")).unwrap();
        }
    }
}

/// Relations of a type-A module: in full, or along the arrow paths of both
/// standard complements when the full check fails and no family is declared.
struct TypeACheck {
    full: kfc_core::bordered::AReport,
    along: Option<[kfc_core::bordered::AReport; 2]>,
}

impl TypeACheck {
    fn run(a: &TypeA) -> Self {
        let full = check_type_a(a, declared_length(a));
        let along = (!full.is_valid() && a.families().is_empty()).then(|| {
            let len = declared_length(a);
            [check_type_a_against(a, &cfd_unknot(), len), check_type_a_against(a, &cfd_e(), len)]
        });
        TypeACheck { full, along }
    }

    fn is_valid(&self) -> bool {
        match &self.along {
            None => self.full.is_valid(),
            Some(r) => r.iter().all(|r| r.is_valid()),
        }
    }
}

impl Context {
    pub fn new(n: Option<u32>, json: bool, oracle: bool) -> Self {
        let solver = if oracle { Solver::with_oracle() } else { Solver::new() };
        Context { n, json, solver }
    }

    fn load(&self, path: &str) -> Result<Input, Failure> {
        Ok(load(path, self.n)?)
    }

    /// A horizontal ι-complex, truncating a full one at `V = 0`.
    fn horizontal(&self, path: &str) -> Result<(IotaComplex, bool), Failure> {
        match self.load(path)? {
            Input::Iota(x) if x.flavor == Flavor::FullUV => {
                Ok((x.horizontal_truncation().map_err(|e| Failure::new(PRECONDITION, e.to_string()))?, true))
            }
            Input::Iota(x) => Ok((x, false)),
            other => Err(Failure::new(PRECONDITION, format!("{path}: expected an ι-complex, got a {}", other.kind()))),
        }
    }

    fn oracle_json(&self) -> Value {
        let t = self.solver.tally();
        json!({"enabled": self.solver.oracle_enabled(), "queries": t.queries, "checked": t.checked, "disagreements": t.disagreements})
    }

    fn oracle_text(&self, out: &mut String) {
        if self.solver.oracle_enabled() {
            let t = self.solver.tally();
            writeln!(
                out,
                "# oracle: {} queries, {} cross-checked, {} disagreements",
                t.queries, t.checked, t.disagreements
            )
            .unwrap();
        }
    }

    /// Fails with exit 2 if the oracle ever disagreed.
    fn finish(&self, out: String) -> Outcome {
        let t = self.solver.tally();
        if t.disagreements > 0 {
            return Err(
                Failure::new(INVARIANT, format!("oracle disagreements: {}", t.notes.join("; "))).with_output(out)
            );
        }
        Ok(out)
    }

    pub fn check(&self, path: &str) -> Outcome {
        let input = self.load(path)?;
        let (ok, text, doc) = match &input {
            Input::Complex(c) => {
                let r = validate(c);
                let text = format!("complex: {}\n{r}\n", describe_complex(c));
                let issues: Vec<String> = r.issues.iter().map(|i| i.to_string()).collect();
                (r.is_valid(), text, json!({"complex": describe_complex(c), "issues": issues}))
            }
            Input::Iota(x) => {
                let r = validate(&x.complex);
                if !r.is_valid() {
                    let issues: Vec<String> = r.issues.iter().map(|i| i.to_string()).collect();
                    (false, format!("complex: {}\n{r}\n", describe_complex(&x.complex)), json!({"issues": issues}))
                } else {
                    let a = check_axioms(x, &self.solver);
                    let text = format!("ι-complex: {}\n{a}\n", describe_complex(&x.complex));
                    (a.passed(), text, json!({"complex": describe_complex(&x.complex), "axioms": axioms_json(&a)}))
                }
            }
            Input::TypeD(d) => {
                let r = check_type_d(d);
                let issues: Vec<String> = r.issues.iter().map(|i| i.to_string()).collect();
                (r.is_valid(), format!("type-D: {} generators\nδ² = 0: {r}\n", d.len()), json!({"issues": issues}))
            }
            Input::TypeA(a) => {
                let c = TypeACheck::run(a);
                let mut text =
                    format!("type-A: {} generators\nA∞ relations: {}\n", a.len(), c.full.to_string().trim_end());
                let mut doc = json!({"full": {"valid": c.full.is_valid(), "report": c.full.to_string()}});
                if let Some([u, e]) = &c.along {
                    writeln!(text, "along CFD_unknot paths: {}", u.to_string().trim_end()).unwrap();
                    writeln!(text, "along CFD_E paths: {}", e.to_string().trim_end()).unwrap();
                    doc["along"] = json!({"CFD_unknot": u.is_valid(), "CFD_E": e.is_valid()});
                }
                (c.is_valid(), text, doc)
            }
        };
        let out = if self.json {
            pretty(&json!({"command": "check", "input": path, "kind": input.kind(), "valid": ok, "report": doc}))
        } else {
            text
        };
        if ok {
            self.finish(out)
        } else {
            Err(Failure::new(INVARIANT, format!("{path}: invariant check failed")).with_output(out))
        }
    }

    pub fn reduce(&self, path: &str) -> Outcome {
        let (text, before, after) = match self.load(path)? {
            Input::Complex(c) => {
                let r = reduce(&c).map_err(invariant)?;
                (print_complex(&r.reduced), c.len(), r.reduced.len())
            }
            Input::Iota(x) => {
                let y = reduce_iota(&x).map_err(invariant)?;
                (print_iota(&y), x.len(), y.len())
            }
            other => return Err(Failure::new(PRECONDITION, format!("{path}: cannot reduce a {}", other.kind()))),
        };
        Ok(if self.json {
            pretty(&json!({"command": "reduce", "input": path, "generators": before, "reduced": after, "file": text}))
        } else {
            format!("# reduced from {before} to {after} generators\n{text}")
        })
    }

    pub fn standard(&self, name: &str) -> Outcome {
        let parsed = StandardName::parse_with(name, self.n)?;
        let (kind, text) = match make(parsed)? {
            StandardObject::Iota(x) => ("iota-complex", print_iota(&x)),
            StandardObject::TypeD(d) => ("type-D", print_type_d(&d)),
            StandardObject::TypeA(a) => ("type-A", print_type_a(&a)),
        };
        Ok(if self.json {
            pretty(&json!({"command": "standard", "name": parsed.to_string(), "kind": kind, "file": text}))
        } else {
            text
        })
    }

    pub fn compare(&self, xp: &str, yp: &str) -> Outcome {
        let (x, xt) = self.horizontal(xp)?;
        let (y, yt) = self.horizontal(yp)?;
        let r = compare(&x, &y, &self.solver)?;
        let out = if self.json {
            pretty(&json!({
                "command": "compare",
                "x": xp,
                "y": yp,
                "truncated": [xt, yt],
                "verdict": r.verdict.to_string(),
                "forward": search_json(&r.forward, xp, yp),
                "backward": search_json(&r.backward, yp, xp),
                "oracle": self.oracle_json(),
            }))
        } else {
            let mut s = String::new();
            for (p, t) in [(xp, xt), (yp, yt)] {
                if t {
                    writeln!(s, "# {p}: using the V = 0 truncation").unwrap();
                }
            }
            writeln!(s, "verdict: {}", r.verdict).unwrap();
            search_text(&mut s, &r.forward, xp, yp);
            search_text(&mut s, &r.backward, yp, xp);
            self.oracle_text(&mut s);
            s
        };
        self.finish(out)
    }

    pub fn classify(&self, path: &str) -> Outcome {
        let (x, truncated) = self.horizontal(path)?;
        let class = classify_a(&x, &self.solver)?;
        let top = self.n.unwrap_or(3).max(2);
        let mut refs: Vec<(String, IotaComplex)> = vec![("C_O".into(), c_o()), ("C_E".into(), c_e())];
        for k in 2..=top {
            refs.push((format!("C_n({k})"), c_n(k)?));
        }
        let mut table = Vec::new();
        for (name, y) in &refs {
            table.push((name.clone(), compare(&x, y, &self.solver)?.verdict));
        }
        let out = if self.json {
            let rows: Vec<Value> = table.iter().map(|(n, v)| json!({"against": n, "verdict": v.to_string()})).collect();
            let (value, evidence) = match class {
                AClass::Evidence { vs_o, vs_e } => (
                    Value::Null,
                    json!({"vs_C_O": vs_o.to_string(), "vs_C_E": vs_e.to_string(), "infinite_order": class.certifies_infinite_order()}),
                ),
                _ => (json!(class.value()), Value::Null),
            };
            pretty(&json!({
                "command": "classify",
                "input": path,
                "truncated": truncated,
                "A": value,
                "evidence": evidence,
                "table": rows,
                "oracle": self.oracle_json(),
            }))
        } else {
            let mut s = String::new();
            if truncated {
                writeln!(s, "# {path}: using the V = 0 truncation").unwrap();
            }
            match class {
                AClass::Evidence { .. } => writeln!(s, "A: {class}").unwrap(),
                _ => writeln!(s, "A = {class}").unwrap(),
            }
            writeln!(s, "comparability ({path} versus):").unwrap();
            for (name, v) in &table {
                writeln!(s, "  {name:<8} {v}").unwrap();
            }
            self.oracle_text(&mut s);
            s
        };
        self.finish(out)
    }

    pub fn pair(&self, ap: &str, dp: &str) -> Outcome {
        let a = match self.load(ap)? {
            Input::TypeA(a) => a,
            other => {
                return Err(Failure::new(
                    PRECONDITION,
                    format!("{ap}: expected a type-A module, got a {}", other.kind()),
                ))
            }
        };
        let d = match self.load(dp)? {
            Input::TypeD(d) => d,
            other => {
                return Err(Failure::new(
                    PRECONDITION,
                    format!("{dp}: expected a type-D module, got a {}", other.kind()),
                ))
            }
        };
        let t = box_tensor(&a, &d)?;
        let floating: Vec<&str> =
            (0..t.complex.len()).filter(|&i| !t.anchored[i]).map(|i| t.complex.label(i)).collect();
        let bars = barcode(&t.complex, Some(&t.anchored)).map_err(invariant)?;
        let bars: Vec<String> = bars.iter().map(|b| b.to_string()).collect();
        let text = print_complex(&t.complex);
        Ok(if self.json {
            pretty(&json!({"command": "pair", "a": ap, "d": dp, "barcode": bars, "floating": floating, "file": text}))
        } else {
            let mut s = String::new();
            writeln!(s, "# barcode: {}", bars.join(" ")).unwrap();
            if !floating.is_empty() {
                writeln!(s, "# gradings known up to shift: {}", floating.join(" ")).unwrap();
            }
            s.push_str(&text);
            s
        })
    }

    pub fn cable(&self, path: &str) -> Outcome {
        let k = self.n.ok_or_else(|| Failure::new(PARSE, "cable needs --n <k>"))?;
        let input = self.load(path)?;
        let c = input.complex().ok_or_else(|| {
            Failure::new(PRECONDITION, format!("{path}: expected a knot complex, got a {}", input.kind()))
        })?;
        let d = cfd_from_cfk(c)?;
        let a = cfa_cable(k)?;
        let t = box_tensor(&a, &d)?;
        let r = reduce(&t.complex).map_err(invariant)?;
        let bars = barcode(&t.complex, Some(&t.anchored)).map_err(invariant)?;
        let bars: Vec<String> = bars.iter().map(|b| b.to_string()).collect();
        let mut summands = Vec::new();
        for m in 1..=k + 1 {
            let s = truncate(&cable_summand(m)?.complex, TruncMode::V0).map_err(invariant)?;
            let found = contains_summand(&t.complex, Some(&t.anchored), &s).map_err(invariant)?.is_some();
            summands.push((m, found));
        }
        let floating: Vec<&str> = (0..r.reduced.len())
            .map(|i| r.reduced.label(i))
            .filter(|l| t.complex.index_of(l).map(|j| !t.anchored[j]).unwrap_or(false))
            .collect();
        let text = print_complex(&r.reduced);
        Ok(if self.json {
            let rows: Vec<Value> = summands
                .iter()
                .map(|&(m, f)| json!({"summand": format!("CableSummand({m})"), "contained": f}))
                .collect();
            pretty(&json!({
                "command": "cable",
                "input": path,
                "n": k,
                "generators": t.complex.len(),
                "reduced": r.reduced.len(),
                "barcode": bars,
                "summands": rows,
                "floating": floating,
                "file": text,
            }))
        } else {
            let mut s = String::new();
            writeln!(s, "# cable({k}) pairing: {} generators, reduced to {}", t.complex.len(), r.reduced.len())
                .unwrap();
            writeln!(s, "# barcode: {}", bars.join(" ")).unwrap();
            for (m, f) in &summands {
                writeln!(s, "# V = 0 truncation of CableSummand({m}): {}", if *f { "contained" } else { "absent" })
                    .unwrap();
            }
            if !floating.is_empty() {
                writeln!(s, "# gradings known up to shift: {}", floating.join(" ")).unwrap();
            }
            s.push_str(&text);
            s
        })
    }

    pub fn report(&self) -> Outcome {
        let mut names = vec![StandardName::CO, StandardName::CE, StandardName::CfkUvE];
        names.extend((1..=4).map(StandardName::Cn));
        names.extend((1..=3).map(StandardName::CableSummand));
        names.extend([StandardName::CfdUnknot, StandardName::CfdE, StandardName::CfaNu]);
        names.extend((1..=2).map(StandardName::CfaCable));
        let mut objects = Vec::new();
        for name in names {
            let (kind, valid) = match make(name)? {
                StandardObject::Iota(x) => {
                    ("iota-complex", validate(&x.complex).is_valid() && check_axioms(&x, &self.solver).passed())
                }
                StandardObject::TypeD(d) => ("type-D", check_type_d(&d).is_valid()),
                StandardObject::TypeA(a) => ("type-A", TypeACheck::run(&a).is_valid()),
            };
            objects.push((name.to_string(), kind, valid));
        }
        let pool: Vec<(String, IotaComplex)> =
            vec![("C_O".into(), c_o()), ("C_E".into(), c_e()), ("C_n(2)".into(), c_n(2)?), ("C_n(3)".into(), c_n(3)?)];
        let mut comparisons = Vec::new();
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                let v = compare(&pool[i].1, &pool[j].1, &self.solver)?.verdict;
                comparisons.push((pool[i].0.clone(), pool[j].0.clone(), v));
            }
        }
        let mut classes = Vec::new();
        for (name, x) in &pool {
            classes.push((name.clone(), classify_a(x, &self.solver)?));
        }
        let out = if self.json {
            pretty(&json!({
                "command": "report",
                "objects": objects.iter().map(|(n, k, v)| json!({"name": n, "kind": k, "valid": v})).collect::<Vec<_>>(),
                "comparisons": comparisons.iter().map(|(x, y, v)| json!({"x": x, "y": y, "verdict": v.to_string()})).collect::<Vec<_>>(),
                "classify": classes.iter().map(|(n, c)| json!({"name": n, "A": c.to_string()})).collect::<Vec<_>>(),
                "oracle": self.oracle_json(),
            }))
        } else {
            let mut s = String::from("standard objects:\n");
            for (n, k, v) in &objects {
                writeln!(s, "  {n:<16} {k:<13} {}", if *v { "valid" } else { "INVALID" }).unwrap();
            }
            s.push_str("comparisons:\n");
            for (x, y, v) in &comparisons {
                writeln!(s, "  {x} {v} {y}").unwrap();
            }
            s.push_str("classify:\n");
            for (n, c) in &classes {
                writeln!(s, "  A({n}) = {c}").unwrap();
            }
            self.oracle_text(&mut s);
            s
        };
        self.finish(out)
    }
}
