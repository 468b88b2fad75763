//! Text format for bordered modules.
//!
//! ```text
//! idem <gen> 0|1
//! darrow <from> <to> <rho-word>
//! aop <gen> <rho-word...> U^j <gen>
//! ```
//! In an `aop` line one word may carry a trailing `*`: it is then repeated
//! `k ≥ 0` times and the power grows by `k`.

use std::collections::HashMap;

use super::algebra::{AlgElem, Idem, Rho};
use super::typea::{AFamily, AOp, TypeA};
use super::typed::{BGen, TypeD};
use super::BorderedError;

#[derive(Clone, Debug)]
pub enum BorderedDocument {
    D(TypeD),
    A(TypeA),
}

fn parse_power(tok: &str) -> Option<u32> {
    match tok {
        "1" => Some(0),
        "U" => Some(1),
        _ => tok.strip_prefix("U^")?.parse().ok(),
    }
}

pub fn parse_bordered(text: &str) -> Result<BorderedDocument, BorderedError> {
    let err = |line: usize, msg: String| BorderedError::Parse { line, msg };
    let mut gens: Vec<BGen> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut darrows: Vec<(usize, String, String, String)> = Vec::new();
    let mut aops: Vec<(usize, Vec<String>)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "idem" => {
                let [_, g, i] = toks[..] else { return Err(err(line, "expected `idem <gen> 0|1`".into())) };
                let idem: Idem = i.parse().map_err(|_| err(line, format!("bad idempotent `{i}`")))?;
                if index.insert(g.to_string(), gens.len()).is_some() {
                    return Err(err(line, format!("duplicate generator `{g}`")));
                }
                gens.push(BGen { label: g.to_string(), idem });
            }
            "darrow" => {
                let [_, f, t, w] = toks[..] else {
                    return Err(err(line, "expected `darrow <from> <to> <rho-word>`".into()));
                };
                darrows.push((line, f.into(), t.into(), w.into()));
            }
            "aop" => {
                if toks.len() < 4 {
                    return Err(err(line, "expected `aop <gen> <rho-word...> U^j <gen>`".into()));
                }
                aops.push((line, toks[1..].iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let look =
        |line: usize, l: &str| index.get(l).copied().ok_or_else(|| err(line, format!("unknown generator `{l}`")));
    if !darrows.is_empty() && !aops.is_empty() {
        return Err(err(0, "a file holds either darrow or aop lines, not both".into()));
    }
    if aops.is_empty() {
        let mut arrows = Vec::new();
        for (line, f, t, w) in &darrows {
            let a: AlgElem = w.parse().map_err(|e: BorderedError| err(*line, e.to_string()))?;
            arrows.push((look(*line, f)?, look(*line, t)?, a));
        }
        return Ok(BorderedDocument::D(TypeD::new(gens, &arrows)?));
    }
    let mut ops = Vec::new();
    let mut families = Vec::new();
    for (line, toks) in &aops {
        let line = *line;
        let source = look(line, &toks[0])?;
        let target = look(line, &toks[toks.len() - 1])?;
        let power = parse_power(&toks[toks.len() - 2])
            .ok_or_else(|| err(line, format!("bad power `{}`", toks[toks.len() - 2])))?;
        let mut prefix = Vec::new();
        let mut suffix = Vec::new();
        let mut repeat: Option<Rho> = None;
        for w in &toks[1..toks.len() - 2] {
            let (word, starred) = match w.strip_suffix('*') {
                Some(s) => (s, true),
                None => (w.as_str(), false),
            };
            let r: Rho = word.parse().map_err(|e: BorderedError| err(line, e.to_string()))?;
            if starred {
                if repeat.is_some() {
                    return Err(err(line, "at most one repeated word per operation".into()));
                }
                repeat = Some(r);
            } else if repeat.is_some() {
                suffix.push(r);
            } else {
                prefix.push(r);
            }
        }
        match repeat {
            Some(repeat) => families.push(AFamily { source, prefix, repeat, suffix, base_power: power, target }),
            None => ops.push(AOp { source, seq: prefix, power, target }),
        }
    }
    Ok(BorderedDocument::A(TypeA::new(gens, ops, families)?))
}

pub fn parse_type_d(text: &str) -> Result<TypeD, BorderedError> {
    match parse_bordered(text)? {
        BorderedDocument::D(d) => Ok(d),
        BorderedDocument::A(_) => Err(BorderedError::Parse { line: 0, msg: "expected a type-D module".into() }),
    }
}

pub fn parse_type_a(text: &str) -> Result<TypeA, BorderedError> {
    match parse_bordered(text)? {
        BorderedDocument::A(a) => Ok(a),
        BorderedDocument::D(d) if d.arrow_count() == 0 => {
            Ok(TypeA::new(d.generators().to_vec(), Vec::new(), Vec::new())?)
        }
        BorderedDocument::D(_) => Err(BorderedError::Parse { line: 0, msg: "expected a type-A module".into() }),
    }
}

fn print_gens(gens: &[BGen]) -> String {
    gens.iter().map(|g| format!("idem {} {}\n", g.label, g.idem)).collect()
}

pub fn print_type_d(d: &TypeD) -> String {
    let mut s = print_gens(d.generators());
    for (x, y, a) in d.arrows() {
        for b in a.terms() {
            s.push_str(&format!("darrow {} {} {}\n", d.label(x), d.label(y), b));
        }
    }
    s
}

pub fn print_type_a(a: &TypeA) -> String {
    let mut s = print_gens(a.generators());
    let words = |seq: &[Rho]| seq.iter().map(|r| format!(" {r}")).collect::<String>();
    for op in a.ops() {
        s.push_str(&format!("aop {}{} U^{} {}\n", a.label(op.source), words(&op.seq), op.power, a.label(op.target)));
    }
    for f in a.families() {
        s.push_str(&format!(
            "aop {}{} {}*{} U^{} {}\n",
            a.label(f.source),
            words(&f.prefix),
            f.repeat,
            words(&f.suffix),
            f.base_power,
            a.label(f.target)
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bordered::pattern::{cfa_cable, cfa_nu, cfd_e};

    #[test]
    fn round_trips() {
        let d = cfd_e();
        assert_eq!(parse_type_d(&print_type_d(&d)).unwrap(), d);
        for a in [cfa_nu(), cfa_cable(2).unwrap()] {
            assert_eq!(parse_type_a(&print_type_a(&a)).unwrap(), a);
        }
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_type_d("idem x 0\ndarrow x y rho1\n").unwrap_err();
        assert_eq!(e, BorderedError::Parse { line: 2, msg: "unknown generator `y`".into() });
        assert!(parse_type_a("idem s 0\naop s rho3 U^x s\n").is_err());
    }
}
