//! Line-oriented text format for complexes and maps.
//!
//! ```text
//! ring: F2U
//! convention: horizontal
//! gen a 0 0
//! gen b 1 1
//! d a b U
//! ```
//!
//! Extra blocks (`iota`, `fiota`, `psi`) are collected verbatim for the
//! involutive layer. `#` starts a comment.

use std::fmt::Write as _;

use crate::algebra::{Mono, PMat, Ring};

use super::{ComplexError, Convention, Generator, GradedComplex, MapKind};

/// One entry `from -> mono·to` in an auxiliary block.
pub type Entry = (usize, usize, Mono);

/// A parsed complex file and any involution blocks it carries.
#[derive(Clone, Debug)]
pub struct ComplexDocument {
    pub complex: GradedComplex,
    pub flavor: Option<String>,
    pub iota: Vec<Entry>,
    pub full_iota: Vec<Entry>,
    pub psi: Vec<Entry>,
}

fn default_convention(ring: Ring) -> Convention {
    match ring {
        Ring::R | Ring::F2UV => Convention::UV,
        Ring::F2 | Ring::F2U => Convention::Horizontal,
    }
}

fn err(line: usize, msg: impl Into<String>) -> ComplexError {
    ComplexError::Parse { line, msg: msg.into() }
}

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Writes the header, generators and differential.
pub fn print_complex(c: &GradedComplex) -> String {
    let mut s = String::new();
    writeln!(s, "ring: {}", c.ring()).unwrap();
    writeln!(s, "convention: {}", c.convention()).unwrap();
    for g in c.generators() {
        writeln!(s, "gen {} {} {}", g.label, g.grading.0, g.grading.1).unwrap();
    }
    for (x, y, p) in c.differential().entries() {
        for m in p.terms() {
            writeln!(s, "d {} {} {}", c.label(x), c.label(y), m).unwrap();
        }
    }
    s
}

/// Appends an auxiliary block (`iota`, `fiota`, `psi`).
pub fn print_block(c: &GradedComplex, keyword: &str, m: &PMat, with_mono: bool) -> String {
    let mut s = String::new();
    for (x, y, p) in m.entries() {
        for mono in p.terms() {
            if with_mono {
                writeln!(s, "{keyword} {} {} {}", c.label(x), c.label(y), mono).unwrap();
            } else {
                writeln!(s, "{keyword} {} {}", c.label(x), c.label(y)).unwrap();
            }
        }
    }
    s
}

pub fn parse_complex(text: &str) -> Result<GradedComplex, ComplexError> {
    Ok(parse_document(text)?.complex)
}

pub fn parse_document(text: &str) -> Result<ComplexDocument, ComplexError> {
    let mut ring: Option<Ring> = None;
    let mut convention: Option<Convention> = None;
    let mut flavor = None;
    let mut gens: Vec<Generator> = Vec::new();
    let mut raw: Vec<(usize, String, Vec<String>)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = strip(line);
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once(':').filter(|(k, _)| !k.trim().contains(char::is_whitespace)) {
            let value = value.trim();
            match key.trim() {
                "ring" => ring = Some(value.parse().map_err(|e: crate::algebra::AlgebraError| err(ln, e.to_string()))?),
                "convention" => {
                    convention = Some(value.parse().map_err(|_| err(ln, format!("unknown convention `{value}`")))?)
                }
                "flavor" => flavor = Some(value.to_string()),
                other => return Err(err(ln, format!("unknown header `{other}`"))),
            }
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "gen" => {
                if words.len() != 4 {
                    return Err(err(ln, "expected `gen <label> <g1> <g2>`"));
                }
                let a = words[2].parse().map_err(|_| err(ln, format!("bad grading `{}`", words[2])))?;
                let b = words[3].parse().map_err(|_| err(ln, format!("bad grading `{}`", words[3])))?;
                gens.push(Generator::new(words[1], (a, b)));
            }
            "d" | "iota" | "fiota" | "psi" => {
                raw.push((ln, words[0].to_string(), words[1..].iter().map(|w| w.to_string()).collect()));
            }
            other => return Err(err(ln, format!("unknown directive `{other}`"))),
        }
    }
    let ring = ring.ok_or_else(|| err(0, "missing `ring:` header"))?;
    let convention = convention.unwrap_or_else(|| default_convention(ring));
    let n = gens.len();
    let shell = GradedComplex::new(ring, convention, gens, PMat::zeros(n, n))?;
    let mut d = PMat::zeros(n, n);
    let mut doc_iota = Vec::new();
    let mut doc_full = Vec::new();
    let mut doc_psi = Vec::new();
    for (ln, kw, args) in raw {
        let want = if kw == "iota" { 2 } else { 3 };
        if args.len() != want && !(kw == "iota" && args.len() == 3) {
            return Err(err(ln, format!("`{kw}` expects {want} arguments")));
        }
        let from = shell.index_of(&args[0]).map_err(|e| err(ln, e.to_string()))?;
        let to = shell.index_of(&args[1]).map_err(|e| err(ln, e.to_string()))?;
        let mono: Mono = match args.get(2) {
            Some(s) => s.parse().map_err(|e: crate::algebra::AlgebraError| err(ln, e.to_string()))?,
            None => Mono::ONE,
        };
        match kw.as_str() {
            "d" => {
                if !ring.admits(mono) {
                    return Err(err(ln, format!("{mono} is not a monomial of {ring}")));
                }
                d.add_mono(from, to, mono);
            }
            "iota" => doc_iota.push((from, to, mono)),
            "fiota" => doc_full.push((from, to, mono)),
            _ => doc_psi.push((from, to, mono)),
        }
    }
    Ok(ComplexDocument {
        complex: shell.with_differential(d)?,
        flavor,
        iota: doc_iota,
        full_iota: doc_full,
        psi: doc_psi,
    })
}

/// A map file: references to its ends plus the entries, by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDocument {
    pub source: String,
    pub target: String,
    pub shift: (i32, i32),
    pub kind: MapKind,
    pub entries: Vec<(String, String, Mono)>,
}

pub fn parse_map_document(text: &str) -> Result<MapDocument, ComplexError> {
    let mut source = None;
    let mut target = None;
    let mut shift = (0, 0);
    let mut kind = MapKind::Linear;
    let mut entries = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = strip(line);
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once(':').filter(|(k, _)| !k.trim().contains(char::is_whitespace)) {
            let value = value.trim();
            match key.trim() {
                "source" => source = Some(value.to_string()),
                "target" => target = Some(value.to_string()),
                "shift" => {
                    let parts: Vec<i32> = value
                        .split_whitespace()
                        .map(str::parse)
                        .collect::<Result<_, _>>()
                        .map_err(|_| err(ln, "bad shift"))?;
                    if parts.len() != 2 {
                        return Err(err(ln, "shift needs two integers"));
                    }
                    shift = (parts[0], parts[1]);
                }
                "kind" => {
                    kind = match value {
                        "linear" => MapKind::Linear,
                        "skew" => MapKind::Skew,
                        other => return Err(err(ln, format!("unknown map kind `{other}`"))),
                    }
                }
                other => return Err(err(ln, format!("unknown header `{other}`"))),
            }
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        if words[0] != "map" || !(words.len() == 3 || words.len() == 4) {
            return Err(err(ln, "expected `map <from> <to> [monomial]`"));
        }
        let mono = match words.get(3) {
            Some(s) => s.parse().map_err(|e: crate::algebra::AlgebraError| err(ln, e.to_string()))?,
            None => Mono::ONE,
        };
        entries.push((words[1].to_string(), words[2].to_string(), mono));
    }
    Ok(MapDocument {
        source: source.ok_or_else(|| err(0, "missing `source:`"))?,
        target: target.ok_or_else(|| err(0, "missing `target:`"))?,
        shift,
        kind,
        entries,
    })
}

/// Writes a map in the map file format.
pub fn print_map(f: &super::GradedMap, source_ref: &str, target_ref: &str) -> String {
    let mut s = String::new();
    writeln!(s, "source: {source_ref}").unwrap();
    writeln!(s, "target: {target_ref}").unwrap();
    writeln!(s, "shift: {} {}", f.shift.0, f.shift.1).unwrap();
    writeln!(s, "kind: {}", if f.kind.is_skew() { "skew" } else { "linear" }).unwrap();
    for (x, y, p) in f.matrix.entries() {
        for m in p.terms() {
            writeln!(s, "map {} {} {}", f.source.label(x), f.target.label(y), m).unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "ring: F2U\n# figure eight\ngen a 0 0\ngen b 1 1\ngen x 0 0\nd a b U\niota a a\niota a x\n";

    #[test]
    fn roundtrip() {
        let doc = parse_document(SAMPLE).unwrap();
        assert_eq!(doc.iota.len(), 2);
        let printed = print_complex(&doc.complex);
        let again = parse_complex(&printed).unwrap();
        assert_eq!(again, doc.complex);
        assert_eq!(print_complex(&again), printed);
    }

    #[test]
    fn errors_carry_lines() {
        let bad = "ring: F2U\ngen a 0 0\nd a z U\n";
        assert!(matches!(parse_complex(bad), Err(ComplexError::Parse { line: 3, .. })));
        assert!(parse_complex("gen a 0 0\n").is_err());
        assert!(parse_complex("ring: F2U\nd\n").is_err());
        assert!(parse_complex("ring: R\ngen a 0 0\ngen b 0 0\nd a b UV\n").is_err());
    }

    #[test]
    fn map_document() {
        let m = parse_map_document("source: std:C_O\ntarget: std:C_E\nshift: 0 1\nkind: skew\nmap 1 x\n").unwrap();
        assert_eq!(m.shift, (0, 1));
        assert_eq!(m.kind, MapKind::Skew);
        assert_eq!(m.entries, vec![("1".into(), "x".into(), Mono::ONE)]);
    }

    #[test]
    fn labels_may_contain_colons() {
        let text = "ring: F2U\ngen s:e0 0 0\ngen s:f0 1 1\nd s:e0 s:f0 U\n";
        let c = parse_complex(text).unwrap();
        assert_eq!(c.label(1), "s:f0");
        assert_eq!(parse_complex(&print_complex(&c)).unwrap(), c);
    }
}
