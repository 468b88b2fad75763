//! Type-A modules over the torus algebra with `F2[U]`-weighted operations.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use super::algebra::{Idem, Rho};
use super::typed::{index_gens, BGen, TypeD};
use super::BorderedError;

/// `m(source; seq) ∋ U^power · target`; an empty `seq` is a term of `m₁`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AOp {
    pub source: usize,
    pub seq: Vec<Rho>,
    pub power: u32,
    pub target: usize,
}

/// `m(source; prefix, repeat^k, suffix) = U^{base_power + k} · target` for
/// every `k ≥ 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AFamily {
    pub source: usize,
    pub prefix: Vec<Rho>,
    pub repeat: Rho,
    pub suffix: Vec<Rho>,
    pub base_power: u32,
    pub target: usize,
}

impl AFamily {
    pub fn member(&self, k: usize) -> AOp {
        let mut seq = self.prefix.clone();
        seq.extend(std::iter::repeat_n(self.repeat, k));
        seq.extend(&self.suffix);
        AOp { source: self.source, seq, power: self.base_power + k as u32, target: self.target }
    }

    fn fixed_len(&self) -> usize {
        self.prefix.len() + self.suffix.len()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeA {
    gens: Vec<BGen>,
    index: HashMap<String, usize>,
    ops: Vec<AOp>,
    families: Vec<AFamily>,
}

fn check_slots(gens: &[BGen], source: usize, seq: &[Rho], target: usize) -> Result<(), BorderedError> {
    let mut at = gens[source].idem;
    for r in seq {
        if r.start() != at {
            return Err(BorderedError::Shape(format!(
                "operation on `{}` feeds {r} at idempotent {at}",
                gens[source].label
            )));
        }
        at = r.end();
    }
    if at != gens[target].idem {
        return Err(BorderedError::Shape(format!(
            "operation from `{}` lands on `{}` in the wrong idempotent",
            gens[source].label, gens[target].label
        )));
    }
    Ok(())
}

impl TypeA {
    pub fn new(gens: Vec<BGen>, ops: Vec<AOp>, families: Vec<AFamily>) -> Result<Self, BorderedError> {
        let index = index_gens(&gens)?;
        let n = gens.len();
        for op in &ops {
            if op.source >= n || op.target >= n {
                return Err(BorderedError::Shape("operation out of range".into()));
            }
            check_slots(&gens, op.source, &op.seq, op.target)?;
        }
        for fam in &families {
            if fam.source >= n || fam.target >= n {
                return Err(BorderedError::Shape("operation family out of range".into()));
            }
            if fam.repeat.start() != fam.repeat.end() {
                return Err(BorderedError::Shape(format!("{} cannot repeat", fam.repeat)));
            }
            check_slots(&gens, fam.source, &fam.member(0).seq, fam.target)?;
            check_slots(&gens, fam.source, &fam.member(1).seq, fam.target)?;
        }
        Ok(TypeA { gens, index, ops, families })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[BGen] {
        &self.gens
    }

    pub fn label(&self, i: usize) -> &str {
        &self.gens[i].label
    }

    pub fn idem(&self, i: usize) -> Idem {
        self.gens[i].idem
    }

    pub fn index_of(&self, label: &str) -> Result<usize, BorderedError> {
        self.index.get(label).copied().ok_or_else(|| BorderedError::UnknownGenerator(label.to_string()))
    }

    pub fn ops(&self) -> &[AOp] {
        &self.ops
    }

    pub fn families(&self) -> &[AFamily] {
        &self.families
    }

    /// Longest explicit operation, ignoring families.
    pub fn max_explicit_len(&self) -> usize {
        self.ops.iter().map(|o| o.seq.len()).max().unwrap_or(0)
    }

    /// Explicit operations plus family members with at most `max_len` inputs.
    pub fn materialize(&self, max_len: usize) -> Vec<AOp> {
        let mut out: Vec<AOp> = self.ops.iter().filter(|o| o.seq.len() <= max_len).cloned().collect();
        for fam in &self.families {
            for k in 0..=max_len.saturating_sub(fam.fixed_len()) {
                if fam.fixed_len() + k <= max_len {
                    out.push(fam.member(k));
                }
            }
        }
        out
    }

    /// The `U = 0` truncation: operations with a positive `U`-power vanish.
    pub fn hat(&self) -> TypeA {
        let mut ops: Vec<AOp> = self.ops.iter().filter(|o| o.power == 0).cloned().collect();
        ops.extend(self.families.iter().filter(|f| f.base_power == 0).map(|f| f.member(0)));
        TypeA { ops, families: Vec::new(), ..self.clone() }
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for op in &self.ops {
            s.push_str(&format!("{}\n", OpDisplay { a: self, op }));
        }
        for f in &self.families {
            let mut words: Vec<String> = f.prefix.iter().map(|r| r.to_string()).collect();
            words.push(format!("{}*", f.repeat));
            words.extend(f.suffix.iter().map(|r| r.to_string()));
            s.push_str(&format!(
                "m({}; {}) = U^{}+k {}\n",
                self.label(f.source),
                words.join(", "),
                f.base_power,
                self.label(f.target)
            ));
        }
        s
    }
}

struct OpDisplay<'a> {
    a: &'a TypeA,
    op: &'a AOp,
}

impl fmt::Display for OpDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.op.seq.iter().map(|r| r.to_string()).collect();
        let sep = if words.is_empty() { "" } else { "; " };
        write!(
            f,
            "m({}{sep}{}) = U^{} {}",
            self.a.label(self.op.source),
            words.join(", "),
            self.op.power,
            self.a.label(self.op.target)
        )
    }
}

/// Operations indexed by `(source, seq)`, with all proper prefixes.
#[derive(Clone, Debug, Default)]
pub struct OpTable {
    outputs: HashMap<(usize, Vec<Rho>), Vec<(u32, usize)>>,
    prefixes: HashSet<(usize, Vec<Rho>)>,
}

impl OpTable {
    pub fn new(ops: &[AOp]) -> Self {
        let mut t = OpTable::default();
        for op in ops {
            t.outputs.entry((op.source, op.seq.clone())).or_default().push((op.power, op.target));
            for k in 0..=op.seq.len() {
                t.prefixes.insert((op.source, op.seq[..k].to_vec()));
            }
        }
        t
    }

    pub fn apply(&self, x: usize, seq: &[Rho]) -> &[(u32, usize)] {
        self.outputs.get(&(x, seq.to_vec())).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_prefix(&self, x: usize, seq: &[Rho]) -> bool {
        self.prefixes.contains(&(x, seq.to_vec()))
    }
}

/// Formal sum `Σ U^k y` with `F2` coefficients.
pub type USum = BTreeMap<(usize, u32), ()>;

fn toggle(s: &mut USum, key: (usize, u32)) {
    if s.remove(&key).is_none() {
        s.insert(key, ());
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AIssue {
    pub generator: String,
    pub seq: Vec<Rho>,
    /// Nonzero terms `U^k · y` of the relation, as `(label, k)`.
    pub residual: Vec<(String, u32)>,
}

impl fmt::Display for AIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq: Vec<String> = self.seq.iter().map(|r| r.to_string()).collect();
        let res: Vec<String> =
            self.residual.iter().map(|(l, k)| if *k == 0 { l.clone() } else { format!("U^{k} {l}") }).collect();
        write!(f, "A-infinity relation fails at ({}; {}): {}", self.generator, seq.join(", "), res.join(" + "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AReport {
    pub max_len: usize,
    pub sequences_checked: usize,
    pub issues: Vec<AIssue>,
}

impl AReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for AReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid ({} sequences up to length {})", self.sequences_checked, self.max_len);
        }
        for i in &self.issues {
            writeln!(f, "{i}")?;
        }
        Ok(())
    }
}

/// The left side of the `A∞` relation at `(x; seq)`.
fn relation(table: &OpTable, x: usize, seq: &[Rho]) -> USum {
    let mut out = USum::new();
    for i in 0..=seq.len() {
        for &(p, y) in table.apply(x, &seq[..i]) {
            for &(q, z) in table.apply(y, &seq[i..]) {
                toggle(&mut out, (z, p + q));
            }
        }
    }
    for j in 0..seq.len().saturating_sub(1) {
        if let Some(r) = seq[j].mul(seq[j + 1]) {
            let mut merged = seq[..j].to_vec();
            merged.push(r);
            merged.extend(&seq[j + 2..]);
            for &(p, y) in table.apply(x, &merged) {
                toggle(&mut out, (y, p));
            }
        }
    }
    out
}

fn report(a: &TypeA, table: &OpTable, max_len: usize, seqs: impl IntoIterator<Item = (usize, Vec<Rho>)>) -> AReport {
    let mut issues = Vec::new();
    let mut checked = 0;
    for (x, seq) in seqs {
        checked += 1;
        let r = relation(table, x, &seq);
        if !r.is_empty() {
            issues.push(AIssue {
                generator: a.label(x).to_string(),
                seq,
                residual: r.keys().map(|&(y, k)| (a.label(y).to_string(), k)).collect(),
            });
        }
    }
    AReport { max_len, sequences_checked: checked, issues }
}

/// Checks the `A∞` relations on every idempotent-composable sequence with
/// at most `max_len` inputs.
pub fn check_type_a(a: &TypeA, max_len: usize) -> AReport {
    let table = OpTable::new(&a.materialize(max_len));
    let mut seqs = Vec::new();
    for x in 0..a.len() {
        let mut frontier: Vec<Vec<Rho>> = vec![Vec::new()];
        for _ in 0..=max_len {
            let mut next = Vec::new();
            for s in frontier {
                let at = s.last().map_or(a.idem(x), |r| r.end());
                for r in Rho::ALL.into_iter().filter(|r| r.start() == at) {
                    let mut t = s.clone();
                    t.push(r);
                    next.push(t);
                }
                seqs.push((x, s));
            }
            frontier = next.into_iter().filter(|s| s.len() <= max_len).collect();
        }
    }
    report(a, &table, max_len, seqs)
}

/// The default length for [`check_type_a`]: twice the longest explicit
/// operation, and at least the family lengths up to one repeat.
pub fn declared_length(a: &TypeA) -> usize {
    let fam = a.families.iter().map(|f| f.fixed_len() + 1).max().unwrap_or(0);
    (2 * a.max_explicit_len()).max(2 * fam).max(2)
}

/// Checks the `A∞` relations only on sequences read along arrow paths of
/// `d` (the ones a box tensor product with `d` can see).
pub fn check_type_a_against(a: &TypeA, d: &TypeD, max_len: usize) -> AReport {
    let table = OpTable::new(&a.materialize(max_len));
    let mut seen: HashSet<(usize, Vec<Rho>)> = HashSet::new();
    for x in 0..a.len() {
        let mut visited: HashSet<(usize, Vec<Rho>)> = HashSet::new();
        let mut stack: Vec<(usize, Vec<Rho>)> =
            (0..d.len()).filter(|&y| d.idem(y) == a.idem(x)).map(|y| (y, Vec::new())).collect();
        while let Some((v, seq)) = stack.pop() {
            if seq.len() == max_len {
                continue;
            }
            for (&w, &elem) in d.delta(v) {
                for b in elem.terms() {
                    if let super::Basis::Rho(r) = b {
                        let mut s = seq.clone();
                        s.push(r);
                        seen.insert((x, s.clone()));
                        if visited.insert((w, s.clone())) {
                            stack.push((w, s));
                        }
                    }
                }
            }
        }
    }
    let mut seqs: Vec<(usize, Vec<Rho>)> = seen.into_iter().collect();
    seqs.sort();
    report(a, &table, max_len, seqs)
}
