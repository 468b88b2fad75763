//! Type-D structures over the torus algebra and their morphisms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::algebra::{AlgElem, Idem};
use super::BorderedError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BGen {
    pub label: String,
    pub idem: Idem,
}

type Row = BTreeMap<usize, AlgElem>;

fn add_entry(row: &mut Row, to: usize, a: AlgElem) {
    if a.is_zero() {
        return;
    }
    let slot = row.entry(to).or_default();
    slot.add_assign(a);
    if slot.is_zero() {
        row.remove(&to);
    }
}

/// `δ¹(x) = Σ a_{xy} ⊗ y`, stored by source.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeD {
    gens: Vec<BGen>,
    index: HashMap<String, usize>,
    delta: Vec<Row>,
}

pub(crate) fn index_gens(gens: &[BGen]) -> Result<HashMap<String, usize>, BorderedError> {
    let mut index = HashMap::new();
    for (i, g) in gens.iter().enumerate() {
        if index.insert(g.label.clone(), i).is_some() {
            return Err(BorderedError::DuplicateGenerator(g.label.clone()));
        }
    }
    Ok(index)
}

impl TypeD {
    pub fn new(gens: Vec<BGen>, arrows: &[(usize, usize, AlgElem)]) -> Result<Self, BorderedError> {
        let index = index_gens(&gens)?;
        let mut delta = vec![Row::new(); gens.len()];
        for &(x, y, a) in arrows {
            if x >= gens.len() || y >= gens.len() {
                return Err(BorderedError::Shape(format!("arrow {x}->{y} out of range")));
            }
            add_entry(&mut delta[x], y, a);
        }
        Ok(TypeD { gens, index, delta })
    }

    pub fn builder() -> TypeDBuilder {
        TypeDBuilder::default()
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

    pub fn delta(&self, x: usize) -> &Row {
        &self.delta[x]
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, AlgElem)> + '_ {
        self.delta.iter().enumerate().flat_map(|(x, row)| row.iter().map(move |(&y, &a)| (x, y, a)))
    }

    pub fn arrow_count(&self) -> usize {
        self.delta.iter().map(|r| r.values().map(|a| a.terms().count()).sum::<usize>()).sum()
    }

    /// `M ⊕ N`, labels of `N` suffixed when they clash.
    pub fn direct_sum(&self, other: &TypeD) -> Result<TypeD, BorderedError> {
        let mut gens = self.gens.clone();
        for g in &other.gens {
            let mut label = g.label.clone();
            while self.index.contains_key(&label) {
                label.push('\'');
            }
            gens.push(BGen { label, idem: g.idem });
        }
        let off = self.len();
        let arrows: Vec<(usize, usize, AlgElem)> =
            self.arrows().chain(other.arrows().map(|(x, y, a)| (x + off, y + off, a))).collect();
        TypeD::new(gens, &arrows)
    }

    /// Generators reordered: new generator `i` is old `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<TypeD, BorderedError> {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let gens = perm.iter().map(|&p| self.gens[p].clone()).collect();
        let arrows: Vec<_> = self.arrows().map(|(x, y, a)| (inv[x], inv[y], a)).collect();
        TypeD::new(gens, &arrows)
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (x, y, a) in self.arrows() {
            s.push_str(&format!("{} -> {} {}\n", self.label(x), a, self.label(y)));
        }
        s
    }
}

#[derive(Default)]
pub struct TypeDBuilder {
    gens: Vec<BGen>,
    arrows: Vec<(String, String, String)>,
}

impl TypeDBuilder {
    pub fn generator(mut self, label: &str, idem: Idem) -> Self {
        self.gens.push(BGen { label: label.to_string(), idem });
        self
    }

    pub fn arrow(mut self, from: &str, to: &str, word: &str) -> Self {
        self.arrows.push((from.to_string(), to.to_string(), word.to_string()));
        self
    }

    pub fn build(self) -> Result<TypeD, BorderedError> {
        let index = index_gens(&self.gens)?;
        let look = |l: &str| index.get(l).copied().ok_or_else(|| BorderedError::UnknownGenerator(l.to_string()));
        let mut arrows = Vec::new();
        for (f, t, w) in &self.arrows {
            arrows.push((look(f)?, look(t)?, w.parse::<AlgElem>()?));
        }
        TypeD::new(self.gens, &arrows)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DIssue {
    /// A term whose endpoints disagree with the generators' idempotents.
    Idempotent { from: String, to: String, elem: String },
    /// A nonzero coefficient of `(μ₂ ⊗ 1)(1 ⊗ δ¹)δ¹`.
    Square { from: String, to: String, value: AlgElem },
}

impl fmt::Display for DIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DIssue::Idempotent { from, to, elem } => write!(f, "entry {from}->{to}: {elem} does not match idempotents"),
            DIssue::Square { from, to, value } => write!(f, "structure equation fails at ({from},{to}): {value}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DReport {
    pub issues: Vec<DIssue>,
}

impl DReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for DReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        for i in &self.issues {
            writeln!(f, "{i}")?;
        }
        Ok(())
    }
}

fn idem_issues(src: &[BGen], tgt: &[BGen], entries: impl Iterator<Item = (usize, usize, AlgElem)>) -> Vec<DIssue> {
    let mut out = Vec::new();
    for (x, y, a) in entries {
        for b in a.terms() {
            if b.start() != src[x].idem || b.end() != tgt[y].idem {
                out.push(DIssue::Idempotent {
                    from: src[x].label.clone(),
                    to: tgt[y].label.clone(),
                    elem: b.to_string(),
                });
            }
        }
    }
    out
}

/// Product of two sparse algebra-valued matrices, first `a`, then `b`.
fn mul_rows(a: &[Row], b: &[Row]) -> Vec<Row> {
    a.iter()
        .map(|row| {
            let mut out = Row::new();
            for (&y, &p) in row {
                for (&z, &q) in &b[y] {
                    add_entry(&mut out, z, p.mul(q));
                }
            }
            out
        })
        .collect()
}

fn add_rows(a: &[Row], b: &[Row]) -> Vec<Row> {
    a.iter()
        .zip(b)
        .map(|(r, s)| {
            let mut out = r.clone();
            for (&y, &q) in s {
                add_entry(&mut out, y, q);
            }
            out
        })
        .collect()
}

/// Lists idempotent mismatches and structure-equation residuals.
pub fn check_type_d(m: &TypeD) -> DReport {
    let mut issues = idem_issues(&m.gens, &m.gens, m.arrows());
    let sq = mul_rows(&m.delta, &m.delta);
    for (x, row) in sq.iter().enumerate() {
        for (&z, &v) in row {
            issues.push(DIssue::Square { from: m.label(x).to_string(), to: m.label(z).to_string(), value: v });
        }
    }
    DReport { issues }
}

/// `f(x) = Σ a_{xy} ⊗ y` between two type-D structures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeDMorphism {
    pub source: Arc<TypeD>,
    pub target: Arc<TypeD>,
    entries: Vec<Row>,
}

impl TypeDMorphism {
    pub fn new(
        source: Arc<TypeD>,
        target: Arc<TypeD>,
        entries: &[(usize, usize, AlgElem)],
    ) -> Result<Self, BorderedError> {
        let mut rows = vec![Row::new(); source.len()];
        for &(x, y, a) in entries {
            if x >= source.len() || y >= target.len() {
                return Err(BorderedError::Shape(format!("entry {x}->{y} out of range")));
            }
            add_entry(&mut rows[x], y, a);
        }
        let f = TypeDMorphism { source, target, entries: rows };
        if let Some(issue) = idem_issues(&f.source.gens, &f.target.gens, f.entries()).into_iter().next() {
            return Err(BorderedError::Shape(issue.to_string()));
        }
        Ok(f)
    }

    pub fn from_labels(
        source: Arc<TypeD>,
        target: Arc<TypeD>,
        entries: &[(&str, &str, &str)],
    ) -> Result<Self, BorderedError> {
        let mut out = Vec::new();
        for &(x, y, w) in entries {
            out.push((source.index_of(x)?, target.index_of(y)?, w.parse::<AlgElem>()?));
        }
        TypeDMorphism::new(source, target, &out)
    }

    pub fn zero(source: Arc<TypeD>, target: Arc<TypeD>) -> Self {
        let n = source.len();
        TypeDMorphism { source, target, entries: vec![Row::new(); n] }
    }

    pub fn identity(m: Arc<TypeD>) -> Self {
        let entries = (0..m.len()).map(|i| Row::from([(i, AlgElem::idem(m.idem(i)))])).collect();
        TypeDMorphism { source: m.clone(), target: m, entries }
    }

    /// The inclusion of `target`'s generators `embed[i]` as the image of
    /// source generator `i`.
    pub fn inclusion(source: Arc<TypeD>, target: Arc<TypeD>, embed: &[usize]) -> Result<Self, BorderedError> {
        let entries: Vec<_> = embed.iter().enumerate().map(|(i, &j)| (i, j, AlgElem::idem(source.idem(i)))).collect();
        TypeDMorphism::new(source, target, &entries)
    }

    pub fn image(&self, x: usize) -> &Row {
        &self.entries[x]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, AlgElem)> + '_ {
        self.entries.iter().enumerate().flat_map(|(x, row)| row.iter().map(move |(&y, &a)| (x, y, a)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.is_empty())
    }

    fn same_ends(&self, other: &TypeDMorphism) -> bool {
        self.source == other.source && self.target == other.target
    }

    pub fn add(&self, other: &TypeDMorphism) -> Result<TypeDMorphism, BorderedError> {
        if !self.same_ends(other) {
            return Err(BorderedError::Shape("sum of morphisms with different ends".into()));
        }
        Ok(TypeDMorphism { entries: add_rows(&self.entries, &other.entries), ..self.clone() })
    }

    /// First `self`, then `g`.
    pub fn then(&self, g: &TypeDMorphism) -> Result<TypeDMorphism, BorderedError> {
        if self.target != g.source {
            return Err(BorderedError::Shape("composition of non-composable morphisms".into()));
        }
        Ok(TypeDMorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            entries: mul_rows(&self.entries, &g.entries),
        })
    }

    /// `δ_N ∘ f + f ∘ δ_M`, zero exactly for morphisms of type-D structures.
    /// For a homotopy `h` this is the null-homotopic morphism `∂h`.
    pub fn boundary(&self) -> TypeDMorphism {
        let left = mul_rows(&self.source.delta, &self.entries);
        let right = mul_rows(&self.entries, &self.target.delta);
        TypeDMorphism { entries: add_rows(&left, &right), ..self.clone() }
    }

    pub fn is_chain_map(&self) -> bool {
        self.boundary().is_zero()
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (x, y, a) in self.entries() {
            s.push_str(&format!("{} -> {} {}\n", self.source.label(x), a, self.target.label(y)));
        }
        s
    }
}

/// An isomorphism of arrow graphs: `perm[i]` is the generator of `n`
/// matched with generator `i` of `m`.
pub fn find_isomorphism(m: &TypeD, n: &TypeD) -> Option<Vec<usize>> {
    if m.len() != n.len() || m.arrow_count() != n.arrow_count() {
        return None;
    }
    let signature = |d: &TypeD, x: usize| {
        let mut out: Vec<AlgElem> = d.delta(x).values().copied().collect();
        let mut inc: Vec<AlgElem> = d.arrows().filter(|&(_, y, _)| y == x).map(|(_, _, a)| a).collect();
        out.sort();
        inc.sort();
        (d.idem(x), out, inc)
    };
    let sm: Vec<_> = (0..m.len()).map(|x| signature(m, x)).collect();
    let sn: Vec<_> = (0..n.len()).map(|x| signature(n, x)).collect();
    let mut perm = vec![usize::MAX; m.len()];
    let mut used = vec![false; n.len()];
    fn consistent(m: &TypeD, n: &TypeD, perm: &[usize], x: usize) -> bool {
        // every arrow between x and an assigned generator must be carried over
        let px = perm[x];
        for (y, &py) in perm.iter().enumerate() {
            if py != usize::MAX && m.delta(y).get(&x).copied() != n.delta(py).get(&px).copied() {
                return false;
            }
            if py != usize::MAX && m.delta(x).get(&y).copied() != n.delta(px).get(&py).copied() {
                return false;
            }
        }
        true
    }
    fn go(
        i: usize,
        m: &TypeD,
        n: &TypeD,
        sm: &[(Idem, Vec<AlgElem>, Vec<AlgElem>)],
        sn: &[(Idem, Vec<AlgElem>, Vec<AlgElem>)],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == m.len() {
            return true;
        }
        for j in 0..n.len() {
            if used[j] || sm[i] != sn[j] {
                continue;
            }
            perm[i] = j;
            used[j] = true;
            if consistent(m, n, perm, i) && go(i + 1, m, n, sm, sn, perm, used) {
                return true;
            }
            perm[i] = usize::MAX;
            used[j] = false;
        }
        false
    }
    go(0, m, n, &sm, &sn, &mut perm, &mut used).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_chain() -> TypeD {
        TypeD::builder()
            .generator("x", Idem::Zero)
            .generator("k", Idem::One)
            .generator("y", Idem::Zero)
            .arrow("x", "k", "rho3")
            .arrow("k", "y", "rho2")
            .build()
            .unwrap()
    }

    #[test]
    fn horizontal_chain_is_valid() {
        assert!(check_type_d(&two_chain()).is_valid());
    }

    #[test]
    fn nonzero_square_is_reported() {
        let d = TypeD::builder()
            .generator("x", Idem::Zero)
            .generator("k", Idem::One)
            .generator("y", Idem::Zero)
            .arrow("x", "k", "rho1")
            .arrow("k", "y", "rho2")
            .build()
            .unwrap();
        let r = check_type_d(&d);
        assert_eq!(
            r.issues,
            [DIssue::Square { from: "x".into(), to: "y".into(), value: AlgElem::rho(super::super::Rho::R12) }]
        );
    }

    #[test]
    fn idempotent_mismatch_is_reported() {
        let d = TypeD::builder().generator("x", Idem::Zero).arrow("x", "x", "rho23").build().unwrap();
        assert!(matches!(check_type_d(&d).issues[0], DIssue::Idempotent { .. }));
    }

    #[test]
    fn identity_is_a_chain_map() {
        let d = Arc::new(two_chain());
        let id = TypeDMorphism::identity(d.clone());
        assert!(id.is_chain_map());
        assert_eq!(id.then(&id).unwrap(), id);
    }

    #[test]
    fn isomorphism_finds_relabeling() {
        let d = two_chain();
        let p = d.permuted(&[2, 0, 1]).unwrap();
        let perm = find_isomorphism(&d, &p).unwrap();
        for x in 0..d.len() {
            assert_eq!(d.label(x), p.label(perm[x]));
        }
    }
}
