//! Box tensor products `A ⊠ D` and `id_A ⊠ f`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{homology_over_f2u, Mono, PMat, Ring};
use crate::complex::grading::{add, sub, GradingEdge};
use crate::complex::{solve_gradings, Convention, Generator, GradedComplex, GradedMap, Grading, MapKind};
use crate::oracle::is_local_at_one;

use super::algebra::{AlgElem, Basis, Rho};
use super::pattern::cfa_nu;
use super::typea::{OpTable, TypeA};
use super::typed::{TypeD, TypeDMorphism};
use super::BorderedError;

/// Label of `x ⊗ y`.
pub fn box_label(x: &str, y: &str) -> String {
    format!("{x}:{y}")
}

/// A box tensor product with the pairs behind each generator.
#[derive(Clone, Debug)]
pub struct BoxTensor {
    pub complex: Arc<GradedComplex>,
    /// Generator `i` is `pairs[i].0 ⊗ pairs[i].1`.
    pub pairs: Vec<(usize, usize)>,
    /// Whether the grading of each generator is pinned by an anchor (the
    /// free generator or an explicit one); others float with their component.
    pub anchored: Vec<bool>,
}

impl BoxTensor {
    pub fn index_of(&self, a: &str, d: &str) -> Result<usize, BorderedError> {
        Ok(self.complex.index_of(&box_label(a, d))?)
    }
}

/// Longest path of `r`-labelled arrows; `None` if such arrows form a cycle.
fn longest_run(d: &TypeD, r: Rho) -> Option<usize> {
    let n = d.len();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|x| d.delta(x).iter().filter(|(_, a)| a.terms().any(|b| b == Basis::Rho(r))).map(|(&y, _)| y).collect())
        .collect();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut depth = vec![0usize; n];
    fn visit(v: usize, succ: &[Vec<usize>], state: &mut [u8], depth: &mut [usize]) -> bool {
        state[v] = 1;
        let mut best = 0;
        for &w in &succ[v] {
            match state[w] {
                1 => return false,
                0 => {
                    if !visit(w, succ, state, depth) {
                        return false;
                    }
                }
                _ => {}
            }
            best = best.max(depth[w] + 1);
        }
        depth[v] = best;
        state[v] = 2;
        true
    }
    for v in 0..n {
        if state[v] == 0 && !visit(v, &succ, &mut state, &mut depth) {
            return None;
        }
    }
    Some(depth.into_iter().max().unwrap_or(0))
}

/// The operations of `a` that can pair with `ds`: explicit ones, plus
/// family members up to the longest run of the repeated label.
fn pairing_table(a: &TypeA, ds: &[&TypeD]) -> Result<OpTable, BorderedError> {
    let mut ops = a.ops().to_vec();
    for fam in a.families() {
        let mut cap = 0;
        for d in ds {
            let run = longest_run(d, fam.repeat).ok_or_else(|| {
                BorderedError::Nontermination(format!(
                    "a cycle of {} arrows feeds an unbounded operation family",
                    fam.repeat
                ))
            })?;
            cap = cap.max(run);
        }
        ops.extend((0..=cap).map(|k| fam.member(k)));
    }
    Ok(OpTable::new(&ops))
}

/// One layer of arrows the walker may follow.
struct Layer<'a> {
    rows: Box<dyn Fn(usize) -> Vec<(usize, AlgElem)> + 'a>,
}

/// Sums `m(x; a₁..a_k) ⊗ y_k` over paths through `layers`: each path takes
/// any number of arrows in a layer and exactly one arrow of each bridge.
/// `stay[l]` are the arrows inside layer `l`, `bridge[l]` lead from layer
/// `l` to `l + 1`; paths end in the last layer.
fn walk(
    table: &OpTable,
    x: usize,
    y: usize,
    stay: &[Layer<'_>],
    bridge: &[Layer<'_>],
    mut emit: impl FnMut(usize, usize, u32),
) {
    let last = stay.len() - 1;
    let mut stack: Vec<(usize, usize, Vec<Rho>)> = vec![(0, y, Vec::new())];
    while let Some((layer, v, seq)) = stack.pop() {
        if layer == last && (!seq.is_empty() || last == 0) {
            for &(p, xo) in table.apply(x, &seq) {
                emit(xo, v, p);
            }
        }
        let mut moves: Vec<(usize, usize, AlgElem)> =
            (stay[layer].rows)(v).into_iter().map(|(w, a)| (layer, w, a)).collect();
        if layer < last {
            moves.extend((bridge[layer].rows)(v).into_iter().map(|(w, a)| (layer + 1, w, a)));
        }
        for (l, w, a) in moves {
            for b in a.terms() {
                match b {
                    // strict unitality: an idempotent input only counts alone
                    Basis::Idem(_) => {
                        if seq.is_empty() && l == last {
                            emit(x, w, 0);
                        }
                    }
                    Basis::Rho(r) => {
                        let mut s = seq.clone();
                        s.push(r);
                        if table.is_prefix(x, &s) {
                            stack.push((l, w, s));
                        }
                    }
                }
            }
        }
    }
}

fn delta_layer(d: &TypeD) -> Layer<'_> {
    Layer { rows: Box::new(move |v| d.delta(v).iter().map(|(&w, &a)| (w, a)).collect()) }
}

fn pairs_of(a: &TypeA, d: &TypeD) -> (Vec<(usize, usize)>, HashMap<(usize, usize), usize>) {
    let mut pairs = Vec::new();
    for x in 0..a.len() {
        for y in 0..d.len() {
            if a.idem(x) == d.idem(y) {
                pairs.push((x, y));
            }
        }
    }
    let index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    (pairs, index)
}

fn differential(a: &TypeA, d: &TypeD, table: &OpTable) -> (Vec<(usize, usize)>, PMat) {
    let (pairs, index) = pairs_of(a, d);
    let mut m = PMat::zeros(pairs.len(), pairs.len());
    let stay = [delta_layer(d)];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        walk(table, x, y, &stay, &[], |xo, yo, p| {
            m.add_mono(i, index[&(xo, yo)], Mono::u(p));
        });
    }
    (pairs, m)
}

/// `A ⊠ D` over `F2[U]`, gradings forced by homogeneity with the free
/// generator at `(0,0)`.
pub fn box_tensor(a: &TypeA, d: &TypeD) -> Result<BoxTensor, BorderedError> {
    box_tensor_anchored(a, d, &[])
}

/// As [`box_tensor`], with extra anchors `(a-label, d-label, grading)`.
pub fn box_tensor_anchored(
    a: &TypeA,
    d: &TypeD,
    anchors: &[(&str, &str, Grading)],
) -> Result<BoxTensor, BorderedError> {
    let table = pairing_table(a, &[d])?;
    let (pairs, m) = differential(a, d, &table);
    let labels: Vec<String> = pairs.iter().map(|&(x, y)| box_label(a.label(x), d.label(y))).collect();
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut fixed = Vec::new();
    for &(x, y, g) in anchors {
        let l = box_label(x, y);
        let i = *index.get(l.as_str()).ok_or(BorderedError::UnknownGenerator(l))?;
        fixed.push((i, g));
    }
    let conv = Convention::Horizontal;
    let edges: Vec<GradingEdge> = m
        .entries()
        .flat_map(|(from, to, p)| {
            p.terms().iter().map(move |&mono| GradingEdge::Differential { from, to, mono }).collect::<Vec<_>>()
        })
        .collect();
    let sol = solve_gradings(pairs.len(), conv, &edges, &fixed)?;
    let mut gradings = sol.gradings.clone();
    let mut comp_anchored = sol.anchored.clone();
    let build = |gradings: &[Grading]| -> Result<GradedComplex, BorderedError> {
        let gens = labels.iter().zip(gradings).map(|(l, &g)| Generator::new(l.clone(), g)).collect();
        Ok(GradedComplex::new(Ring::F2U, conv, gens, m.clone())?)
    };
    let first = build(&gradings)?;
    let h = homology_over_f2u(&first)?;
    if let Some(rep) = h.representative() {
        let mut shift: HashMap<usize, Grading> = HashMap::new();
        for (&j, &mono) in &rep {
            let c = sol.component[j];
            if !comp_anchored[c] {
                let g = add(gradings[j], conv.mono_degree(mono));
                shift.entry(c).or_insert(sub((0, 0), g));
            }
        }
        for (c, s) in shift {
            for (j, g) in gradings.iter_mut().enumerate() {
                if sol.component[j] == c {
                    *g = add(*g, s);
                }
            }
            comp_anchored[c] = true;
        }
    }
    let anchored = sol.component.iter().map(|&c| comp_anchored[c]).collect();
    Ok(BoxTensor { complex: Arc::new(build(&gradings)?), pairs, anchored })
}

/// `id_A ⊠ f` between the two box tensor products.
#[derive(Clone, Debug)]
pub struct BoxMap {
    pub source: BoxTensor,
    pub target: BoxTensor,
    pub map: GradedMap,
}

pub fn box_tensor_morphism(a: &TypeA, f: &TypeDMorphism) -> Result<BoxMap, BorderedError> {
    let source = box_tensor(a, &f.source)?;
    let target = box_tensor(a, &f.target)?;
    let table = pairing_table(a, &[&f.source, &f.target])?;
    let (_, tindex) = pairs_of(a, &f.target);
    let mut m = PMat::zeros(source.pairs.len(), target.pairs.len());
    let stay = [delta_layer(&f.source), delta_layer(&f.target)];
    let bridge = [Layer { rows: Box::new(|v| f.image(v).iter().map(|(&w, &e)| (w, e)).collect()) }];
    for (i, &(x, y)) in source.pairs.iter().enumerate() {
        walk(&table, x, y, &stay, &bridge, |xo, yo, p| {
            m.add_mono(i, tindex[&(xo, yo)], Mono::u(p));
        });
    }
    let map = GradedMap::new(source.complex.clone(), target.complex.clone(), (0, 0), MapKind::Linear, m)?;
    Ok(BoxMap { source, target, map })
}

/// `Hat(f)`: pairing with the `U = 0` truncation of `ν`.
pub fn hat_of_morphism(f: &TypeDMorphism) -> Result<BoxMap, BorderedError> {
    box_tensor_morphism(&cfa_nu().hat(), f)
}

/// `Minus(f)`: pairing with `ν`.
pub fn minus_of_morphism(f: &TypeDMorphism) -> Result<BoxMap, BorderedError> {
    box_tensor_morphism(&cfa_nu(), f)
}

/// Whether `f` induces a nonzero map on the rank-one homology of the
/// pairing with `ν` at `U = 1`.
pub fn is_local_type_d(f: &TypeDMorphism) -> Result<bool, BorderedError> {
    let m = minus_of_morphism(f)?;
    is_local_at_one(&m.map).ok_or_else(|| {
        let rank = |c: &GradedComplex| {
            let d = crate::oracle::at_one(c.differential());
            d.rows() - 2 * d.rank()
        };
        let (rs, rt) = (rank(&m.source.complex), rank(&m.target.complex));
        BorderedError::Rank {
            what: if rs != 1 { "source pairing at U=1" } else { "target pairing at U=1" },
            rank: if rs != 1 { rs } else { rt },
        }
    })
}

/// `cable(n) ⊠ CFD_E` with every `a_i:h1` and `z:w` pinned at `(0,0)`.
pub fn cable_of_figure_eight(n: u32) -> Result<BoxTensor, BorderedError> {
    let a = super::pattern::cfa_cable(n)?;
    let labels: Vec<String> = (1..=2 * n + 1).map(|i| format!("a{i}")).collect();
    let mut anchors: Vec<(&str, &str, Grading)> = labels.iter().map(|l| (l.as_str(), "h1", (0, 0))).collect();
    anchors.push(("z", "w", (0, 0)));
    box_tensor_anchored(&a, &super::pattern::cfd_e(), &anchors)
}
