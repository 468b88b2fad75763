//! Maps whose entries are F2-linear forms in unknowns.
//!
//! A [`SymMap`] stores, for each position `(x, y)` and monomial `m`, the
//! linear form giving the coefficient of `m·y` in the image of `x`.

use std::collections::BTreeMap;

use crate::algebra::{BitVec, Mono, PMat, PolyUV, Ring};

pub type Var = u32;

/// `c + Σ vars` over F2; `vars` sorted and distinct.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Lin {
    pub vars: Vec<Var>,
    pub constant: bool,
}

impl Lin {
    pub fn constant(c: bool) -> Self {
        Lin { vars: Vec::new(), constant: c }
    }

    pub fn var(v: Var) -> Self {
        Lin { vars: vec![v], constant: false }
    }

    pub fn is_zero(&self) -> bool {
        self.vars.is_empty() && !self.constant
    }

    pub fn add_assign(&mut self, other: &Lin) {
        self.constant ^= other.constant;
        if other.vars.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (a, b) = (&self.vars, &other.vars);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        self.vars = out;
    }

    pub fn eval(&self, x: &BitVec) -> bool {
        self.vars.iter().fold(self.constant, |acc, &v| acc ^ x.get(v as usize))
    }
}

type Cell = BTreeMap<Mono, Lin>;

fn cell_add(cell: &mut Cell, m: Mono, l: &Lin) {
    if l.is_zero() {
        return;
    }
    let slot = cell.entry(m).or_default();
    slot.add_assign(l);
    if slot.is_zero() {
        cell.remove(&m);
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymMap {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Cell>>,
}

impl SymMap {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SymMap { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    /// A map with one unknown per position, numbered from `first`.
    pub fn unknowns(rows: usize, cols: usize, positions: &[(usize, usize, Mono)], first: Var) -> Self {
        let mut s = SymMap::zeros(rows, cols);
        for (k, &(x, y, m)) in positions.iter().enumerate() {
            s.add(x, y, m, &Lin::var(first + k as Var));
        }
        s
    }

    pub fn from_pmat(m: &PMat) -> Self {
        let mut s = SymMap::zeros(m.rows(), m.cols());
        let one = Lin::constant(true);
        for (x, y, p) in m.entries() {
            for &mono in p.terms() {
                s.add(x, y, mono, &one);
            }
        }
        s
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add(&mut self, x: usize, y: usize, m: Mono, l: &Lin) {
        let cell = self.data[x].entry(y).or_default();
        cell_add(cell, m, l);
        if cell.is_empty() {
            self.data[x].remove(&y);
        }
    }

    pub fn add_assign(&mut self, other: &SymMap) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "SymMap::add_assign shape");
        for (x, row) in other.data.iter().enumerate() {
            for (&y, cell) in row {
                for (&m, l) in cell {
                    self.add(x, y, m, l);
                }
            }
        }
    }

    pub fn add_pmat(&mut self, m: &PMat) {
        self.add_assign(&SymMap::from_pmat(m));
    }

    /// `self` followed by the concrete map `m`. With `conj_self` the
    /// coefficients of `self` are conjugated first (`m` is skew).
    pub fn then_concrete(&self, m: &PMat, ring: Ring, conj_self: bool) -> SymMap {
        assert_eq!(self.cols, m.rows(), "SymMap::then_concrete shape");
        let mut out = SymMap::zeros(self.rows, m.cols());
        for (x, row) in self.data.iter().enumerate() {
            for (&y, cell) in row {
                for (&a, l) in cell {
                    let a = if conj_self { a.swap() } else { a };
                    for (&z, p) in m.row(y) {
                        for &b in p.terms() {
                            let prod = a.mul(b);
                            if ring.admits(prod) {
                                out.add(x, z, prod, l);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The concrete map `m` followed by `self`; with `conj_m` the entries of
    /// `m` are conjugated (`self` is skew).
    pub fn after_concrete(&self, m: &PMat, ring: Ring, conj_m: bool) -> SymMap {
        assert_eq!(m.cols(), self.rows, "SymMap::after_concrete shape");
        let mut out = SymMap::zeros(m.rows(), self.cols);
        for (x, mrow) in (0..m.rows()).map(|x| (x, m.row(x))) {
            for (&y, p) in mrow {
                for &a in p.terms() {
                    let a = if conj_m { a.swap() } else { a };
                    for (&z, cell) in &self.data[y] {
                        for (&b, l) in cell {
                            let prod = a.mul(b);
                            if ring.admits(prod) {
                                out.add(x, z, prod, l);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Keeps only the monomials accepted by `keep` (used for truncations).
    pub fn filter_monos(&self, keep: impl Fn(Mono) -> bool) -> SymMap {
        let mut out = SymMap::zeros(self.rows, self.cols);
        for (x, row) in self.data.iter().enumerate() {
            for (&y, cell) in row {
                for (&m, l) in cell {
                    if keep(m) {
                        out.add(x, y, m, l);
                    }
                }
            }
        }
        out
    }

    /// Every nonzero coefficient, as `(x, y, monomial, form)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, Mono, &Lin)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().flat_map(move |(&y, cell)| cell.iter().map(move |(&m, l)| (x, y, m, l))))
    }

    /// Concrete map for an assignment of the unknowns.
    pub fn eval(&self, sol: &BitVec) -> PMat {
        let mut out = PMat::zeros(self.rows, self.cols);
        for (x, y, m, l) in self.cells() {
            if l.eval(sol) {
                out.add_entry(x, y, &PolyUV::mono(m));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lin_arithmetic() {
        let mut a = Lin::var(1);
        a.add_assign(&Lin::var(3));
        a.add_assign(&Lin::var(1));
        a.add_assign(&Lin::constant(true));
        assert_eq!(a.vars, vec![3]);
        assert!(a.constant);
        let x = BitVec::from_bits(&[0, 0, 0, 1]);
        assert!(!a.eval(&x));
    }

    #[test]
    fn composition_with_concrete() {
        // unknown f: 1 -> 1 at U, followed by multiplication by U
        let s = SymMap::unknowns(1, 1, &[(0, 0, Mono::u(1))], 0);
        let mut m = PMat::zeros(1, 1);
        m.set(0, 0, PolyUV::mono(Mono::u(2)));
        let t = s.then_concrete(&m, Ring::F2U, false);
        let cells: Vec<_> = t.cells().collect();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].2, Mono::u(3));
        let mut v = PMat::zeros(1, 1);
        v.set(0, 0, PolyUV::mono(Mono::v(1)));
        assert_eq!(s.then_concrete(&v, Ring::R, false).cells().count(), 0);
        assert_eq!(s.then_concrete(&v, Ring::R, true).cells().count(), 1);
    }
}
