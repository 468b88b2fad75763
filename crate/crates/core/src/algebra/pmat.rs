//! Sparse matrices with polynomial entries.
//!
//! Row convention throughout: entry `(r, c)` is the coefficient of target
//! generator `c` in the image of source generator `r`. Composition "first
//! `f`, then `g`" is therefore the product `f * g`.

use std::collections::BTreeMap;

use super::poly::{Mono, PolyUV};
use super::ring::Ring;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PMat {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, PolyUV>>,
}

impl PMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PMat { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, PolyUV::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&PolyUV> {
        self.data[r].get(&c)
    }

    pub fn entry(&self, r: usize, c: usize) -> PolyUV {
        self.get(r, c).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, p: PolyUV) {
        assert!(r < self.rows && c < self.cols, "PMat::set out of range");
        if p.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, p);
        }
    }

    pub fn add_entry(&mut self, r: usize, c: usize, p: &PolyUV) {
        if p.is_zero() {
            return;
        }
        assert!(r < self.rows && c < self.cols, "PMat::add_entry out of range");
        let slot = self.data[r].entry(c).or_default();
        slot.add_assign(p);
        if slot.is_zero() {
            self.data[r].remove(&c);
        }
    }

    pub fn add_mono(&mut self, r: usize, c: usize, m: Mono) {
        self.add_entry(r, c, &PolyUV::mono(m));
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, PolyUV> {
        &self.data[r]
    }

    /// All nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &PolyUV)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(&c, p)| (r, c, p)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    /// `self * other`, reduced in `ring`.
    pub fn mul(&self, other: &PMat, ring: Ring) -> PMat {
        assert_eq!(self.cols, other.rows, "PMat::mul shape mismatch");
        let mut out = PMat::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (&k, a) in row {
                for (&c, b) in &other.data[k] {
                    let prod = ring.mul(a, b);
                    out.add_entry(r, c, &prod);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PMat) -> PMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "PMat::add shape mismatch");
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &PMat) {
        for (r, c, p) in other.entries() {
            self.add_entry(r, c, p);
        }
    }

    pub fn transpose(&self) -> PMat {
        let mut out = PMat::zeros(self.cols, self.rows);
        for (r, c, p) in self.entries() {
            out.set(c, r, p.clone());
        }
        out
    }

    /// Applies `f` to each entry, dropping entries that become zero.
    pub fn map_entries(&self, f: impl Fn(&PolyUV) -> PolyUV) -> PMat {
        let mut out = PMat::zeros(self.rows, self.cols);
        for (r, c, p) in self.entries() {
            out.set(r, c, f(p));
        }
        out
    }

    /// Exchanges `U` and `V` in every entry.
    pub fn conjugate(&self) -> PMat {
        self.map_entries(PolyUV::swap)
    }

    /// Image of the row vector `v` (source coordinates) under the map.
    pub fn apply(&self, v: &BTreeMap<usize, PolyUV>, ring: Ring) -> BTreeMap<usize, PolyUV> {
        let mut out: BTreeMap<usize, PolyUV> = BTreeMap::new();
        for (&k, a) in v {
            for (&c, b) in &self.data[k] {
                let slot = out.entry(c).or_default();
                slot.add_assign(&ring.mul(a, b));
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Submatrix on the given rows and columns, in the given orders.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PMat {
        let mut index = vec![usize::MAX; self.cols];
        for (j, &c) in cols.iter().enumerate() {
            index[c] = j;
        }
        let mut out = PMat::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (&c, p) in &self.data[r] {
                if index[c] != usize::MAX {
                    out.set(i, index[c], p.clone());
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other` with index `(i, j) ↦ i * other_dim + j`.
    pub fn kron(&self, other: &PMat, ring: Ring) -> PMat {
        let mut out = PMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in other.entries() {
                out.set(r1 * other.rows + r2, c1 * other.cols + c2, ring.mul(a, b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyUV {
        s.parse().unwrap()
    }

    #[test]
    fn product_respects_ring() {
        let mut a = PMat::zeros(1, 1);
        a.set(0, 0, p("U+V"));
        let sq = a.mul(&a, Ring::R);
        assert_eq!(sq.entry(0, 0), p("U^2+V^2"));
        let sq = a.mul(&a, Ring::F2UV);
        assert_eq!(sq.entry(0, 0), p("U^2+V^2"));
        let mut b = PMat::zeros(1, 1);
        b.set(0, 0, p("U"));
        let mut c = PMat::zeros(1, 1);
        c.set(0, 0, p("V"));
        assert!(b.mul(&c, Ring::R).is_zero());
        assert_eq!(b.mul(&c, Ring::F2UV).entry(0, 0), p("UV"));
    }

    #[test]
    fn kron_indexing() {
        let mut a = PMat::zeros(2, 2);
        a.set(0, 1, p("U"));
        let id = PMat::identity(3);
        let k = a.kron(&id, Ring::F2U);
        assert_eq!(k.entry(2, 5), p("U"));
        assert_eq!(k.nnz(), 3);
    }
}
