//! Diagonalization of a homogeneous differential over a univariate graded
//! ring `F2[T]`.
//!
//! Entries are single monomials `T^k`, stored by exponent. Homogeneity forces
//! the exponent at each position, so adding two entries at one position either
//! cancels them or signals an inhomogeneous input.

use std::collections::{BTreeMap, BTreeSet};

use super::AlgebraError;

/// Sparse square matrix of monomials `T^k` (row = source).
#[derive(Clone, Debug, Default)]
struct MonoMat {
    rows: Vec<BTreeMap<usize, u32>>,
    cols: Vec<BTreeSet<usize>>,
}

impl MonoMat {
    fn new(n: usize) -> Self {
        MonoMat { rows: vec![BTreeMap::new(); n], cols: vec![BTreeSet::new(); n] }
    }

    fn toggle(&mut self, r: usize, c: usize, e: u32) -> Result<(), AlgebraError> {
        match self.rows[r].get(&c) {
            Some(&old) if old == e => {
                self.rows[r].remove(&c);
                self.cols[c].remove(&r);
            }
            Some(&old) => return Err(AlgebraError::Inhomogeneous { row: r, col: c, exps: (old, e) }),
            None => {
                self.rows[r].insert(c, e);
                self.cols[c].insert(r);
            }
        }
        Ok(())
    }

    /// row `w` += T^s row `x`
    fn row_op(&mut self, w: usize, x: usize, s: u32) -> Result<(), AlgebraError> {
        let src: Vec<(usize, u32)> = self.rows[x].iter().map(|(&c, &e)| (c, e)).collect();
        for (c, e) in src {
            self.toggle(w, c, e + s)?;
        }
        Ok(())
    }

    /// column `x` += T^s column `w`
    fn col_op(&mut self, x: usize, w: usize, s: u32) -> Result<(), AlgebraError> {
        let src: Vec<(usize, u32)> = self.cols[w].iter().map(|&r| (r, self.rows[r][&w])).collect();
        for (r, e) in src {
            self.toggle(r, x, e + s)?;
        }
        Ok(())
    }
}

/// Result of diagonalizing `∂`: a new basis `{e'_i}` indexed like the old
/// one in which `∂ e'_x = T^k e'_y` for each pair and `∂ e'_z = 0` for free `z`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// `(x, y, k)` with `∂ e'_x = T^k e'_y`.
    pub pairs: Vec<(usize, usize, u32)>,
    /// Indices whose new basis vectors are cycles generating the free part.
    pub free: Vec<usize>,
    basis: Vec<BTreeMap<usize, u32>>,
    coords: Vec<BTreeMap<usize, u32>>,
}

impl Diagonalization {
    /// New basis vector `e'_i` written in the old basis.
    pub fn new_vector(&self, i: usize) -> &BTreeMap<usize, u32> {
        &self.basis[i]
    }

    /// Functional giving the `e'_i`-coordinate: `coord(i)[j]` is the
    /// coefficient of `e'_i` in the expansion of old `e_j`.
    pub fn coordinate(&self, i: usize) -> &BTreeMap<usize, u32> {
        &self.coords[i]
    }

    pub fn torsion_orders(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.pairs.iter().map(|p| p.2).filter(|&k| k > 0).collect();
        t.sort_unstable();
        t
    }

    pub fn unit_pairs(&self) -> usize {
        self.pairs.iter().filter(|p| p.2 == 0).count()
    }
}

/// Diagonalizes the differential with monomial entries `(source, target, k)`.
///
/// The pivot at each step has minimal exponent, so every elimination uses a
/// nonnegative power of `T`.
pub fn diagonalize(n: usize, entries: &[(usize, usize, u32)]) -> Result<Diagonalization, AlgebraError> {
    let mut m = MonoMat::new(n);
    for &(r, c, e) in entries {
        m.toggle(r, c, e)?;
    }
    // basis rows get row ops; coordinate functionals get the dual column ops
    let mut basis = MonoMat::new(n);
    let mut coords = MonoMat::new(n);
    for i in 0..n {
        basis.toggle(i, i, 0)?;
        coords.toggle(i, i, 0)?;
    }
    // e'_w <- e'_w + T^s e'_x
    let mut change = |m: &mut MonoMat, w: usize, x: usize, s: u32| -> Result<(), AlgebraError> {
        m.row_op(w, x, s)?;
        m.col_op(x, w, s)?;
        basis.row_op(w, x, s)?;
        coords.row_op(x, w, s)
    };
    let mut active = vec![true; n];
    let mut pairs = Vec::new();
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in m.rows.iter().enumerate() {
            for (&c, &e) in row {
                if best.is_none_or(|b| (e, r, c) < b) {
                    best = Some((e, r, c));
                }
            }
        }
        let Some((k, x, y)) = best else { break };
        // rewrite e'_y as T^{-k} ∂e'_x
        let others: Vec<(usize, u32)> = m.rows[x].iter().filter(|(&c, _)| c != y).map(|(&c, &e)| (c, e)).collect();
        for (c, e) in others {
            change(&mut m, y, c, e - k)?;
        }
        // clear the rest of column y
        let hits: Vec<(usize, u32)> = m.cols[y].iter().filter(|&&r| r != x).map(|&r| (r, m.rows[r][&y])).collect();
        for (w, e) in hits {
            change(&mut m, w, x, e - k)?;
        }
        if m.rows[x].len() != 1 || !m.rows[y].is_empty() || !m.cols[x].is_empty() || m.cols[y].len() != 1 {
            return Err(AlgebraError::NotAComplex);
        }
        m.toggle(x, y, k)?;
        active[x] = false;
        active[y] = false;
        pairs.push((x, y, k));
    }
    let free = (0..n).filter(|&i| active[i]).collect();
    Ok(Diagonalization { pairs, free, basis: basis.rows, coords: coords.rows })
}
