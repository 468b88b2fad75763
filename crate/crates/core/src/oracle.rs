//! Exhaustive cross-checks for the affine solvers.
//!
//! Every system handed to [`crate::morphism::Solver`] comes with a predicate
//! that tests a candidate assignment by direct map arithmetic, without
//! looking at the assembled equations. When the unknown count is small the
//! solver enumerates all assignments and compares the count of accepted ones
//! with `2^dim(kernel)`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::algebra::{solve_affine_f2, BitVec, F2Matrix, PMat};
use crate::complex::GradedMap;

/// Counters shared by all queries of one solver.
#[derive(Debug, Default)]
pub struct OracleTally {
    queries: AtomicUsize,
    checked: AtomicUsize,
    disagreements: AtomicUsize,
    notes: Mutex<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TallySnapshot {
    pub queries: usize,
    pub checked: usize,
    pub disagreements: usize,
    pub notes: Vec<String>,
}

impl OracleTally {
    pub fn record_query(&self) {
        self.queries.fetch_add(1, Ordering::Relaxed);
    }

    pub fn record_check(&self, agreed: bool, note: impl FnOnce() -> String) {
        self.checked.fetch_add(1, Ordering::Relaxed);
        if !agreed {
            self.disagreements.fetch_add(1, Ordering::Relaxed);
            self.notes.lock().expect("oracle notes").push(note());
        }
    }

    pub fn snapshot(&self) -> TallySnapshot {
        TallySnapshot {
            queries: self.queries.load(Ordering::Relaxed),
            checked: self.checked.load(Ordering::Relaxed),
            disagreements: self.disagreements.load(Ordering::Relaxed),
            notes: self.notes.lock().expect("oracle notes").clone(),
        }
    }
}

/// Number of assignments of `n` bits accepted by `check`.
pub fn count_solutions(n: usize, check: &dyn Fn(&BitVec) -> bool) -> u64 {
    assert!(n < 32, "enumeration over {n} unknowns");
    let mut x = BitVec::zeros(n);
    let mut count = 0u64;
    // Gray code walk: one bit flips per step
    for step in 0u64..(1u64 << n) {
        if step > 0 {
            x.flip(step.trailing_zeros() as usize);
        }
        if check(&x) {
            count += 1;
        }
    }
    count
}

/// Every `x` with `A x = b`, by enumeration.
pub fn brute_force_affine(a: &F2Matrix, b: &BitVec) -> Vec<BitVec> {
    let n = a.cols();
    let mut out = Vec::new();
    let mut x = BitVec::zeros(n);
    for step in 0u64..(1u64 << n) {
        if step > 0 {
            x.flip(step.trailing_zeros() as usize);
        }
        if a.mul_vec(&x) == *b {
            out.push(x.clone());
        }
    }
    out
}

/// The matrix at `U = V = 1`, entries reduced mod 2.
pub fn at_one(m: &PMat) -> F2Matrix {
    let mut out = F2Matrix::zeros(m.rows(), m.cols());
    for (r, c, p) in m.entries() {
        if p.terms().len() % 2 == 1 {
            out.set(r, c, true);
        }
    }
    out
}

/// A cycle of the `U = 1` complex that is not a boundary, when exactly one
/// homology class is nonzero.
fn nontrivial_cycle(d: &F2Matrix) -> Option<BitVec> {
    // rows are sources: ∂ as row vectors, so cycles are the left kernel
    let dt = d.transpose();
    let cycles = dt.kernel();
    let image = d.transpose();
    cycles.into_iter().find(|z| solve_affine_f2(&image, z).ok().flatten().is_none())
}

/// Locality of an `F2[U]` map through the ungraded `U = 1` truncation: the
/// image of a nonzero homology class must be a non-boundary.
pub fn is_local_at_one(f: &GradedMap) -> Option<bool> {
    let dx = at_one(f.source.differential());
    let dy = at_one(f.target.differential());
    let h = |d: &F2Matrix| d.rows() - 2 * d.rank();
    if h(&dx) != 1 || h(&dy) != 1 {
        return None;
    }
    let z = nontrivial_cycle(&dx)?;
    let image = at_one(&f.matrix).vec_mul(&z);
    Some(solve_affine_f2(&dy.transpose(), &image).ok().flatten().is_none())
}
