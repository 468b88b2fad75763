//! Affine systems over F2 assembled from symbolic maps, and the solver that
//! runs them (with the optional exhaustive cross-check).

use std::sync::Arc;

use crate::algebra::{solve_affine_certified, AffineOutcome, BitVec, F2Matrix};
use crate::complex::GradedComplex;
use crate::oracle::{count_solutions, OracleTally, TallySnapshot};

use super::sym::{Lin, SymMap, Var};

#[derive(Clone, Debug)]
pub struct Equation {
    pub lin: Lin,
    pub label: String,
}

/// Equations `lin = 0` in `n_vars` unknowns.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub n_vars: usize,
    pub equations: Vec<Equation>,
}

impl LinearSystem {
    pub fn new(n_vars: usize) -> Self {
        LinearSystem { n_vars, equations: Vec::new() }
    }

    /// Adds `lin = 0`, skipping the trivial `0 = 0`.
    pub fn push(&mut self, lin: Lin, label: impl Into<String>) {
        if !lin.is_zero() {
            self.equations.push(Equation { lin, label: label.into() });
        }
    }

    /// One equation per nonzero coefficient of `s`.
    pub fn push_map(&mut self, s: &SymMap, what: &str, source: &GradedComplex, target: &GradedComplex) {
        for (x, y, m, l) in s.cells() {
            self.equations.push(Equation {
                lin: l.clone(),
                label: format!("{what}: coefficient of {m}·{} in image of {}", target.label(y), source.label(x)),
            });
        }
    }

    /// Renumbers unknowns so that only those occurring in some equation
    /// remain; returns the old index of each kept unknown.
    pub fn compact(&mut self) -> Vec<usize> {
        let mut used = vec![false; self.n_vars];
        for e in &self.equations {
            for &v in &e.lin.vars {
                used[v as usize] = true;
            }
        }
        let kept: Vec<usize> = (0..self.n_vars).filter(|&v| used[v]).collect();
        let mut new_index = vec![0 as Var; self.n_vars];
        for (j, &v) in kept.iter().enumerate() {
            new_index[v] = j as Var;
        }
        for e in &mut self.equations {
            for v in &mut e.lin.vars {
                *v = new_index[*v as usize];
            }
        }
        self.n_vars = kept.len();
        kept
    }

    /// Spreads an assignment of the compacted unknowns back over the
    /// original `n` unknowns (dropped ones are zero).
    pub fn expand(kept: &[usize], bits: &BitVec, n: usize) -> BitVec {
        let mut out = BitVec::zeros(n);
        for (j, &v) in kept.iter().enumerate() {
            if bits.get(j) {
                out.set(v, true);
            }
        }
        out
    }

    fn to_matrix(&self) -> (F2Matrix, BitVec, Vec<usize>) {
        let rows: Vec<usize> = (0..self.equations.len()).collect();
        let mut data = Vec::with_capacity(rows.len());
        let mut b = BitVec::zeros(rows.len());
        for (r, e) in self.equations.iter().enumerate() {
            let mut row = BitVec::zeros(self.n_vars);
            for &v in &e.lin.vars {
                row.set(v as usize, true);
            }
            data.push(row);
            if e.lin.constant {
                b.set(r, true);
            }
        }
        (F2Matrix::from_bitrows(self.n_vars, data), b, rows)
    }

    /// Whether an assignment satisfies every equation.
    pub fn satisfied_by(&self, x: &BitVec) -> bool {
        self.equations.iter().all(|e| !e.lin.eval(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved {
        particular: BitVec,
        kernel: Vec<BitVec>,
    },
    /// Labels of equations whose sum reads `0 = 1`.
    Inconsistent {
        certificate: Vec<String>,
    },
}

impl SolveOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self, SolveOutcome::Solved { .. })
    }
}

/// Runs affine systems; optionally cross-checks small ones by enumeration.
#[derive(Clone, Debug)]
pub struct Solver {
    oracle_limit: Option<usize>,
    tally: Arc<OracleTally>,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new()
    }
}

impl Solver {
    pub const ORACLE_LIMIT: usize = 20;

    pub fn new() -> Self {
        Solver { oracle_limit: None, tally: Arc::new(OracleTally::default()) }
    }

    /// Cross-checks every system with at most 20 unknowns.
    pub fn with_oracle() -> Self {
        Solver { oracle_limit: Some(Self::ORACLE_LIMIT), tally: Arc::new(OracleTally::default()) }
    }

    pub fn oracle_enabled(&self) -> bool {
        self.oracle_limit.is_some()
    }

    pub fn tally(&self) -> TallySnapshot {
        self.tally.snapshot()
    }

    /// Solves `sys`. `check` must decide an assignment by an independent route
    /// (direct map arithmetic); it is consulted only by the oracle.
    pub fn solve(&self, sys: &LinearSystem, check: &dyn Fn(&BitVec) -> bool) -> SolveOutcome {
        self.tally.record_query();
        let outcome = solve_system(sys);
        if let Some(limit) = self.oracle_limit {
            if sys.n_vars <= limit {
                let count = count_solutions(sys.n_vars, check);
                let (agreed, expected) = match &outcome {
                    SolveOutcome::Solved { particular, kernel } => {
                        let e = 1u64 << kernel.len();
                        (count == e && check(particular), e)
                    }
                    SolveOutcome::Inconsistent { .. } => (count == 0, 0),
                };
                self.tally.record_check(agreed, || {
                    let first = sys.equations.first().map_or("<none>", |e| e.label.as_str());
                    format!(
                        "{} unknowns, {} equations (first: {first}): solver predicts {expected} solutions, enumeration found {count}",
                        sys.n_vars,
                        sys.equations.len()
                    )
                });
            }
        }
        outcome
    }
}

pub fn solve_system(sys: &LinearSystem) -> SolveOutcome {
    if let Some(e) = sys.equations.iter().find(|e| e.lin.vars.is_empty() && e.lin.constant) {
        return SolveOutcome::Inconsistent { certificate: vec![e.label.clone()] };
    }
    let (a, b, rows) = sys.to_matrix();
    match solve_affine_certified(&a, &b).expect("system shape") {
        AffineOutcome::Solved { particular, kernel } => SolveOutcome::Solved { particular, kernel },
        AffineOutcome::Inconsistent { certificate } => SolveOutcome::Inconsistent {
            certificate: certificate.into_iter().map(|r| sys.equations[rows[r]].label.clone()).collect(),
        },
    }
}
