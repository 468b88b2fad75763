//! Grading conventions and the homogeneity constraints they impose.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::algebra::Mono;

use super::ComplexError;

pub type Grading = (i32, i32);

pub fn add(a: Grading, b: Grading) -> Grading {
    (a.0 + b.0, a.1 + b.1)
}

pub fn sub(a: Grading, b: Grading) -> Grading {
    (a.0 - b.0, a.1 - b.1)
}

pub fn neg(a: Grading) -> Grading {
    (-a.0, -a.1)
}

/// How the two integers attached to a generator are read.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Convention {
    /// `(A, M)`; `U` has degree `(-1,-2)` and `∂` has degree `(0,-1)`.
    Horizontal,
    /// `(gr_U, gr_V)`; `U` has degree `(-2,0)`, `V` has `(0,-2)`, `∂` has `(-1,-1)`.
    UV,
    /// `(gr_U, gr_V)` on a ring whose variable acts as `UV`, of degree `(-2,-2)`.
    Diagonal,
}

impl Convention {
    pub fn mono_degree(self, m: Mono) -> Grading {
        let (u, v) = (m.u as i32, m.v as i32);
        match self {
            Convention::Horizontal => (-u, -2 * u),
            Convention::UV => (-2 * u, -2 * v),
            Convention::Diagonal => (-2 * u, -2 * u),
        }
    }

    pub fn differential_degree(self) -> Grading {
        match self {
            Convention::Horizontal => (0, -1),
            Convention::UV | Convention::Diagonal => (-1, -1),
        }
    }

    /// Linear part of a skew-graded map's action on gradings.
    pub fn skew(self, g: Grading) -> Grading {
        match self {
            Convention::Horizontal => (-g.0, g.1 - 2 * g.0),
            Convention::UV | Convention::Diagonal => (g.1, g.0),
        }
    }

    pub fn alexander(self, g: Grading) -> i32 {
        match self {
            Convention::Horizontal => g.0,
            Convention::UV | Convention::Diagonal => (g.0 - g.1).div_euclid(2),
        }
    }

    pub fn maslov(self, g: Grading) -> i32 {
        match self {
            Convention::Horizontal => g.1,
            Convention::UV | Convention::Diagonal => g.0,
        }
    }

    /// The unique monomial of degree `delta`, if any.
    pub fn mono_of_degree(self, delta: Grading) -> Option<Mono> {
        let (a, b) = delta;
        match self {
            Convention::Horizontal => (a <= 0 && b == 2 * a).then(|| Mono::u((-a) as u32)),
            Convention::UV => {
                (a <= 0 && b <= 0 && a % 2 == 0 && b % 2 == 0).then(|| Mono::new((-a / 2) as u32, (-b / 2) as u32))
            }
            Convention::Diagonal => (a == b && a <= 0 && a % 2 == 0).then(|| Mono::u((-a / 2) as u32)),
        }
    }

    /// Degree shift of `g`-linear maps after conjugating the source: the
    /// grading `target` an entry from grading `source` must land on.
    pub fn map_target(self, source: Grading, shift: Grading, skew: bool) -> Grading {
        let base = if skew { self.skew(source) } else { source };
        add(base, shift)
    }

    /// Monomial forced on an entry `x → y` of a map with the given shift.
    pub fn forced_mono(self, source: Grading, target: Grading, shift: Grading, skew: bool) -> Option<Mono> {
        self.mono_of_degree(sub(self.map_target(source, shift, skew), target))
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Horizontal => "horizontal",
            Convention::UV => "uv",
            Convention::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "horizontal" => Ok(Convention::Horizontal),
            "uv" => Ok(Convention::UV),
            "diagonal" => Ok(Convention::Diagonal),
            other => Err(ComplexError::Parse { line: 0, msg: format!("unknown convention `{other}`") }),
        }
    }
}

/// A homogeneity constraint between two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradingEdge {
    /// `∂from ∋ m·to`: `g(to) + deg m = g(from) + deg ∂`.
    Differential { from: usize, to: usize, mono: Mono },
    /// Skew entry `from ↦ m·to`: `g(to) + deg m = skew(g(from)) + shift`.
    Skew { from: usize, to: usize, mono: Mono, shift: Grading },
    /// Linear entry with a shift: `g(to) + deg m = g(from) + shift`.
    Linear { from: usize, to: usize, mono: Mono, shift: Grading },
}

/// Output of [`solve_gradings`].
#[derive(Clone, Debug)]
pub struct GradingSolution {
    pub gradings: Vec<Grading>,
    /// Connected component of each generator.
    pub component: Vec<usize>,
    /// Whether each component contained an anchor; floating components are
    /// normalized so their first generator sits at `(0,0)`.
    pub anchored: Vec<bool>,
}

/// Propagates gradings along constraint edges from anchors.
pub fn solve_gradings(
    n: usize,
    conv: Convention,
    edges: &[GradingEdge],
    anchors: &[(usize, Grading)],
) -> Result<GradingSolution, ComplexError> {
    // adjacency with closures expressed as data: (other, kind, forward)
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
    for (ei, e) in edges.iter().enumerate() {
        let (a, b) = match *e {
            GradingEdge::Differential { from, to, .. }
            | GradingEdge::Skew { from, to, .. }
            | GradingEdge::Linear { from, to, .. } => (from, to),
        };
        adj[a].push((b, ei, true));
        adj[b].push((a, ei, false));
    }
    let step = |g: Grading, e: &GradingEdge, forward: bool| -> Grading {
        match *e {
            GradingEdge::Differential { mono, .. } => {
                let delta = sub(conv.differential_degree(), conv.mono_degree(mono));
                if forward {
                    add(g, delta)
                } else {
                    sub(g, delta)
                }
            }
            GradingEdge::Linear { mono, shift, .. } => {
                let delta = sub(shift, conv.mono_degree(mono));
                if forward {
                    add(g, delta)
                } else {
                    sub(g, delta)
                }
            }
            GradingEdge::Skew { mono, shift, .. } => {
                let delta = sub(shift, conv.mono_degree(mono));
                if forward {
                    add(conv.skew(g), delta)
                } else {
                    conv.skew(sub(g, delta))
                }
            }
        }
    };
    let mut gradings: Vec<Option<Grading>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut anchored = Vec::new();
    let mut anchor_of: Vec<Option<Grading>> = vec![None; n];
    for &(i, g) in anchors {
        if let Some(prev) = anchor_of[i] {
            if prev != g {
                return Err(ComplexError::GradingConflict { generator: i, first: prev, second: g });
            }
        }
        anchor_of[i] = Some(g);
    }
    // anchored components first, in anchor order; then floating ones
    let starts: Vec<(usize, Grading, bool)> =
        anchors.iter().map(|&(i, g)| (i, g, true)).chain((0..n).map(|i| (i, (0, 0), false))).collect();
    for (start, g0, is_anchor) in starts {
        if gradings[start].is_some() {
            continue;
        }
        let comp = anchored.len();
        anchored.push(is_anchor);
        gradings[start] = Some(g0);
        component[start] = comp;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let gv = gradings[v].expect("visited");
            for &(w, ei, forward) in &adj[v] {
                let gw = step(gv, &edges[ei], forward);
                match gradings[w] {
                    None => {
                        gradings[w] = Some(gw);
                        component[w] = comp;
                        queue.push_back(w);
                    }
                    Some(existing) if existing != gw => {
                        return Err(ComplexError::GradingConflict { generator: w, first: existing, second: gw });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    for (i, a) in anchor_of.iter().enumerate() {
        if let Some(g) = a {
            if gradings[i] != Some(*g) {
                return Err(ComplexError::GradingConflict {
                    generator: i,
                    first: gradings[i].unwrap_or_default(),
                    second: *g,
                });
            }
        }
    }
    Ok(GradingSolution {
        gradings: gradings.into_iter().map(|g| g.expect("all visited")).collect(),
        component,
        anchored,
    })
}
