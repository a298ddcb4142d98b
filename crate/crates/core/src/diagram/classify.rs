use std::fmt;

use crate::arith::{signature, Signature};
use crate::discrepancy::is_log_terminal_graph;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
    IndefiniteOther,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Elliptic => "elliptic",
            GraphKind::Parabolic => "parabolic",
            GraphKind::Hyperbolic => "hyperbolic",
            GraphKind::IndefiniteOther => "indefinite_other",
        }
    }

    pub fn of(sig: &Signature) -> Self {
        let r = sig.dim();
        match (sig.n_plus, sig.n_zero) {
            (0, 0) => GraphKind::Elliptic,
            (0, 1) if r >= 1 => GraphKind::Parabolic,
            (1, 0) => GraphKind::Hyperbolic,
            _ => GraphKind::IndefiniteOther,
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphClass {
    pub kind: GraphKind,
    /// Only ever true for hyperbolic graphs.
    pub lanner: bool,
    pub signature: Signature,
}

/// Signature class plus the Lanner flag.
///
/// A hyperbolic graph is Lanner iff every subset of size `r - 1` is negative
/// semidefinite: a semidefinite set has no hyperbolic subset, and a set with
/// one positive direction and a kernel contains a nonsingular principal
/// block with the same positive index.
pub fn classify_graph(g: &WeightedGraph) -> GraphClass {
    let m = g.intersection_matrix();
    let sig = signature(&m);
    let kind = GraphKind::of(&sig);
    let lanner = kind == GraphKind::Hyperbolic && {
        let all: Vec<usize> = (0..g.len()).collect();
        (0..g.len()).all(|skip| {
            let rest: Vec<usize> = all.iter().copied().filter(|&i| i != skip).collect();
            signature(&m.principal(&rest)).n_plus == 0
        })
    };
    GraphClass { kind, lanner, signature: sig }
}

pub fn is_lanner(g: &WeightedGraph) -> bool {
    classify_graph(g).lanner
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeTag {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    Other,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeTag::A(n) => write!(f, "A{n}"),
            ShapeTag::D(n) => write!(f, "D{n}"),
            ShapeTag::E6 => f.write_str("E6"),
            ShapeTag::E7 => f.write_str("E7"),
            ShapeTag::E8 => f.write_str("E8"),
            ShapeTag::Other => f.write_str("other"),
        }
    }
}

/// Tree shape of the underlying graph, ignoring weights. Anything that is
/// not a connected simple tree with at most one fork of degree 3 and ADE
/// arm lengths is `Other`.
pub fn ade_shape(g: &WeightedGraph) -> ShapeTag {
    let n = g.len();
    if n == 0 || !g.is_tree() {
        return ShapeTag::Other;
    }
    let forks: Vec<usize> = (0..n).filter(|&i| g.degree(i) >= 3).collect();
    match forks.as_slice() {
        [] => ShapeTag::A(n),
        [c] if g.degree(*c) == 3 => {
            let mut arms: Vec<usize> = g.neighbors(*c).into_iter().map(|s| arm_length(g, *c, s)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => ShapeTag::D(k + 3),
                [1, 2, 2] => ShapeTag::E6,
                [1, 2, 3] => ShapeTag::E7,
                [1, 2, 4] => ShapeTag::E8,
                _ => ShapeTag::Other,
            }
        }
        _ => ShapeTag::Other,
    }
}

fn arm_length(g: &WeightedGraph, from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = g.neighbors(cur).into_iter().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [x] => {
                prev = cur;
                cur = *x;
                len += 1;
            }
            _ => return len,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeCheck {
    pub ok: bool,
    pub tag: ShapeTag,
    /// A two-fork tree is never log terminal, so this is reported rather
    /// than rejected.
    pub log_terminal: bool,
}

/// Verifies the tree shape of a minimal elliptic graph.
pub fn check_minimal_elliptic_shape(g: &WeightedGraph, budget: usize) -> Result<ShapeCheck> {
    if !g.is_minimal() {
        return Err(Error::Precondition("graph is not minimal".into()));
    }
    if classify_graph(g).kind != GraphKind::Elliptic {
        return Err(Error::Precondition("graph is not elliptic".into()));
    }
    let log_terminal = is_log_terminal_graph(g, budget)?.log_terminal;
    let tag = ade_shape(g);
    Ok(ShapeCheck { ok: tag != ShapeTag::Other, tag, log_terminal })
}
