//! Log discrepancies of weighted graphs and the singularity classes they
//! determine.
//!
//! The log discrepancies `f_i` solve `(K + sum (1 - f_i) F_i) . F_j = 0` for
//! every vertex `j`. Writing `b_i = 1 - f_i` this is the linear system
//! `M b = -K` with `M` the intersection matrix.

use num::{One, Signed, Zero};

use crate::arith::{signature, solve_linear, LinearSolution, Rational, SymMatrix};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Default cap on the number of subgraphs `is_log_terminal_graph` evaluates.
pub const DEFAULT_SUBGRAPH_BUDGET: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyVector {
    /// `f_i`
    pub log_discrepancies: Vec<Rational>,
    /// `b_i = 1 - f_i`
    pub codiscrepancies: Vec<Rational>,
}

impl DiscrepancyVector {
    pub fn min_log_discrepancy(&self) -> Option<&Rational> {
        self.log_discrepancies.iter().min()
    }
}

pub fn log_discrepancies(g: &WeightedGraph) -> Result<DiscrepancyVector> {
    solve_for_graph(&g.intersection_matrix(), &g.canonical_class().0)
}

fn solve_for_graph(m: &SymMatrix, k: &[Rational]) -> Result<DiscrepancyVector> {
    let rhs: Vec<Rational> = k.iter().map(|x| -x.clone()).collect();
    match solve_linear(m, &rhs)? {
        LinearSolution::Unique(b) => Ok(DiscrepancyVector {
            log_discrepancies: b.iter().map(|bi| Rational::one() - bi).collect(),
            codiscrepancies: b,
        }),
        LinearSolution::Singular(report) => Err(Error::Singular(report)),
    }
}

/// Which thresholds define "canonical" and "terminal".
///
/// `Discrepancy` compares the ordinary discrepancies `a = f - 1` with zero, so
/// canonical means `f >= 1` and terminal `f > 1`. `LogDiscrepancy` uses the
/// same bounds as log canonical / Kawamata log terminal (`f >= 0`, `f > 0`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ThresholdReading {
    #[default]
    Discrepancy,
    LogDiscrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularityClass {
    EpsLogTerminal(Rational),
    EpsLogCanonical(Rational),
    Terminal,
    Canonical,
    KawamataLogTerminal,
    LogCanonical,
    NoneOfThese,
}

impl SingularityClass {
    pub fn name(&self) -> &'static str {
        match self {
            SingularityClass::EpsLogTerminal(_) => "eps_log_terminal",
            SingularityClass::EpsLogCanonical(_) => "eps_log_canonical",
            SingularityClass::Terminal => "terminal",
            SingularityClass::Canonical => "canonical",
            SingularityClass::KawamataLogTerminal => "kawamata_log_terminal",
            SingularityClass::LogCanonical => "log_canonical",
            SingularityClass::NoneOfThese => "none_of_these",
        }
    }
}

/// Every class that holds, plus the one reported as strongest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityReport {
    pub class: SingularityClass,
    /// `None` for the empty graph.
    pub min_log_discrepancy: Option<Rational>,
    pub terminal: bool,
    pub canonical: bool,
    pub kawamata_log_terminal: bool,
    pub log_canonical: bool,
    pub eps_log_terminal: bool,
    pub eps_log_canonical: bool,
}

/// Classifies by exact comparison of `min f_i` with `0`, `1` and `eps`.
///
/// The returned class is the first that holds in the order eps-log terminal,
/// eps-log canonical, terminal, canonical, klt, lc; all flags are reported.
pub fn classify_singularity(
    g: &WeightedGraph,
    eps: &Rational,
    reading: ThresholdReading,
) -> Result<SingularityReport> {
    let d = log_discrepancies(g)?;
    let min = d.min_log_discrepancy().cloned();
    let above = |t: &Rational, strict: bool| match &min {
        None => true,
        Some(m) if strict => m > t,
        Some(m) => m >= t,
    };
    let zero = Rational::zero();
    let canonical_bar = match reading {
        ThresholdReading::Discrepancy => Rational::one(),
        ThresholdReading::LogDiscrepancy => zero.clone(),
    };
    let report_flags = (
        above(&canonical_bar, true),
        above(&canonical_bar, false),
        above(&zero, true),
        above(&zero, false),
        above(eps, true),
        above(eps, false),
    );
    let (terminal, canonical, klt, lc, eps_lt, eps_lc) = report_flags;
    let class = if eps_lt {
        SingularityClass::EpsLogTerminal(eps.clone())
    } else if eps_lc {
        SingularityClass::EpsLogCanonical(eps.clone())
    } else if terminal {
        SingularityClass::Terminal
    } else if canonical {
        SingularityClass::Canonical
    } else if klt {
        SingularityClass::KawamataLogTerminal
    } else if lc {
        SingularityClass::LogCanonical
    } else {
        SingularityClass::NoneOfThese
    };
    Ok(SingularityReport {
        class,
        min_log_discrepancy: min,
        terminal,
        canonical,
        kawamata_log_terminal: klt,
        log_canonical: lc,
        eps_log_terminal: eps_lt,
        eps_log_canonical: eps_lc,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogTerminalReport {
    pub log_terminal: bool,
    /// Smallest violating vertex set (by size, then lexicographically).
    pub witness: Option<Vec<usize>>,
    /// Minimum log discrepancy on the witness.
    pub witness_min: Option<Rational>,
    /// Number of connected subsets examined.
    pub evaluated: usize,
}

/// Checks that every elliptic subgraph has strictly positive log discrepancies.
///
/// The discrepancy system splits over connected components, so only connected
/// vertex sets are examined. A set that is not negative definite has no
/// negative definite superset, so the enumeration does not grow past it.
pub fn is_log_terminal_graph(g: &WeightedGraph, budget: usize) -> Result<LogTerminalReport> {
    let m = g.intersection_matrix();
    let k = g.canonical_class().0;
    let adj = g.adjacency();
    let n = g.len();
    let mut evaluated = 0usize;
    let mut witness: Option<(Vec<usize>, Rational)> = None;

    // Each connected set is generated once, from its smallest vertex `root`,
    // by adding neighbours larger than `root`.
    let mut stack: Vec<(Vec<usize>, Vec<usize>, Vec<bool>)> = Vec::new();
    for root in 0..n {
        let mut blocked = vec![false; n];
        for b in blocked.iter_mut().take(root + 1) {
            *b = true;
        }
        let ext: Vec<usize> = adj[root].iter().copied().filter(|&w| w > root).collect();
        for &w in &ext {
            blocked[w] = true;
        }
        stack.push((vec![root], ext, blocked));
        while let Some((set, mut ext, blocked)) = stack.pop() {
            evaluated += 1;
            if evaluated > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            let sub = m.principal(&set);
            let sig = signature(&sub);
            if sig.n_minus != set.len() {
                continue;
            }
            let sub_k: Vec<Rational> = set.iter().map(|&i| k[i].clone()).collect();
            let d = solve_for_graph(&sub, &sub_k)?;
            let min = d.min_log_discrepancy().expect("nonempty").clone();
            if !min.is_positive() {
                let mut sorted = set.clone();
                sorted.sort_unstable();
                let better = witness
                    .as_ref()
                    .is_none_or(|(w, _)| (sorted.len(), &sorted) < (w.len(), w));
                if better {
                    witness = Some((sorted, min));
                }
            }
            // ESU-style extension
            while let Some(w) = ext.pop() {
                let mut next_set = set.clone();
                next_set.push(w);
                let mut next_ext = ext.clone();
                let mut next_blocked = blocked.clone();
                for &x in &adj[w] {
                    if !next_blocked[x] {
                        next_blocked[x] = true;
                        next_ext.push(x);
                    }
                }
                stack.push((next_set, next_ext, next_blocked));
            }
        }
    }
    let (witness, witness_min) = match witness {
        Some((w, m)) => (Some(w), Some(m)),
        None => (None, None),
    };
    Ok(LogTerminalReport { log_terminal: witness.is_none(), witness, witness_min, evaluated })
}

/// `(K + sum b_i F_i) . F_j` for every `j`.
pub fn adjunction_values(g: &WeightedGraph, b: &[Rational]) -> Result<Vec<Rational>> {
    let mb = g.intersection_matrix().mul_vec(b)?;
    Ok(g.canonical_class().0.into_iter().zip(mb).map(|(k, x)| k + x).collect())
}

/// Single genus-0 vertex of weight `n` has log discrepancy `2/n`.
pub fn single_vertex_log_discrepancy(weight: u32, genus: u32) -> Rational {
    Rational::new((2 - 2 * i64::from(genus)).into(), i64::from(weight).into())
}
