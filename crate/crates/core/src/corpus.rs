//! A reproducible collection of graphs satisfying `*(eps)`, used by the
//! closure, pair-count and oracle sweeps.

use std::collections::BTreeMap;

use crate::arith::Rational;
use crate::canonical::canonical_form;
use crate::diagram::{
    enumerate_minimal_elliptic_star, lanner_blowup_search, lanner_star, single_blowups, EnumeratedGraph,
    SearchConfig,
};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::star::{check_star, star_closure_blowdown, star_closure_subgraph};

pub const ELLIPTIC_VERTICES: usize = 6;
pub const CLOSURE_STEPS: usize = 64;
pub const BLOWUP_ROUNDS: usize = 2;
/// Extra random vertex sets per graph in `closure_audit` runs over the corpus.
pub const CLOSURE_SAMPLES: usize = 8;

/// Minimal elliptic graphs with at most six vertices, the graphs reached
/// from them by up to two blowups keeping `*(eps)` at every step, and the
/// Lanner closure of the `(1, 1, 1)` chain. Sorted by canonical code.
pub fn star_corpus(eps: &Rational, config: &SearchConfig) -> Result<Vec<EnumeratedGraph>> {
    let mut found: BTreeMap<String, WeightedGraph> = BTreeMap::new();
    let elliptic = enumerate_minimal_elliptic_star(eps, ELLIPTIC_VERTICES, config)?;
    let mut layer: Vec<WeightedGraph> = Vec::new();
    for e in elliptic.graphs {
        layer.push(e.graph.clone());
        found.insert(e.code, e.graph);
    }
    for _ in 0..BLOWUP_ROUNDS {
        let mut next = Vec::new();
        for g in &layer {
            for child in single_blowups(g) {
                if check_star(&child, eps)?.feasible {
                    let cf = canonical_form(&child);
                    if let std::collections::btree_map::Entry::Vacant(e) = found.entry(cf.code) {
                        let child = child.permuted(&cf.order);
                        next.push(child.clone());
                        e.insert(child);
                    }
                }
            }
        }
        layer = next;
    }
    let seed = WeightedGraph::chain(&[1, 1, 1]);
    if lanner_star(&seed, eps)? {
        let closure = lanner_blowup_search(&seed, eps, CLOSURE_STEPS, config)?;
        for e in closure.graphs {
            found.insert(e.code, e.graph);
        }
    }
    Ok(found.into_iter().map(|(code, graph)| EnumeratedGraph { code, graph }).collect())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClosureAudit {
    pub graphs: usize,
    pub subgraph_cases: usize,
    pub blowdown_cases: usize,
    /// `(canonical code, description)` of each failure.
    pub violations: Vec<(String, String)>,
}

impl ClosureAudit {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that induced subgraphs and blowdowns of each graph keep `*(eps)`.
///
/// Subgraphs: every set missing one vertex, plus `extra` further vertex
/// sets per graph drawn from a fixed pseudo-random sequence. Blowdowns:
/// every contractible vertex.
pub fn closure_audit(graphs: &[EnumeratedGraph], eps: &Rational, extra: usize) -> Result<ClosureAudit> {
    let mut audit = ClosureAudit { graphs: graphs.len(), ..ClosureAudit::default() };
    let mut state = 0x5eed_u64;
    for e in graphs {
        let g = &e.graph;
        let n = g.len();
        let mut subsets: Vec<Vec<usize>> = if n >= 2 {
            (0..n).map(|skip| (0..n).filter(|&i| i != skip).collect()).collect()
        } else {
            Vec::new()
        };
        if (2..64).contains(&n) {
            for _ in 0..extra {
                let mask = splitmix(&mut state) & ((1u64 << n) - 1);
                subsets.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
            }
        }
        for sub in subsets {
            audit.subgraph_cases += 1;
            if !star_closure_subgraph(g, eps, &sub)? {
                audit.violations.push((e.code.clone(), format!("induced subgraph {sub:?}")));
            }
        }
        for i in 0..n {
            if g.is_contractible(i) {
                audit.blowdown_cases += 1;
                let id = &g.vertex(i).id;
                if !star_closure_blowdown(g, eps, id)? {
                    audit.violations.push((e.code.clone(), format!("blowdown of {id}")));
                }
            }
        }
    }
    Ok(audit)
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
