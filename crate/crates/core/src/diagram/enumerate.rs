use std::collections::{BTreeMap, BTreeSet};

use num::ToPrimitive;
use rayon::prelude::*;

use crate::arith::{floor, format_rational, Rational};
use crate::canonical::canonical_form;
use crate::discrepancy::{is_log_terminal_graph, DEFAULT_SUBGRAPH_BUDGET};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::star::{check_star, validate_epsilon};

use super::classify::{classify_graph, GraphKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Worker threads; results do not depend on it.
    pub threads: usize,
    /// Per-graph budget for the log terminal subset enumeration.
    pub subgraph_budget: usize,
    /// Cap on candidates (elliptic) or distinct graphs (closure).
    pub max_graphs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { threads: 1, subgraph_budget: DEFAULT_SUBGRAPH_BUDGET, max_graphs: 1 << 20 }
    }
}

impl SearchConfig {
    pub fn with_threads(threads: usize) -> Self {
        Self { threads, ..Self::default() }
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        if self.threads == 0 {
            return Err(Error::InvalidArgument("threads must be at least 1".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(pool.install(job))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedGraph {
    pub code: String,
    /// Vertices in canonical order.
    pub graph: WeightedGraph,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub count: usize,
    /// Max of `sum (weight - 2)` over the result.
    pub s1: i64,
    pub max_weight: u32,
    pub max_degree: usize,
    pub max_vertices: usize,
    /// Graphs per vertex count (elliptic) or per breadth-first level (closure).
    pub level_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub epsilon: Rational,
    pub seed: String,
    /// Sorted by canonical code, no repeats.
    pub graphs: Vec<EnumeratedGraph>,
    pub stats: EnumerationStats,
    /// The search reached a fixed point rather than its step limit.
    pub exhausted: bool,
    pub steps: usize,
}

impl EnumerationResult {
    fn build(epsilon: &Rational, seed: String, found: BTreeMap<String, WeightedGraph>, levels: Vec<usize>) -> Self {
        let graphs: Vec<EnumeratedGraph> =
            found.into_iter().map(|(code, graph)| EnumeratedGraph { code, graph }).collect();
        let stats = EnumerationStats {
            count: graphs.len(),
            s1: graphs.iter().map(|e| e.graph.excess_weight()).max().unwrap_or(0),
            max_weight: graphs.iter().map(|e| e.graph.max_weight()).max().unwrap_or(0),
            max_degree: graphs.iter().map(|e| e.graph.max_degree()).max().unwrap_or(0),
            max_vertices: graphs.iter().map(|e| e.graph.len()).max().unwrap_or(0),
            level_sizes: levels,
        };
        Self { epsilon: epsilon.clone(), seed, graphs, stats, exhausted: true, steps: 0 }
    }
}

/// Largest weight allowed on a genus-0 vertex under `*(eps)`.
pub fn weight_bound(eps: &Rational) -> u32 {
    floor(&(Rational::from_integer(2.into()) / eps)).to_u32().unwrap_or(u32::MAX)
}

/// Edge lists of the connected ADE trees on `n` vertices.
pub fn ade_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return Vec::new();
    }
    let path: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let mut out = vec![path];
    if n >= 4 {
        let mut d: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
        d.push((1, n - 1));
        out.push(d);
    }
    if (6..=8).contains(&n) {
        let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
        e.push((2, n - 1));
        out.push(e);
    }
    out
}

/// All minimal elliptic log terminal graphs satisfying `*(eps)` with at most
/// `max_vertices` vertices.
pub fn enumerate_minimal_elliptic_star(
    eps: &Rational,
    max_vertices: usize,
    config: &SearchConfig,
) -> Result<EnumerationResult> {
    validate_epsilon(eps)?;
    if max_vertices == 0 {
        return Err(Error::InvalidArgument("max_vertices must be at least 1".into()));
    }
    let top = weight_bound(eps);
    let mut candidates: Vec<WeightedGraph> = Vec::new();
    if top >= 2 {
        let span = (top - 1) as usize;
        for n in 1..=max_vertices {
            let per_shape = span.checked_pow(n as u32).unwrap_or(usize::MAX);
            for edges in ade_trees(n) {
                if candidates.len().saturating_add(per_shape) > config.max_graphs {
                    return Err(Error::BudgetExceeded { budget: config.max_graphs });
                }
                let mut weights = vec![2u32; n];
                loop {
                    candidates.push(WeightedGraph::from_edges(&weights, &edges));
                    if !next_tuple(&mut weights, 2, top) {
                        break;
                    }
                }
            }
        }
    }

    let budget = config.subgraph_budget;
    let checked: Vec<Result<Option<(String, WeightedGraph)>>> = config.run(|| {
        candidates
            .par_iter()
            .map(|g| {
                if classify_graph(g).kind != GraphKind::Elliptic || !check_star(g, eps)?.feasible {
                    return Ok(None);
                }
                if !is_log_terminal_graph(g, budget)?.log_terminal {
                    return Ok(None);
                }
                let cf = canonical_form(g);
                Ok(Some((cf.code, g.permuted(&cf.order))))
            })
            .collect()
    })?;

    let mut found = BTreeMap::new();
    for item in checked {
        if let Some((code, g)) = item? {
            found.entry(code).or_insert(g);
        }
    }
    let mut levels = vec![0; max_vertices + 1];
    for g in found.values() {
        levels[g.len()] += 1;
    }
    let seed = format!("ADE trees, weights 2..={top}, at most {max_vertices} vertices");
    Ok(EnumerationResult::build(eps, seed, found, levels))
}

fn next_tuple(t: &mut [u32], lo: u32, hi: u32) -> bool {
    for x in t.iter_mut().rev() {
        if *x < hi {
            *x += 1;
            return true;
        }
        *x = lo;
    }
    false
}

/// Lanner and `*(eps)`.
pub fn lanner_star(g: &WeightedGraph, eps: &Rational) -> Result<bool> {
    Ok(classify_graph(g).lanner && check_star(g, eps)?.feasible)
}

/// Children of `g` under one vertex blowup or one simple-edge blowup, in a
/// fixed order. New vertices are named `E1`, `E2`, ...
pub fn single_blowups(g: &WeightedGraph) -> Vec<WeightedGraph> {
    let fresh = g.fresh_id("E");
    let mut out = Vec::with_capacity(g.len() + g.edge_count());
    for v in g.vertices() {
        out.push(g.blowup_vertex(&v.id, &fresh).expect("vertex exists"));
    }
    for (i, j, m) in g.edges() {
        if m == 1 {
            let (a, b) = (&g.vertex(i).id, &g.vertex(j).id);
            out.push(g.blowup_edge(a, b, &fresh).expect("simple edge exists"));
        }
    }
    out
}

/// Breadth-first closure of a Lanner seed under blowups that keep the graph
/// Lanner and satisfying `*(eps)`.
pub fn lanner_blowup_search(
    seed: &WeightedGraph,
    eps: &Rational,
    max_steps: usize,
    config: &SearchConfig,
) -> Result<EnumerationResult> {
    validate_epsilon(eps)?;
    if !lanner_star(seed, eps)? {
        return Err(Error::Precondition(format!(
            "seed is not a Lanner graph satisfying *({})",
            format_rational(eps)
        )));
    }
    let seed_form = canonical_form(seed);
    let mut found: BTreeMap<String, WeightedGraph> = BTreeMap::new();
    found.insert(seed_form.code.clone(), seed.permuted(&seed_form.order));
    let mut frontier: Vec<String> = vec![seed_form.code];
    let mut levels = vec![1];
    let mut steps = 0;

    while !frontier.is_empty() && steps < max_steps {
        let parents: Vec<&WeightedGraph> = frontier.iter().map(|c| &found[c]).collect();
        let children: Vec<Result<Vec<(String, WeightedGraph)>>> = config.run(|| {
            parents
                .par_iter()
                .map(|g| {
                    let mut kept = Vec::new();
                    for child in single_blowups(g) {
                        if lanner_star(&child, eps)? {
                            let cf = canonical_form(&child);
                            kept.push((cf.code, child.permuted(&cf.order)));
                        }
                    }
                    Ok(kept)
                })
                .collect()
        })?;
        let mut next = BTreeSet::new();
        for batch in children {
            for (code, g) in batch? {
                if !found.contains_key(&code) {
                    if found.len() >= config.max_graphs {
                        return Err(Error::BudgetExceeded { budget: config.max_graphs });
                    }
                    found.insert(code.clone(), g);
                    next.insert(code);
                }
            }
        }
        steps += 1;
        levels.push(next.len());
        frontier = next.into_iter().collect();
    }

    let seed_desc = format!("Lanner seed {}", found_code_of(seed));
    let mut result = EnumerationResult::build(eps, seed_desc, found, levels);
    result.exhausted = frontier.is_empty();
    result.steps = steps;
    Ok(result)
}

fn found_code_of(g: &WeightedGraph) -> String {
    canonical_form(g).code
}

/// Weight bound `2/eps + 2` on the number of neighbours of a vertex in a
/// Lanner graph with `*(eps)`, from weight at least `d - 2` after the
/// required vertex blowups.
pub fn neighbor_bound(eps: &Rational) -> Rational {
    Rational::from_integer(2.into()) / eps + Rational::from_integer(2.into())
}

/// Max diameter over the connected graphs of a closure; a candidate for `d`.
pub fn diameter_sweep(result: &EnumerationResult) -> Option<usize> {
    result
        .graphs
        .iter()
        .filter_map(|e| match e.graph.diameter() {
            crate::graph::Diameter::Finite(d) => Some(d),
            crate::graph::Diameter::Disconnected => None,
        })
        .max()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LannerReduction {
    pub code: String,
    pub reduced: WeightedGraph,
    /// Tree, cycle, or cycle plus one vertex; simple edges; degree at most 3.
    pub conforms: bool,
}

/// Contracts weight-1 vertices of each closure graph with more than five
/// vertices while the graph stays Lanner, and records the shape reached.
pub fn minimal_lanner_audit(result: &EnumerationResult) -> Vec<LannerReduction> {
    result
        .graphs
        .iter()
        .filter(|e| e.graph.len() > 5)
        .map(|e| {
            let reduced = reduce_keeping_lanner(&e.graph);
            let conforms = minimal_lanner_shape(&reduced);
            LannerReduction { code: e.code.clone(), reduced, conforms }
        })
        .collect()
}

fn reduce_keeping_lanner(g: &WeightedGraph) -> WeightedGraph {
    let mut cur = g.clone();
    'outer: loop {
        for i in 0..cur.len() {
            if cur.is_contractible(i) {
                let down = cur.blowdown(&cur.vertex(i).id.clone()).expect("contractible");
                if classify_graph(&down).lanner {
                    cur = down;
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

fn minimal_lanner_shape(g: &WeightedGraph) -> bool {
    let simple = g.edges().all(|(_, _, m)| m == 1);
    if !simple || g.max_degree() > 3 || !g.is_connected() {
        return false;
    }
    // connected: cyclomatic number 0 is a tree, 1 is a single cycle with trees
    let cycles = g.edge_count() + 1 - g.len();
    match cycles {
        0 => true,
        1 => {
            // peel leaves down to the cycle, then count what hung off it
            let adj = g.adjacency();
            let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
            let mut alive = vec![true; g.len()];
            let mut stack: Vec<usize> = (0..g.len()).filter(|&i| deg[i] <= 1).collect();
            let mut peeled = 0;
            while let Some(i) = stack.pop() {
                if !alive[i] {
                    continue;
                }
                alive[i] = false;
                peeled += 1;
                for &j in &adj[i] {
                    if alive[j] {
                        deg[j] -= 1;
                        if deg[j] == 1 {
                            stack.push(j);
                        }
                    }
                }
            }
            peeled <= 1
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    #[test]
    fn ade_tree_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| ade_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 2, 3, 3, 3]);
    }

    #[test]
    fn elliptic_examples() {
        let cfg = SearchConfig::default();
        let r = enumerate_minimal_elliptic_star(&int(1), 8, &cfg).unwrap();
        assert_eq!(r.stats.count, 16);
        assert_eq!(r.stats.s1, 0);
        let r = enumerate_minimal_elliptic_star(&ratio(1, 2), 1, &cfg).unwrap();
        let weights: Vec<u32> = r.graphs.iter().map(|e| e.graph.vertex(0).weight).collect();
        assert_eq!(weights, vec![2, 3, 4]);
        assert!(enumerate_minimal_elliptic_star(&int(0), 1, &cfg).is_err());
        assert!(enumerate_minimal_elliptic_star(&int(1), 0, &cfg).is_err());
    }

    #[test]
    fn elliptic_budget() {
        let cfg = SearchConfig { max_graphs: 10, ..SearchConfig::default() };
        assert_eq!(
            enumerate_minimal_elliptic_star(&ratio(1, 2), 3, &cfg),
            Err(Error::BudgetExceeded { budget: 10 })
        );
    }

    #[test]
    fn closure_from_chain() {
        let seed = WeightedGraph::chain(&[1, 1, 1]);
        let cfg = SearchConfig::default();
        let zero = lanner_blowup_search(&seed, &ratio(1, 2), 0, &cfg).unwrap();
        assert_eq!(zero.stats.count, 1);
        assert!(!zero.exhausted);
        let r = lanner_blowup_search(&seed, &ratio(1, 2), 50, &cfg).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.stats.count, 103);
        assert_eq!(r.stats.level_sizes, vec![1, 2, 6, 21, 34, 27, 10, 2, 0]);
        assert!(Rational::from_integer(r.stats.max_degree.into()) <= neighbor_bound(&ratio(1, 2)));
        let err = lanner_blowup_search(&WeightedGraph::chain(&[2, 2]), &ratio(1, 2), 3, &cfg);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn closure_budget() {
        let seed = WeightedGraph::chain(&[1, 1, 1]);
        let cfg = SearchConfig { max_graphs: 5, ..SearchConfig::default() };
        assert_eq!(
            lanner_blowup_search(&seed, &ratio(1, 2), 50, &cfg),
            Err(Error::BudgetExceeded { budget: 5 })
        );
    }

    #[test]
    fn lanner_reductions_conform() {
        let seed = WeightedGraph::chain(&[1, 1, 1]);
        let r = lanner_blowup_search(&seed, &ratio(1, 2), 50, &SearchConfig::default()).unwrap();
        let audit = minimal_lanner_audit(&r);
        assert_eq!(audit.len(), r.graphs.iter().filter(|e| e.graph.len() > 5).count());
        for a in &audit {
            assert!(classify_graph(&a.reduced).lanner);
            assert!(a.reduced.len() <= 10);
        }
        assert!(diameter_sweep(&r).is_some());
    }
}
