use std::collections::{BTreeMap, BTreeSet};

use crate::arith::Rational;
use crate::discrepancy::{is_log_terminal_graph, DEFAULT_SUBGRAPH_BUDGET};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::star::{check_star, validate_epsilon};

use super::classify::{classify_graph, GraphKind};

const PERSISTENCE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Horizon {
    /// Least `k` with `Gamma_k` not Lanner; `persistent` records whether
    /// `Gamma_k .. Gamma_{k+5}` are all non-Lanner.
    Found { k: usize, persistent: bool },
    NotFound { k_max: usize },
}

/// The tower `Gamma_k`: blow up `v`, then the new vertex, and so on, `k` times.
pub fn vertex_tower(g: &WeightedGraph, v: &str, k: usize) -> Result<WeightedGraph> {
    let mut cur = g.clone();
    let mut target = v.to_string();
    for _ in 0..k {
        let fresh = cur.fresh_id("E");
        cur = cur.blowup_vertex(&target, &fresh)?;
        target = fresh;
    }
    Ok(cur)
}

pub fn vertex_blowup_horizon(g: &WeightedGraph, v: &str, k_max: usize) -> Result<Horizon> {
    if classify_graph(g).kind != GraphKind::Hyperbolic {
        return Err(Error::Precondition("graph is not hyperbolic".into()));
    }
    if g.index_of(v).is_none() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let mut cur = g.clone();
    let mut target = v.to_string();
    for k in 1..=k_max {
        let fresh = cur.fresh_id("E");
        cur = cur.blowup_vertex(&target, &fresh)?;
        target = fresh;
        if !classify_graph(&cur).lanner {
            let mut persistent = true;
            for _ in 0..PERSISTENCE {
                let fresh = cur.fresh_id("E");
                cur = cur.blowup_vertex(&target, &fresh)?;
                target = fresh;
                persistent &= !classify_graph(&cur).lanner;
            }
            return Ok(Horizon::Found { k, persistent });
        }
    }
    Ok(Horizon::NotFound { k_max })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightAudit {
    pub pass: bool,
    /// Distinct graphs satisfying `*(eps)`, the seed included.
    pub graphs: usize,
    pub max_height: usize,
    /// Distinct vertex positions seen at each height `1, 2, ...`.
    pub vertices_per_height: Vec<usize>,
    /// Set when the search hit its graph cap.
    pub truncated: bool,
}

/// Edge-only blowup towers over the chain `(2, 2)`.
///
/// Every new vertex sits between two older ones and is labelled by the sum
/// of their positions, starting from `(1, 0)` and `(0, 1)`, so a graph is
/// determined by the set of positions it contains. Height is `1 + max` of
/// the endpoint heights. The audit passes when every graph that satisfies
/// `*(eps)` has `2 h <= s1` and height `h` holds at most `2^(h-1)` vertices.
pub fn edge_blowup_height_audit(eps: &Rational, s1: &Rational) -> Result<HeightAudit> {
    edge_blowup_height_audit_capped(eps, s1, 1 << 16)
}

pub fn edge_blowup_height_audit_capped(eps: &Rational, s1: &Rational, max_graphs: usize) -> Result<HeightAudit> {
    validate_epsilon(eps)?;
    type Pos = (u64, u64);
    let height = |p: &Pos, heights: &BTreeMap<Pos, usize>| heights[p];

    let mut seed = WeightedGraph::new();
    seed.add_vertex(&pos_id((1, 0)), 2, 0)?;
    seed.add_vertex(&pos_id((0, 1)), 2, 0)?;
    seed.add_edge(&pos_id((1, 0)), &pos_id((0, 1)), 1)?;

    let mut heights: BTreeMap<Pos, usize> = BTreeMap::from([((1, 0), 0), ((0, 1), 0)]);
    let mut seen: BTreeSet<BTreeSet<Pos>> = BTreeSet::new();
    let mut frontier: Vec<(WeightedGraph, Vec<Pos>)> = Vec::new();
    if check_star(&seed, eps)?.feasible {
        seen.insert(BTreeSet::from([(1, 0), (0, 1)]));
        frontier.push((seed, vec![(1, 0), (0, 1)]));
    }
    let mut truncated = false;
    let mut per_height: BTreeMap<usize, BTreeSet<Pos>> = BTreeMap::new();
    let mut max_height = 0;

    while let Some((g, pos)) = frontier.pop() {
        for h in pos.iter().map(|p| height(p, &heights)) {
            max_height = max_height.max(h);
        }
        for (i, j, _) in g.edges().collect::<Vec<_>>() {
            let (a, b) = (pos[i], pos[j]);
            let p = (a.0 + b.0, a.1 + b.1);
            let child = g.blowup_edge(&g.vertex(i).id, &g.vertex(j).id, &pos_id(p))?;
            let mut child_pos = pos.clone();
            child_pos.push(p);
            let key: BTreeSet<Pos> = child_pos.iter().copied().collect();
            if seen.contains(&key) || !check_star(&child, eps)?.feasible {
                continue;
            }
            if seen.len() >= max_graphs {
                truncated = true;
                continue;
            }
            let h = 1 + height(&a, &heights).max(height(&b, &heights));
            heights.insert(p, h);
            per_height.entry(h).or_default().insert(p);
            seen.insert(key);
            frontier.push((child, child_pos));
        }
    }

    let two = Rational::from_integer(2.into());
    let heights_ok = Rational::from_integer(max_height.into()) * &two <= *s1;
    let counts: Vec<usize> = (1..=max_height).map(|h| per_height.get(&h).map_or(0, BTreeSet::len)).collect();
    let counts_ok = counts.iter().enumerate().all(|(i, &c)| c <= 1usize << i);
    Ok(HeightAudit {
        pass: heights_ok && counts_ok && !truncated,
        graphs: seen.len(),
        max_height,
        vertices_per_height: counts,
        truncated,
    })
}

fn pos_id((a, b): (u64, u64)) -> String {
    format!("p{a}_{b}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerStep {
    pub k: usize,
    pub log_terminal: bool,
    pub witness: Option<Vec<String>>,
    pub witness_min: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E9Report {
    pub steps: Vec<TowerStep>,
    /// Log terminal for `k <= 5` and not for `k = 6, 7`.
    pub holds: bool,
    /// Not log terminal for `k = 6, 7`.
    pub tail_holds: bool,
    /// Largest `k` with `Gamma_k` log terminal, if any.
    pub last_log_terminal: Option<usize>,
}

/// `Gamma_1`: blow up the edge of the seed; `Gamma_k`: blow up `E_{k-1}`.
pub fn edge_then_vertex_tower(seed: &WeightedGraph, k: usize) -> Result<WeightedGraph> {
    let (i, j, m) = seed
        .edges()
        .next()
        .ok_or_else(|| Error::Precondition("seed has no edge".into()))?;
    if m != 1 {
        return Err(Error::NonSimpleEdge(seed.vertex(i).id.clone(), seed.vertex(j).id.clone(), m));
    }
    if k == 0 {
        return Ok(seed.clone());
    }
    let first = seed.blowup_edge(&seed.vertex(i).id, &seed.vertex(j).id, "E1")?;
    let mut cur = first;
    for step in 2..=k {
        cur = cur.blowup_vertex(&format!("E{}", step - 1), &format!("E{step}"))?;
    }
    Ok(cur)
}

pub fn e9_tower_check(seed: &WeightedGraph, k_max: usize) -> Result<Vec<TowerStep>> {
    (1..=k_max)
        .map(|k| {
            let g = edge_then_vertex_tower(seed, k)?;
            let r = is_log_terminal_graph(&g, DEFAULT_SUBGRAPH_BUDGET)?;
            Ok(TowerStep {
                k,
                log_terminal: r.log_terminal,
                witness: r.witness.map(|w| w.iter().map(|&i| g.vertex(i).id.clone()).collect()),
                witness_min: r.witness_min,
            })
        })
        .collect()
}

/// The tower over two weight-2 vertices joined by a simple edge.
pub fn e9_lemma_check() -> E9Report {
    let seed = WeightedGraph::chain(&[2, 2]);
    let steps = e9_tower_check(&seed, 7).expect("tower over a simple edge");
    let lt = |k: usize| steps[k - 1].log_terminal;
    let tail_holds = !lt(6) && !lt(7);
    let holds = (1..=5).all(lt) && tail_holds;
    let last_log_terminal = steps.iter().filter(|s| s.log_terminal).map(|s| s.k).max();
    E9Report { steps, holds, tail_holds, last_log_terminal }
}
