//! Canonical labelling of weighted graphs, used as a deduplication key.
//!
//! Colour refinement on `(weight, genus)` plus the multiset of
//! `(multiplicity, neighbour colour)` gives an ordered partition; remaining
//! ties are broken by individualising each vertex of the first non-singleton
//! cell in turn. Every complete ordering yields a code string and the
//! smallest one wins. Vertex ids do not take part.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::graph::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    /// Equal for two graphs iff they are isomorphic.
    pub code: String,
    /// `order[p]` is the vertex placed at canonical position `p`.
    pub order: Vec<usize>,
}

pub fn canonical_form(g: &WeightedGraph) -> CanonicalForm {
    let n = g.len();
    if n == 0 {
        return CanonicalForm { code: encode(g, &[]), order: Vec::new() };
    }
    let adj: Vec<Vec<(usize, u32)>> = g
        .adjacency()
        .into_iter()
        .enumerate()
        .map(|(i, nbrs)| nbrs.into_iter().map(|j| (j, g.multiplicity(i, j))).collect())
        .collect();

    let initial: Vec<(u32, u32)> = g.vertices().iter().map(|v| (v.weight, v.genus)).collect();
    let colors = refine(&adj, relabel(&initial));

    let mut best: Option<CanonicalForm> = None;
    search(g, &adj, colors, &mut best);
    best.expect("search visits at least one leaf")
}

/// The graph relabelled into canonical vertex order (ids are kept).
pub fn canonical_graph(g: &WeightedGraph) -> WeightedGraph {
    g.permuted(&canonical_form(g).order)
}

fn relabel<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present")).collect()
}

fn class_count(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}

/// Refines until the number of colour classes stops growing. New colours are
/// sorted by `(old colour, neighbourhood)` so the cell order is preserved.
fn refine(adj: &[Vec<(usize, u32)>], mut colors: Vec<usize>) -> Vec<usize> {
    loop {
        let keys: Vec<(usize, Vec<(u32, usize)>)> = colors
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut nb: Vec<(u32, usize)> = adj[i].iter().map(|&(j, m)| (m, colors[j])).collect();
                nb.sort_unstable();
                (c, nb)
            })
            .collect();
        let next = relabel(&keys);
        if class_count(&next) == class_count(&colors) {
            return next;
        }
        colors = next;
    }
}

fn search(
    g: &WeightedGraph,
    adj: &[Vec<(usize, u32)>],
    colors: Vec<usize>,
    best: &mut Option<CanonicalForm>,
) {
    let n = colors.len();
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(i);
    }
    let Some((&target, cell)) = cells.iter().find(|(_, members)| members.len() > 1) else {
        let mut order = vec![0; n];
        for (i, &c) in colors.iter().enumerate() {
            order[c] = i;
        }
        let code = encode(g, &order);
        if best.as_ref().is_none_or(|b| code < b.code) {
            *best = Some(CanonicalForm { code, order });
        }
        return;
    };
    for &v in cell {
        // v goes first inside its cell: doubled keys leave room for it
        let split: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(i, &c)| if c == target && i != v { 2 * c + 1 } else { 2 * c })
            .collect();
        let refined = refine(adj, relabel(&split));
        search(g, adj, refined, best);
    }
}

fn encode(g: &WeightedGraph, order: &[usize]) -> String {
    let mut pos = vec![0; order.len()];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    let mut s = format!("n{}|", order.len());
    for (k, &i) in order.iter().enumerate() {
        let v = g.vertex(i);
        if k > 0 {
            s.push(',');
        }
        write!(s, "{}.{}", v.weight, v.genus).expect("write to String");
    }
    s.push('|');
    let mut edges: Vec<(usize, usize, u32)> = g
        .edges()
        .map(|(i, j, m)| {
            let (a, b) = (pos[i], pos[j]);
            (a.min(b), a.max(b), m)
        })
        .collect();
    edges.sort_unstable();
    for (k, (a, b, m)) in edges.into_iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        write!(s, "{a}-{b}:{m}").expect("write to String");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_chains_agree() {
        let a = WeightedGraph::chain(&[2, 3]);
        let b = WeightedGraph::chain(&[3, 2]);
        assert_eq!(canonical_form(&a).code, canonical_form(&b).code);
    }

    #[test]
    fn distinguishes_weight_position() {
        let a = WeightedGraph::chain(&[1, 1, 2]);
        let b = WeightedGraph::chain(&[1, 2, 1]);
        assert_ne!(canonical_form(&a).code, canonical_form(&b).code);
    }

    #[test]
    fn distinguishes_genus_and_multiplicity() {
        let mut a = WeightedGraph::new();
        a.add_vertex("x", 2, 0).unwrap();
        let mut b = WeightedGraph::new();
        b.add_vertex("x", 2, 1).unwrap();
        assert_ne!(canonical_form(&a).code, canonical_form(&b).code);

        let mut c = WeightedGraph::from_edges(&[3, 3], &[]);
        let mut d = c.clone();
        c.add_edge("v0", "v1", 1).unwrap();
        d.add_edge("v0", "v1", 2).unwrap();
        assert_ne!(canonical_form(&c).code, canonical_form(&d).code);
    }

    #[test]
    fn permutation_invariant() {
        let g = WeightedGraph::from_edges(&[2, 2, 2, 2, 3], &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        let code = canonical_form(&g).code;
        for order in [[4, 3, 2, 1, 0], [1, 0, 3, 2, 4], [2, 4, 0, 3, 1]] {
            assert_eq!(canonical_form(&g.permuted(&order)).code, code);
        }
    }

    #[test]
    fn regular_graphs_need_backtracking() {
        // 6-cycle vs two triangles: same degrees and weights everywhere
        let hex = WeightedGraph::cycle(&[2; 6]);
        let two = WeightedGraph::from_edges(&[2; 6], &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_ne!(canonical_form(&hex).code, canonical_form(&two).code);
        let rotated = hex.permuted(&[3, 4, 5, 0, 1, 2]);
        assert_eq!(canonical_form(&rotated).code, canonical_form(&hex).code);
    }

    #[test]
    fn canonical_graph_encodes_to_same_code() {
        let g = WeightedGraph::from_edges(&[1, 4, 2, 1], &[(0, 1), (1, 2), (1, 3)]);
        let cg = canonical_graph(&g);
        let identity: Vec<usize> = (0..cg.len()).collect();
        assert_eq!(encode(&cg, &identity), canonical_form(&g).code);
    }
}
