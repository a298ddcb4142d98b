//! Weighted graphs of exceptional curves and their blowup calculus.
//!
//! A vertex stands for a curve `F` and carries its weight `-F^2 >= 1` and
//! arithmetic genus. An edge between two vertices carries the intersection
//! number `F_1 F_2 >= 1`; absent pairs intersect in zero.

use std::collections::{BTreeMap, VecDeque};

use crate::arith::{int, Rational, SymMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub weight: u32,
    pub genus: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    vertices: Vec<Vertex>,
    /// keyed by `(i, j)` with `i < j`
    edges: BTreeMap<(usize, usize), u32>,
}

/// Per-vertex values `K . F_i = weight - 2 + 2 genus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalClassVector(pub Vec<Rational>);

/// One recorded blowdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowdownStep {
    pub vertex: String,
    pub neighbors: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Disconnected,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: &str, weight: u32, genus: u32) -> Result<usize> {
        if self.index_of(id).is_some() {
            return Err(Error::DuplicateVertex(id.to_string()));
        }
        if weight == 0 {
            return Err(Error::NonPositiveWeight(id.to_string()));
        }
        self.vertices.push(Vertex { id: id.to_string(), weight, genus });
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(&mut self, a: &str, b: &str, multiplicity: u32) -> Result<()> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        if i == j {
            return Err(Error::SelfEdge(a.to_string()));
        }
        if multiplicity == 0 {
            return Err(Error::ZeroMultiplicity(a.to_string(), b.to_string()));
        }
        if self.edges.contains_key(&key(i, j)) {
            return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
        }
        self.edges.insert(key(i, j), multiplicity);
        Ok(())
    }

    /// Chain `v0 - v1 - ...` of genus-0 vertices joined by simple edges.
    pub fn chain(weights: &[u32]) -> Self {
        let mut g = Self::with_vertices(weights);
        for i in 1..weights.len() {
            g.edges.insert((i - 1, i), 1);
        }
        g
    }

    /// Cycle of genus-0 vertices joined by simple edges (needs >= 3 vertices).
    pub fn cycle(weights: &[u32]) -> Self {
        assert!(weights.len() >= 3, "a cycle needs at least three vertices");
        let mut g = Self::chain(weights);
        g.edges.insert((0, weights.len() - 1), 1);
        g
    }

    /// Genus-0 vertices `v0, v1, ...` with the given weights and simple edges.
    pub fn from_edges(weights: &[u32], edges: &[(usize, usize)]) -> Self {
        let mut g = Self::with_vertices(weights);
        for &(i, j) in edges {
            assert!(i != j && i < weights.len() && j < weights.len(), "bad edge ({i}, {j})");
            g.edges.insert(key(i, j), 1);
        }
        g
    }

    fn with_vertices(weights: &[u32]) -> Self {
        let vertices = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| {
                assert!(w >= 1, "weights must be positive");
                Vertex { id: format!("v{i}"), weight: w, genus: 0 }
            })
            .collect();
        WeightedGraph { vertices, edges: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    /// Edges as `(i, j, multiplicity)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        self.edges.get(&key(i, j)).copied().unwrap_or(0)
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).len()
    }

    /// Adjacency lists, each sorted.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(i, j) in self.edges.keys() {
            adj[i].push(j);
            adj[j].push(i);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        adj
    }

    /// First id of the form `{prefix}{k}`, `k = 1, 2, ...`, not yet in use.
    pub fn fresh_id(&self, prefix: &str) -> String {
        (1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|id| self.index_of(id).is_none())
            .expect("infinitely many candidates")
    }

    /// Induced subgraph on `indices`, keeping their relative order.
    pub fn induced_subgraph(&self, indices: &[usize]) -> WeightedGraph {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let pos: BTreeMap<usize, usize> = sorted.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let vertices = sorted.iter().map(|&i| self.vertices[i].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|(&(i, j), &m)| Some(((*pos.get(&i)?, *pos.get(&j)?), m)))
            .collect();
        WeightedGraph { vertices, edges }
    }

    /// Same graph with vertices listed in `order` (a permutation of indices).
    pub fn permuted(&self, order: &[usize]) -> WeightedGraph {
        assert_eq!(order.len(), self.len(), "order must be a permutation");
        let mut pos = vec![usize::MAX; self.len()];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        let vertices = order.iter().map(|&i| self.vertices[i].clone()).collect();
        let edges = self.edges.iter().map(|(&(i, j), &m)| (key(pos[i], pos[j]), m)).collect();
        WeightedGraph { vertices, edges }
    }

    /// The matrix `(F_i F_j)`: `-weight` on the diagonal, multiplicities off it.
    pub fn intersection_matrix(&self) -> SymMatrix {
        let n = self.len();
        let mut m = SymMatrix::zeros(n);
        for (i, v) in self.vertices.iter().enumerate() {
            m.set(i, i, int(-i64::from(v.weight)));
        }
        for (&(i, j), &mult) in &self.edges {
            m.set(i, j, int(i64::from(mult)));
        }
        m
    }

    pub fn canonical_class(&self) -> CanonicalClassVector {
        CanonicalClassVector(
            self.vertices
                .iter()
                .map(|v| int(i64::from(v.weight) - 2 + 2 * i64::from(v.genus)))
                .collect(),
        )
    }

    /// Adds `new_id` (weight 1, genus 0) attached to `v` by a simple edge and
    /// raises the weight of `v` by one.
    pub fn blowup_vertex(&self, v: &str, new_id: &str) -> Result<WeightedGraph> {
        let i = self.require(v)?;
        if self.index_of(new_id).is_some() {
            return Err(Error::DuplicateVertex(new_id.to_string()));
        }
        let mut g = self.clone();
        g.vertices[i].weight += 1;
        let e = g.add_vertex(new_id, 1, 0)?;
        g.edges.insert(key(i, e), 1);
        Ok(g)
    }

    /// Replaces the simple edge `u - v` by a path `u - new_id - v` and raises
    /// the weights of `u` and `v` by one.
    pub fn blowup_edge(&self, u: &str, v: &str, new_id: &str) -> Result<WeightedGraph> {
        let i = self.require(u)?;
        let j = self.require(v)?;
        match self.multiplicity(i, j) {
            0 => return Err(Error::MissingEdge(u.to_string(), v.to_string())),
            1 => {}
            m => return Err(Error::NonSimpleEdge(u.to_string(), v.to_string(), m)),
        }
        if self.index_of(new_id).is_some() {
            return Err(Error::DuplicateVertex(new_id.to_string()));
        }
        let mut g = self.clone();
        g.edges.remove(&key(i, j));
        g.vertices[i].weight += 1;
        g.vertices[j].weight += 1;
        let e = g.add_vertex(new_id, 1, 0)?;
        g.edges.insert(key(i, e), 1);
        g.edges.insert(key(j, e), 1);
        Ok(g)
    }

    /// Why vertex `i` cannot be blown down, or `None` if it can.
    pub fn contractibility_violation(&self, i: usize) -> Option<String> {
        let v = &self.vertices[i];
        if v.weight != 1 {
            return Some(format!("weight is {}, not 1", v.weight));
        }
        if v.genus != 0 {
            return Some(format!("genus is {}, not 0", v.genus));
        }
        let nbrs = self.neighbors(i);
        if nbrs.len() > 2 {
            return Some(format!("{} neighbors, at most 2 allowed", nbrs.len()));
        }
        if let Some(&n) = nbrs.iter().find(|&&n| self.multiplicity(i, n) != 1) {
            return Some(format!("edge to `{}` is not simple", self.vertices[n].id));
        }
        if nbrs.len() == 2 && self.multiplicity(nbrs[0], nbrs[1]) != 0 {
            return Some("its two neighbors are already adjacent".to_string());
        }
        if nbrs.iter().any(|&n| self.vertices[n].weight < 2) {
            return Some("a neighbor would drop to weight 0".to_string());
        }
        None
    }

    pub fn is_contractible(&self, i: usize) -> bool {
        self.contractibility_violation(i).is_none()
    }

    /// Inverse of [`blowup_vertex`](Self::blowup_vertex) and
    /// [`blowup_edge`](Self::blowup_edge).
    pub fn blowdown(&self, e: &str) -> Result<WeightedGraph> {
        let i = self.require(e)?;
        if let Some(reason) = self.contractibility_violation(i) {
            return Err(Error::NotContractible { id: e.to_string(), reason });
        }
        let nbrs = self.neighbors(i);
        let mut g = self.clone();
        for &n in &nbrs {
            g.vertices[n].weight -= 1;
        }
        if let [a, b] = nbrs[..] {
            g.edges.insert(key(a, b), 1);
        }
        g.remove_vertex(i);
        Ok(g)
    }

    fn remove_vertex(&mut self, i: usize) {
        self.vertices.remove(i);
        let shift = |k: usize| if k > i { k - 1 } else { k };
        self.edges = std::mem::take(&mut self.edges)
            .into_iter()
            .filter(|&((a, b), _)| a != i && b != i)
            .map(|((a, b), m)| ((shift(a), shift(b)), m))
            .collect();
    }

    pub fn is_minimal(&self) -> bool {
        !self.vertices.iter().any(|v| v.weight == 1 && v.genus == 0)
    }

    /// Blows down contractible vertices, always the first one in vertex order,
    /// until none is left.
    pub fn reduce_to_minimal(&self) -> (WeightedGraph, Vec<BlowdownStep>) {
        self.reduce_to_minimal_with(|candidates| candidates[0])
    }

    /// Like [`reduce_to_minimal`](Self::reduce_to_minimal) but `choose` picks
    /// which of the currently contractible vertices goes next.
    pub fn reduce_to_minimal_with<F>(&self, mut choose: F) -> (WeightedGraph, Vec<BlowdownStep>)
    where
        F: FnMut(&[usize]) -> usize,
    {
        let mut g = self.clone();
        let mut log = Vec::new();
        loop {
            let candidates: Vec<usize> = (0..g.len()).filter(|&i| g.is_contractible(i)).collect();
            if candidates.is_empty() {
                return (g, log);
            }
            let i = choose(&candidates);
            let id = g.vertices[i].id.clone();
            let neighbors = g.neighbors(i).into_iter().map(|n| g.vertices[n].id.clone()).collect();
            g = g.blowdown(&id).expect("candidate is contractible");
            log.push(BlowdownStep { vertex: id, neighbors });
        }
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let adj = self.adjacency();
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have a distance");
            for &w in &adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Number of unordered pairs at hop distance in `[rho_min, rho_max]`.
    pub fn distance_pairs(&self, rho_min: usize, rho_max: usize) -> usize {
        (0..self.len())
            .map(|i| {
                self.distances_from(i)
                    .into_iter()
                    .skip(i + 1)
                    .flatten()
                    .filter(|d| (rho_min..=rho_max).contains(d))
                    .count()
            })
            .sum()
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for i in 0..self.len() {
            for d in self.distances_from(i) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Diameter::Disconnected,
                }
            }
        }
        Diameter::Finite(best)
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let comp: Vec<usize> = self
                .distances_from(s)
                .iter()
                .enumerate()
                .filter_map(|(i, d)| d.map(|_| i))
                .collect();
            for &i in &comp {
                seen[i] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty()
            && self.is_connected()
            && self.edge_count() + 1 == self.len()
            && self.edges.values().all(|&m| m == 1)
    }

    /// Sum of `weight - 2` over all vertices.
    pub fn excess_weight(&self) -> i64 {
        self.vertices.iter().map(|v| i64::from(v.weight) - 2).sum()
    }

    pub fn max_weight(&self) -> u32 {
        self.vertices.iter().map(|v| v.weight).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|i| self.degree(i)).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{signature, Signature};

    fn single(w: u32, g: u32) -> WeightedGraph {
        let mut gr = WeightedGraph::new();
        gr.add_vertex("A", w, g).unwrap();
        gr
    }

    #[test]
    fn intersection_matrix_examples() {
        assert_eq!(single(2, 0).intersection_matrix(), SymMatrix::from_integers(&[vec![-2]]).unwrap());
        assert_eq!(
            WeightedGraph::chain(&[2, 2]).intersection_matrix(),
            SymMatrix::from_integers(&[vec![-2, 1], vec![1, -2]]).unwrap()
        );
        let b = 5;
        assert_eq!(
            WeightedGraph::chain(&[1, 1, b]).intersection_matrix(),
            SymMatrix::from_integers(&[vec![-1, 1, 0], vec![1, -1, 1], vec![0, 1, -i64::from(b)]])
                .unwrap()
        );
    }

    #[test]
    fn canonical_class_examples() {
        assert_eq!(single(2, 0).canonical_class().0, vec![int(0)]);
        assert_eq!(single(1, 0).canonical_class().0, vec![int(-1)]);
        assert_eq!(single(3, 0).canonical_class().0, vec![int(1)]);
        assert_eq!(single(3, 2).canonical_class().0, vec![int(5)]);
    }

    #[test]
    fn construction_errors() {
        let mut g = WeightedGraph::new();
        g.add_vertex("A", 2, 0).unwrap();
        assert_eq!(g.add_vertex("A", 2, 0), Err(Error::DuplicateVertex("A".into())));
        assert_eq!(g.add_vertex("B", 0, 0), Err(Error::NonPositiveWeight("B".into())));
        g.add_vertex("B", 2, 0).unwrap();
        assert_eq!(g.add_edge("A", "A", 1), Err(Error::SelfEdge("A".into())));
        assert!(matches!(g.add_edge("A", "B", 0), Err(Error::ZeroMultiplicity(..))));
        assert_eq!(g.add_edge("A", "C", 1), Err(Error::UnknownVertex("C".into())));
        g.add_edge("A", "B", 2).unwrap();
        assert!(matches!(g.add_edge("B", "A", 1), Err(Error::DuplicateEdge(..))));
    }

    #[test]
    fn blowup_vertex_examples() {
        let g = single(2, 0).blowup_vertex("A", "E").unwrap();
        assert_eq!(g.vertex(0).weight, 3);
        assert_eq!(g.vertex(1), &Vertex { id: "E".into(), weight: 1, genus: 0 });
        assert_eq!(g.multiplicity(0, 1), 1);

        let g = single(1, 0).blowup_vertex("A", "E1").unwrap().blowup_vertex("E1", "E2").unwrap();
        let w: Vec<u32> = g.vertices().iter().map(|v| v.weight).collect();
        assert_eq!(w, vec![2, 2, 1]);
        assert_eq!(g.multiplicity(0, 1), 1);
        assert_eq!(g.multiplicity(1, 2), 1);
        assert_eq!(g.multiplicity(0, 2), 0);

        assert!(matches!(single(2, 0).blowup_vertex("X", "E"), Err(Error::UnknownVertex(_))));
        assert!(matches!(single(2, 0).blowup_vertex("A", "A"), Err(Error::DuplicateVertex(_))));
    }

    #[test]
    fn blowup_edge_examples() {
        let a2 = WeightedGraph::chain(&[2, 2]);
        let g = a2.blowup_edge("v0", "v1", "E").unwrap();
        let w: Vec<u32> = g.vertices().iter().map(|v| v.weight).collect();
        assert_eq!(w, vec![3, 3, 1]);
        assert_eq!(g.multiplicity(0, 1), 0);
        assert_eq!(g.multiplicity(0, 2), 1);
        assert_eq!(g.multiplicity(1, 2), 1);
        assert_eq!(signature(&g.intersection_matrix()), Signature::new(0, 0, 3));

        let mut double = WeightedGraph::new();
        double.add_vertex("A", 3, 0).unwrap();
        double.add_vertex("B", 3, 0).unwrap();
        double.add_edge("A", "B", 2).unwrap();
        assert_eq!(
            double.blowup_edge("A", "B", "E"),
            Err(Error::NonSimpleEdge("A".into(), "B".into(), 2))
        );
        assert!(matches!(
            WeightedGraph::chain(&[2, 2, 2]).blowup_edge("v0", "v2", "E"),
            Err(Error::MissingEdge(..))
        ));
    }

    #[test]
    fn blowdown_examples() {
        let g = WeightedGraph::chain(&[2, 1, 2]);
        let d = g.blowdown("v1").unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.vertex(0).weight, 1);
        assert_eq!(d.vertex(1).weight, 1);
        assert_eq!(d.multiplicity(0, 1), 1);

        let a3 = WeightedGraph::chain(&[2, 2, 2]);
        assert_eq!(a3.blowup_vertex("v1", "E").unwrap().blowdown("E").unwrap(), a3);
        assert_eq!(a3.blowup_edge("v1", "v2", "E").unwrap().blowdown("E").unwrap(), a3);
    }

    #[test]
    fn blowdown_rejections() {
        assert!(matches!(
            WeightedGraph::chain(&[2, 2]).blowdown("v0"),
            Err(Error::NotContractible { .. })
        ));
        let mut g1 = single(1, 1);
        assert!(matches!(g1.blowdown("A"), Err(Error::NotContractible { .. })));
        g1 = WeightedGraph::from_edges(&[2, 2, 2, 1], &[(0, 3), (1, 3), (2, 3)]);
        assert!(matches!(g1.blowdown("v3"), Err(Error::NotContractible { .. })));
        // neighbors already adjacent
        let tri = WeightedGraph::cycle(&[2, 2, 1]);
        assert!(matches!(tri.blowdown("v2"), Err(Error::NotContractible { .. })));
        // nonsimple incidence
        let mut m = WeightedGraph::new();
        m.add_vertex("A", 3, 0).unwrap();
        m.add_vertex("E", 1, 0).unwrap();
        m.add_edge("A", "E", 2).unwrap();
        assert!(matches!(m.blowdown("E"), Err(Error::NotContractible { .. })));
    }

    #[test]
    fn reduce_to_minimal_examples() {
        let a2 = WeightedGraph::chain(&[2, 2]);
        let (r, log) = a2.reduce_to_minimal();
        assert_eq!(r, a2);
        assert!(log.is_empty());

        let up = a2.blowup_vertex("v0", "E").unwrap();
        let (r, log) = up.reduce_to_minimal();
        assert_eq!(r, a2);
        assert_eq!(log.len(), 1);
    }

    #[test]
    fn distances_and_diameter() {
        let a3 = WeightedGraph::chain(&[2, 2, 2]);
        assert_eq!(a3.distance_pairs(1, 1), 2);
        assert_eq!(a3.distance_pairs(2, 2), 1);
        assert_eq!(WeightedGraph::cycle(&[2, 2, 2]).distance_pairs(1, 1), 3);
        assert_eq!(single(2, 0).diameter(), Diameter::Finite(0));
        assert_eq!(WeightedGraph::chain(&[2, 2, 2, 2]).diameter(), Diameter::Finite(3));
        let two = WeightedGraph::from_edges(&[2, 2], &[]);
        assert_eq!(two.diameter(), Diameter::Disconnected);
        assert_eq!(two.distance_pairs(1, 5), 0);
    }

    #[test]
    fn induced_and_permuted() {
        let g = WeightedGraph::chain(&[2, 3, 4]);
        let s = g.induced_subgraph(&[2, 1]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.vertex(0).weight, 3);
        assert_eq!(s.multiplicity(0, 1), 1);
        let p = g.permuted(&[2, 0, 1]);
        assert_eq!(p.vertex(0).weight, 4);
        assert_eq!(p.multiplicity(0, 2), 1);
        assert_eq!(p.multiplicity(0, 1), 0);
    }
}
