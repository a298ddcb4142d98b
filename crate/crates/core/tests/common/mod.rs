#![allow(dead_code)]

use diagramkit::WeightedGraph;
use diagramkit_oracles::Q;
use proptest::prelude::*;
use rand::Rng;

pub fn oracle_data(g: &WeightedGraph) -> (Vec<Vec<Q>>, Vec<Q>) {
    let weights: Vec<u32> = g.vertices().iter().map(|v| v.weight).collect();
    let genera: Vec<u32> = g.vertices().iter().map(|v| v.genus).collect();
    let edges: Vec<(usize, usize, u32)> = g.edges().collect();
    diagramkit_oracles::graph_data(&weights, &genera, &edges)
}

pub fn to_oracle_q(r: &diagramkit::Rational) -> Q {
    Q::new(r.numer().clone(), r.denom().clone())
}

/// Random graph: weights `1..=max_weight`, mostly genus 0, edge
/// multiplicities mostly 1.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize, max_weight: u32, edge_p: f64) -> WeightedGraph {
    let n = rng.gen_range(1..=max_n);
    let mut g = WeightedGraph::new();
    for i in 0..n {
        let genus = u32::from(rng.gen_bool(0.1));
        g.add_vertex(&format!("v{i}"), rng.gen_range(1..=max_weight), genus).unwrap();
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_p) {
                let m = if rng.gen_bool(0.85) { 1 } else { 2 };
                g.add_edge(&format!("v{i}"), &format!("v{j}"), m).unwrap();
            }
        }
    }
    g
}

prop_compose! {
    pub fn arb_graph(max_n: usize, max_weight: u32)
        (n in 1..=max_n)
        (weights in proptest::collection::vec(1..=max_weight, n),
         genera in proptest::collection::vec(prop_oneof![9 => Just(0u32), 1 => Just(1u32)], n),
         edges in proptest::collection::vec(prop_oneof![3 => Just(0u32), 2 => Just(1u32), 1 => Just(2u32)], n * (n - 1) / 2))
        -> WeightedGraph
    {
        let mut g = WeightedGraph::new();
        for (i, (w, genus)) in weights.iter().zip(&genera).enumerate() {
            g.add_vertex(&format!("v{i}"), *w, *genus).unwrap();
        }
        let mut k = 0;
        for i in 0..weights.len() {
            for j in i + 1..weights.len() {
                if edges[k] > 0 {
                    g.add_edge(&format!("v{i}"), &format!("v{j}"), edges[k]).unwrap();
                }
                k += 1;
            }
        }
        g
    }
}
