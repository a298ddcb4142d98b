use diagramkit::arith::{int, ratio, Rational};
use diagramkit::corpus::star_corpus;
use diagramkit::dcc::{is_dcc_witnessed, CoefficientSet};
use diagramkit::diagram::*;
use diagramkit::discrepancy::DEFAULT_SUBGRAPH_BUDGET;
use diagramkit::star::check_star;
use diagramkit::WeightedGraph;

#[test]
fn lanner_graphs_lose_hyperbolicity_after_removing_two_vertices() {
    let half = ratio(1, 2);
    let corpus = star_corpus(&half, &SearchConfig::default()).unwrap();
    let lanner: Vec<&WeightedGraph> = corpus.iter().map(|e| &e.graph).filter(|g| classify_graph(g).lanner).collect();
    assert!(lanner.len() > 50);
    for g in lanner {
        let n = g.len();
        for a in 0..n {
            for b in a + 1..n {
                let rest: Vec<usize> = (0..n).filter(|&i| i != a && i != b).collect();
                let kind = classify_graph(&g.induced_subgraph(&rest)).kind;
                assert_eq!(kind, GraphKind::Elliptic, "{g:?} minus {a}, {b}");
            }
        }
    }
}

#[test]
fn closure_degrees_respect_weight_argument() {
    let half = ratio(1, 2);
    let r = lanner_blowup_search(&WeightedGraph::chain(&[1, 1, 1]), &half, 64, &SearchConfig::default()).unwrap();
    let bound = neighbor_bound(&half);
    for e in &r.graphs {
        assert!(Rational::from_integer(e.graph.max_degree().into()) <= bound);
    }
    // a closure member with more than 2/eps - 2 neighbours at one vertex
    let star = WeightedGraph::from_edges(&[4, 1, 1, 1, 1, 1], &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
    assert!(classify_graph(&star).lanner);
    assert!(check_star(&star, &half).unwrap().feasible);
    assert!(r.graphs.iter().any(|e| e.graph.max_degree() == 5));
}

#[test]
fn minimal_lanner_reductions_are_reported() {
    let r = lanner_blowup_search(&WeightedGraph::chain(&[1, 1, 1]), &ratio(1, 2), 64, &SearchConfig::default())
        .unwrap();
    let audit = minimal_lanner_audit(&r);
    let failing = audit.iter().filter(|a| !a.conforms).count();
    eprintln!("minimal Lanner audit: {} reduced, {} outside the tree/cycle shapes", audit.len(), failing);
    assert!(!audit.is_empty());
    eprintln!("diameter sweep: d = {:?}", diameter_sweep(&r));
}

#[test]
fn elliptic_enumerations_are_well_formed() {
    let cfg = SearchConfig::default();
    let mut last_s1 = -1;
    for eps in [int(1), ratio(2, 3), ratio(1, 2), ratio(2, 5)] {
        let r = enumerate_minimal_elliptic_star(&eps, 5, &cfg).unwrap();
        let top = weight_bound(&eps);
        for e in &r.graphs {
            assert!(e.graph.vertices().iter().all(|v| v.genus == 0 && v.weight <= top && v.weight >= 2));
            let shape = check_minimal_elliptic_shape(&e.graph, DEFAULT_SUBGRAPH_BUDGET).unwrap();
            assert!(shape.ok && shape.log_terminal, "{:?}", e.graph);
        }
        assert!(r.stats.s1 >= last_s1, "S1 must not drop as eps decreases");
        last_s1 = r.stats.s1;
    }
}

#[test]
fn enumeration_is_independent_of_thread_count() {
    let half = ratio(1, 2);
    let seed = WeightedGraph::chain(&[1, 1, 1]);
    let one = lanner_blowup_search(&seed, &half, 64, &SearchConfig::with_threads(1)).unwrap();
    let four = lanner_blowup_search(&seed, &half, 64, &SearchConfig::with_threads(4)).unwrap();
    assert_eq!(one, four);
    let a = enumerate_minimal_elliptic_star(&half, 5, &SearchConfig::with_threads(1)).unwrap();
    let b = enumerate_minimal_elliptic_star(&half, 5, &SearchConfig::with_threads(3)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn pair_counts_hold_on_elliptic_corpus() {
    let half = ratio(1, 2);
    let corpus = star_corpus(&half, &SearchConfig::default()).unwrap();
    let mut checked = 0;
    for e in &corpus {
        if classify_graph(&e.graph).kind == GraphKind::Elliptic {
            assert!(pair_bound_audit(&e.graph, &half, 2).unwrap().pass, "{:?}", e.graph);
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn standard_sample_has_short_decreasing_chains() {
    let s = CoefficientSet::standard();
    let sample = s.sample(1000 - s.finite.len() as u64);
    assert_eq!(sample.len(), 1000);
    let r = is_dcc_witnessed(&sample, s.families.len() + s.finite.len());
    assert!(r.within, "{}", r.longest);
}

#[test]
fn e9_tower_over_other_seeds() {
    // measured: largest k with Gamma_k log terminal
    for ((a, b), last) in [((2, 2), 3), ((2, 3), 3), ((3, 3), 2), ((1, 2), 6), ((2, 4), 3)] {
        let seed = WeightedGraph::chain(&[a, b]);
        let steps = e9_tower_check(&seed, 8).unwrap();
        let lt: Vec<bool> = steps.iter().map(|s| s.log_terminal).collect();
        eprintln!("seed ({a},{b}): {lt:?}");
        // once not log terminal, stays so: later towers contain earlier witnesses
        assert!(lt.windows(2).all(|w| w[0] || !w[1]));
        assert_eq!(lt.iter().rposition(|&x| x).map(|i| i + 1), Some(last), "seed ({a},{b})");
        assert!(!lt[6], "k = 7 is never log terminal here");
    }
}
