mod common;

use common::arb_graph;
use diagramkit::arith::{feasible_box_lp, int, ratio, signature, Feasibility, LinearConstraint, Rational, Signature};
use diagramkit::canonical::canonical_form;
use diagramkit::dcc::{hurwitz_quotient_transform, is_dcc_witnessed, CoefficientSet};
use diagramkit::graph_file::{parse_graph, serialize_graph};
use diagramkit::star::check_star;
use diagramkit::WeightedGraph;
use num::{Signed, Zero};
use proptest::prelude::*;

fn shuffled(n: usize, seed: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    for (i, s) in seed.iter().enumerate().take(n.saturating_sub(1)) {
        let j = i + s % (n - i);
        order.swap(i, j);
    }
    order
}

fn sig(g: &WeightedGraph) -> Signature {
    signature(&g.intersection_matrix())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn signature_is_permutation_invariant(g in arb_graph(7, 5), seed in proptest::collection::vec(0usize..100, 7)) {
        let order = shuffled(g.len(), &seed);
        prop_assert_eq!(sig(&g.permuted(&order)), sig(&g));
    }

    #[test]
    fn canonical_form_ignores_relabelling(g in arb_graph(7, 4), seed in proptest::collection::vec(0usize..100, 7)) {
        let order = shuffled(g.len(), &seed);
        prop_assert_eq!(canonical_form(&g.permuted(&order)).code, canonical_form(&g).code);
    }

    #[test]
    fn vertex_blowup_round_trips_and_shifts_signature(g in arb_graph(6, 5), pick in 0usize..100) {
        let v = g.vertex(pick % g.len()).id.clone();
        let up = g.blowup_vertex(&v, "X").unwrap();
        let (s, t) = (sig(&g), sig(&up));
        prop_assert_eq!(Signature::new(s.n_plus, s.n_zero, s.n_minus + 1), t);
        prop_assert_eq!(up.blowdown("X").unwrap(), g);
    }

    #[test]
    fn edge_blowup_round_trips_and_shifts_signature(g in arb_graph(6, 5), pick in 0usize..100) {
        let simple: Vec<(usize, usize)> = g.edges().filter(|e| e.2 == 1).map(|e| (e.0, e.1)).collect();
        prop_assume!(!simple.is_empty());
        let (i, j) = simple[pick % simple.len()];
        let up = g.blowup_edge(&g.vertex(i).id, &g.vertex(j).id, "X").unwrap();
        let (s, t) = (sig(&g), sig(&up));
        prop_assert_eq!(Signature::new(s.n_plus, s.n_zero, s.n_minus + 1), t);
        prop_assert_eq!(up.blowdown("X").unwrap(), g);
    }

    #[test]
    fn graph_file_round_trips(g in arb_graph(7, 9)) {
        prop_assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn star_is_monotone_in_epsilon(g in arb_graph(5, 5)) {
        // smaller eps is weaker
        let ladder = [int(1), ratio(2, 3), ratio(1, 2), ratio(2, 5), ratio(1, 3), ratio(1, 10)];
        let mut seen_feasible = false;
        for eps in &ladder {
            let c = check_star(&g, eps).unwrap();
            prop_assert!(c.verify(&g));
            prop_assert!(!seen_feasible || c.feasible);
            seen_feasible |= c.feasible;
        }
    }

    #[test]
    fn feasibility_witness_is_valid_and_grid_points_are_found(
        rows in proptest::collection::vec((-3i64..=3, -3i64..=3, -6i64..=6), 1..5),
        lo in -2i64..=0, width in 0i64..=3,
    ) {
        let constraints: Vec<LinearConstraint> = rows
            .iter()
            .map(|&(a, b, c)| LinearConstraint::new(vec![int(a), int(b)], int(c)))
            .collect();
        let bounds = vec![(int(lo), int(lo + width)); 2];
        let result = feasible_box_lp(&constraints, &bounds).unwrap();
        if let Feasibility::Feasible(w) = &result {
            prop_assert!(constraints.iter().all(|c| c.holds_at(w)));
            prop_assert!(w.iter().all(|x| *x >= int(lo) && *x <= int(lo + width)));
        }
        // any grid point that works forces a feasible verdict
        let steps = 12 * width;
        let grid_hit = (0..=steps).any(|i| (0..=steps).any(|j| {
            let x = vec![int(lo) + ratio(i, 12), int(lo) + ratio(j, 12)];
            constraints.iter().all(|c| c.holds_at(&x))
        }));
        if grid_hit {
            prop_assert!(result.is_feasible());
        }
    }

    #[test]
    fn dcc_thresholds_are_finite_and_bounded_below(num in 0i64..1000) {
        let s = CoefficientSet::standard();
        let t = ratio(num, 1000);
        let below = s.below_threshold(&t).unwrap();
        prop_assert!(below.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(below.iter().all(|x| s.contains(x) && *x <= t));
        let min = s.min_positive().unwrap();
        prop_assert!(below.iter().filter(|x| x.is_positive()).all(|x| *x >= min));
    }

    #[test]
    fn quotient_image_contains_the_set(max_m in 1u64..4, terms in 1usize..3, max_n in 1u64..3) {
        let s: CoefficientSet = "1/3,1/2,family:1:1:2".parse().unwrap();
        let r = hurwitz_quotient_transform(&s, max_m, terms, max_n).unwrap();
        prop_assert!(r.set.finite.iter().all(|x| !x.is_negative() && *x <= int(1)));
        for b in s.truncated_members(max_m).0 {
            prop_assert!(r.set.contains(&b));
        }
        // m = 1 with no summands gives 0
        prop_assert!(r.set.contains(&Rational::zero()));
    }

    #[test]
    fn decreasing_chain_is_a_decreasing_subsequence(xs in proptest::collection::vec(0i64..20, 0..40)) {
        let values: Vec<Rational> = xs.iter().map(|&x| int(x)).collect();
        let r = is_dcc_witnessed(&values, xs.len());
        prop_assert!(r.within);
        prop_assert!(r.chain.windows(2).all(|w| w[0] > w[1]));
        let mut it = values.iter();
        prop_assert!(r.chain.iter().all(|c| it.any(|v| v == c)));
        // quadratic reference
        let n = values.len();
        let mut best = vec![1usize; n];
        for i in 0..n {
            for j in 0..i {
                if values[j] > values[i] {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
        }
        prop_assert_eq!(r.longest, best.into_iter().max().unwrap_or(0));
    }
}
