//! Condition `*(eps)`: there are `0 <= b_i <= 1 - eps` with
//! `(K + sum b_i F_i) . F_j <= 0` at every vertex `F_j`.

use num::{One, Signed, Zero};

use crate::arith::{feasible_box_lp, format_rational, Feasibility, LinearConstraint, Rational};
use crate::discrepancy::adjunction_values;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCertificate {
    pub epsilon: Rational,
    pub feasible: bool,
    /// Present iff `feasible`.
    pub witness: Option<Vec<Rational>>,
}

impl StarCertificate {
    /// Re-checks the witness against `g` by substitution.
    pub fn verify(&self, g: &WeightedGraph) -> bool {
        let Some(b) = &self.witness else {
            return !self.feasible;
        };
        let cap = Rational::one() - &self.epsilon;
        b.len() == g.len()
            && b.iter().all(|x| !x.is_negative() && *x <= cap)
            && adjunction_values(g, b)
                .map(|v| v.iter().all(|x| !x.is_positive()))
                .unwrap_or(false)
    }
}

pub fn validate_epsilon(eps: &Rational) -> Result<()> {
    if !eps.is_positive() || *eps > Rational::one() {
        return Err(Error::EpsilonOutOfRange {
            value: format_rational(eps),
            constraint: "0 < eps <= 1",
        });
    }
    Ok(())
}

/// One constraint per vertex `j`: `sum_i (F_i F_j) b_i <= -K F_j`, inside
/// the box `[0, 1 - eps]`.
pub fn check_star(g: &WeightedGraph, eps: &Rational) -> Result<StarCertificate> {
    validate_epsilon(eps)?;
    let m = g.intersection_matrix();
    let k = g.canonical_class().0;
    let n = g.len();
    let constraints: Vec<LinearConstraint> = (0..n)
        .map(|j| LinearConstraint::new((0..n).map(|i| m.get(i, j).clone()).collect(), -k[j].clone()))
        .collect();
    let cap = Rational::one() - eps;
    let bounds = vec![(Rational::zero(), cap); n];
    let cert = match feasible_box_lp(&constraints, &bounds)? {
        Feasibility::Feasible(b) => {
            StarCertificate { epsilon: eps.clone(), feasible: true, witness: Some(b) }
        }
        Feasibility::Infeasible => {
            StarCertificate { epsilon: eps.clone(), feasible: false, witness: None }
        }
    };
    debug_assert!(cert.verify(g));
    Ok(cert)
}

/// `*(eps)` for the induced subgraph on `subset`; requires `g` itself to
/// satisfy `*(eps)`.
pub fn star_closure_subgraph(g: &WeightedGraph, eps: &Rational, subset: &[usize]) -> Result<bool> {
    require_feasible(g, eps)?;
    if let Some(&bad) = subset.iter().find(|&&i| i >= g.len()) {
        return Err(Error::InvalidArgument(format!("vertex index {bad} out of range")));
    }
    Ok(check_star(&g.induced_subgraph(subset), eps)?.feasible)
}

/// `*(eps)` after blowing down `e`; requires `g` itself to satisfy `*(eps)`.
pub fn star_closure_blowdown(g: &WeightedGraph, eps: &Rational, e: &str) -> Result<bool> {
    require_feasible(g, eps)?;
    let down = g.blowdown(e)?;
    Ok(check_star(&down, eps)?.feasible)
}

fn require_feasible(g: &WeightedGraph, eps: &Rational) -> Result<()> {
    if !check_star(g, eps)?.feasible {
        return Err(Error::Precondition(format!(
            "graph does not satisfy *({})",
            format_rational(eps)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    fn single(w: u32, genus: u32) -> WeightedGraph {
        let mut g = WeightedGraph::new();
        g.add_vertex("F", w, genus).unwrap();
        g
    }

    #[test]
    fn single_vertex_examples() {
        let half = ratio(1, 2);
        let c = check_star(&single(2, 0), &half).unwrap();
        assert!(c.feasible);
        assert_eq!(c.witness, Some(vec![int(0)]));
        assert!(!check_star(&single(5, 0), &half).unwrap().feasible);
        // boundary: weight 4 needs b = 1/2 = 1 - eps exactly
        let c = check_star(&single(4, 0), &half).unwrap();
        assert_eq!(c.witness, Some(vec![half.clone()]));
        for w in 1..=6 {
            assert!(!check_star(&single(w, 1), &ratio(1, 100)).unwrap().feasible);
        }
    }

    #[test]
    fn epsilon_range() {
        let g = single(2, 0);
        assert!(check_star(&g, &int(0)).is_err());
        assert!(check_star(&g, &ratio(3, 2)).is_err());
        assert!(check_star(&g, &int(1)).unwrap().feasible);
    }

    #[test]
    fn closure_operations() {
        let half = ratio(1, 2);
        let g = WeightedGraph::chain(&[2, 2]).blowup_vertex("v0", "E").unwrap();
        assert!(check_star(&g, &half).unwrap().feasible);
        assert!(star_closure_subgraph(&g, &half, &[0, 1, 2]).unwrap());
        assert!(star_closure_subgraph(&g, &half, &[]).unwrap());
        assert!(star_closure_blowdown(&g, &half, "E").unwrap());
        assert!(matches!(
            star_closure_subgraph(&single(5, 0), &half, &[0]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            star_closure_blowdown(&g, &half, "v1"),
            Err(Error::NotContractible { .. })
        ));
    }

    #[test]
    fn witness_verifies_and_is_monotone_in_eps() {
        let g = WeightedGraph::from_edges(&[3, 2, 2, 3], &[(0, 1), (1, 2), (1, 3)]);
        let c = check_star(&g, &ratio(1, 3)).unwrap();
        assert!(c.verify(&g));
        if c.feasible {
            assert!(check_star(&g, &ratio(1, 4)).unwrap().feasible);
        }
    }
}
