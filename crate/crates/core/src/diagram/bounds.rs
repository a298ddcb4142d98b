use std::fmt;
use std::str::FromStr;

use num::{Signed, Zero};

use crate::arith::{format_rational, int, pow, ratio, Rational};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::star::{check_star, validate_epsilon};

use super::classify::{classify_graph, GraphKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundCase {
    Nu2,
    Nu1,
    Nu0,
}

impl BoundCase {
    pub fn constant(self) -> i64 {
        match self {
            BoundCase::Nu2 => 69,
            BoundCase::Nu1 => 70,
            BoundCase::Nu0 => 68,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundCase::Nu2 => "nu2",
            BoundCase::Nu1 => "nu1",
            BoundCase::Nu0 => "nu0",
        }
    }
}

impl fmt::Display for BoundCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nu2" => Ok(BoundCase::Nu2),
            "nu1" => Ok(BoundCase::Nu1),
            "nu0" => Ok(BoundCase::Nu0),
            other => Err(Error::InvalidArgument(format!("unknown case {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub case: BoundCase,
    pub c1: Rational,
    pub c2: Rational,
    /// Diameter parameter the constants came from, when known.
    pub d: Option<u32>,
    pub bound: Rational,
}

/// `96 (c1 + c2 / 3) + C` with `C` = 69, 70, 68 for the three cases.
pub fn nikulin_bound(case: BoundCase, c1: &Rational, c2: &Rational) -> Result<BoundReport> {
    for (name, c) in [("c1", c1), ("c2", c2)] {
        if c.is_negative() {
            return Err(Error::InvalidArgument(format!("{name} must be nonnegative, got {}", format_rational(c))));
        }
    }
    let bound = int(96) * (c1 + c2 / int(3)) + int(case.constant());
    Ok(BoundReport { case, c1: c1.clone(), c2: c2.clone(), d: None, bound })
}

/// `(c1, c2)` with `c1 = sum_{rho=1}^{d-1} q^rho / 2` and
/// `c2 = sum_{rho=d}^{2d-1} q^rho / 2`, where `q = 2/eps - 2`.
pub fn pair_bound_constants(eps: &Rational, d: u32) -> Result<(Rational, Rational)> {
    validate_epsilon(eps)?;
    if *eps > ratio(2, 3) {
        return Err(Error::EpsilonOutOfRange { value: format_rational(eps), constraint: "0 < eps <= 2/3" });
    }
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let q = int(2) / eps - int(2);
    let half = ratio(1, 2);
    let term = |rho: u32| &half * pow(&q, rho);
    let c1 = (1..d).map(term).fold(Rational::zero(), |a, b| a + b);
    let c2 = (d..2 * d).map(term).fold(Rational::zero(), |a, b| a + b);
    Ok((c1, c2))
}

/// `nikulin_bound` fed by `pair_bound_constants`.
pub fn composed_bound(case: BoundCase, eps: &Rational, d: u32) -> Result<BoundReport> {
    let (c1, c2) = pair_bound_constants(eps, d)?;
    let mut report = nikulin_bound(case, &c1, &c2)?;
    report.d = Some(d);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRow {
    pub rho: u32,
    pub pairs: usize,
    pub bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAudit {
    pub pass: bool,
    pub rows: Vec<PairRow>,
}

/// Number of vertex pairs at distance exactly `rho` against
/// `(n/2) (2/eps - 2)^rho`, for `rho` in `1 ..= 2d - 1`.
pub fn pair_bound_audit(g: &WeightedGraph, eps: &Rational, d: u32) -> Result<PairAudit> {
    validate_epsilon(eps)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if classify_graph(g).kind != GraphKind::Elliptic {
        return Err(Error::Precondition("graph is not elliptic".into()));
    }
    if !check_star(g, eps)?.feasible {
        return Err(Error::Precondition(format!("graph does not satisfy *({})", format_rational(eps))));
    }
    let q = int(2) / eps - int(2);
    let n = Rational::from_integer(g.len().into());
    let rows: Vec<PairRow> = (1..2 * d)
        .map(|rho| PairRow {
            rho,
            pairs: g.distance_pairs(rho as usize, rho as usize),
            bound: &n / int(2) * pow(&q, rho),
        })
        .collect();
    let pass = rows.iter().all(|r| Rational::from_integer(r.pairs.into()) <= r.bound);
    Ok(PairAudit { pass, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nikulin_examples() {
        assert_eq!(nikulin_bound(BoundCase::Nu2, &int(0), &int(0)).unwrap().bound, int(69));
        assert_eq!(nikulin_bound(BoundCase::Nu1, &int(1), &int(3)).unwrap().bound, int(262));
        assert_eq!(nikulin_bound(BoundCase::Nu0, &int(0), &int(3)).unwrap().bound, int(164));
        assert!(nikulin_bound(BoundCase::Nu0, &int(-1), &int(0)).is_err());
        assert_eq!("nu1".parse::<BoundCase>().unwrap(), BoundCase::Nu1);
        assert!("nu3".parse::<BoundCase>().is_err());
    }

    #[test]
    fn pair_constants() {
        let half = ratio(1, 2);
        assert_eq!(pair_bound_constants(&half, 1).unwrap(), (int(0), int(1)));
        assert_eq!(pair_bound_constants(&half, 2).unwrap(), (int(1), int(6)));
        assert_eq!(pair_bound_constants(&ratio(1, 3), 1).unwrap().0, int(0));
        assert!(pair_bound_constants(&ratio(3, 4), 1).is_err());
        assert!(pair_bound_constants(&half, 0).is_err());
        let r = composed_bound(BoundCase::Nu2, &half, 2).unwrap();
        assert_eq!(r.bound, int(96 * 3 + 69));
        assert_eq!(r.d, Some(2));
    }

    #[test]
    fn pair_audit_examples() {
        let half = ratio(1, 2);
        let a = pair_bound_audit(&WeightedGraph::chain(&[2, 2, 2]), &half, 2).unwrap();
        assert!(a.pass);
        let pairs: Vec<usize> = a.rows.iter().map(|r| r.pairs).collect();
        assert_eq!(pairs, vec![2, 1, 0]);
        assert_eq!(a.rows[0].bound, int(3));
        assert_eq!(a.rows[1].bound, int(6));
        assert!(pair_bound_audit(&WeightedGraph::chain(&[2]), &half, 2).unwrap().pass);
        assert!(pair_bound_audit(&WeightedGraph::chain(&[1, 1, 1]), &half, 2).is_err());
    }
}
