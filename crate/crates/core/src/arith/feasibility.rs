//! Exact feasibility of `{ x : lo <= x <= hi, A x <= b }` by Fourier-Motzkin
//! elimination.
//!
//! After each elimination step rows are normalised so that their first nonzero
//! coefficient is `+-1`; rows with the same coefficient vector collapse to the
//! one with the smallest bound. Witnesses are produced by back-substitution,
//! taking the smallest admissible value for each variable.

use std::collections::BTreeMap;

use num::{Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// One inequality `coeffs . x <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub bound: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, bound: Rational) -> Self {
        LinearConstraint { coeffs, bound }
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        lhs <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

/// Rows keyed by their normalised coefficient vector; value is the tightest bound.
type RowSet = BTreeMap<Vec<Rational>, Rational>;

enum Insert {
    Kept,
    Contradiction,
}

fn insert_row(rows: &mut RowSet, mut coeffs: Vec<Rational>, mut bound: Rational) -> Insert {
    let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) else {
        return if bound.is_negative() { Insert::Contradiction } else { Insert::Kept };
    };
    if lead != Rational::from_integer(1.into()) {
        for c in coeffs.iter_mut() {
            *c /= &lead;
        }
        bound /= &lead;
    }
    rows.entry(coeffs)
        .and_modify(|b| {
            if bound < *b {
                *b = bound.clone();
            }
        })
        .or_insert(bound);
    Insert::Kept
}

/// Decides feasibility of the box-constrained system and returns a witness
/// satisfying every constraint exactly.
pub fn feasible_box_lp(
    constraints: &[LinearConstraint],
    bounds: &[(Rational, Rational)],
) -> Result<Feasibility> {
    let n = bounds.len();
    for c in constraints {
        if c.coeffs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: c.coeffs.len() });
        }
    }
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        if lo > hi {
            return Err(Error::EmptyBox(i));
        }
    }
    if n == 0 {
        if let Some((i, c)) = constraints.iter().enumerate().find(|(_, c)| c.bound.is_negative()) {
            return Err(Error::DegenerateInput(i, format_rational(&c.bound)));
        }
        return Ok(Feasibility::Feasible(Vec::new()));
    }

    let mut rows = RowSet::new();
    let unit = |i: usize, sign: i64| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::from_integer(sign.into());
        v
    };
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        insert_row(&mut rows, unit(i, 1), hi.clone());
        insert_row(&mut rows, unit(i, -1), -lo.clone());
    }
    for c in constraints {
        if let Insert::Contradiction = insert_row(&mut rows, c.coeffs.clone(), c.bound.clone()) {
            return Ok(Feasibility::Infeasible);
        }
    }

    let mut alive: Vec<usize> = (0..n).collect();
    // (variable, rows mentioning it at the moment it was eliminated)
    let mut stages: Vec<(usize, Vec<(Vec<Rational>, Rational)>)> = Vec::with_capacity(n);

    while !alive.is_empty() {
        let var = pick_variable(&rows, &alive);
        alive.retain(|&v| v != var);

        let mut upper = Vec::new();
        let mut lower = Vec::new();
        let mut rest = RowSet::new();
        for (coeffs, bound) in std::mem::take(&mut rows) {
            let a = &coeffs[var];
            if a.is_positive() {
                upper.push((coeffs, bound));
            } else if a.is_negative() {
                lower.push((coeffs, bound));
            } else {
                rest.insert(coeffs, bound);
            }
        }
        for (pc, pb) in &upper {
            let pa = pc[var].clone();
            for (nc, nb) in &lower {
                let na = -nc[var].clone();
                // pc/pa + nc/na eliminates var
                let coeffs: Vec<Rational> =
                    pc.iter().zip(nc).map(|(p, q)| p / &pa + q / &na).collect();
                let bound = pb / &pa + nb / &na;
                if let Insert::Contradiction = insert_row(&mut rest, coeffs, bound) {
                    return Ok(Feasibility::Infeasible);
                }
            }
        }
        rows = rest;
        upper.extend(lower);
        stages.push((var, upper));
    }

    let mut x = vec![Rational::zero(); n];
    for (var, stage_rows) in stages.iter().rev() {
        let mut lo: Option<Rational> = None;
        for (coeffs, bound) in stage_rows {
            let a = &coeffs[*var];
            let others: Rational = coeffs
                .iter()
                .enumerate()
                .filter(|(j, _)| j != var)
                .map(|(j, c)| c * &x[j])
                .sum();
            let limit = (bound - others) / a;
            if a.is_negative() && lo.as_ref().is_none_or(|l| limit > *l) {
                lo = Some(limit);
            }
        }
        x[*var] = lo.expect("every variable keeps its lower box row");
    }
    debug_assert!(constraints.iter().all(|c| c.holds_at(&x)));
    Ok(Feasibility::Feasible(x))
}

/// Variable whose elimination creates the fewest new rows.
fn pick_variable(rows: &RowSet, alive: &[usize]) -> usize {
    alive
        .iter()
        .copied()
        .min_by_key(|&v| {
            let (mut p, mut q) = (0usize, 0usize);
            for coeffs in rows.keys() {
                if coeffs[v].is_positive() {
                    p += 1;
                } else if coeffs[v].is_negative() {
                    q += 1;
                }
            }
            (p * q).saturating_sub(p + q)
        })
        .expect("alive is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};

    #[test]
    fn infeasible_single_variable() {
        let c = [LinearConstraint::new(vec![int(-1)], int(-2))];
        let r = feasible_box_lp(&c, &[(int(0), int(1))]).unwrap();
        assert_eq!(r, Feasibility::Infeasible);
    }

    #[test]
    fn no_constraints_gives_lower_corner() {
        let r = feasible_box_lp(&[], &[(int(0), int(1))]).unwrap();
        assert_eq!(r, Feasibility::Feasible(vec![int(0)]));
    }

    #[test]
    fn interval_intersection() {
        let c = [
            LinearConstraint::new(vec![int(1)], ratio(1, 3)),
            LinearConstraint::new(vec![int(-1)], int(0)),
        ];
        let r = feasible_box_lp(&c, &[(int(0), ratio(1, 2))]).unwrap();
        let w = r.witness().unwrap();
        assert!(c.iter().all(|c| c.holds_at(w)));
        assert_eq!(w, &[int(0)]);
    }

    #[test]
    fn witness_takes_smallest_values() {
        // x + y >= 1, 0 <= x,y <= 1
        let c = [LinearConstraint::new(vec![int(-1), int(-1)], int(-1))];
        let r = feasible_box_lp(&c, &[(int(0), int(1)), (int(0), int(1))]).unwrap();
        let w = r.witness().unwrap().to_vec();
        assert!(c[0].holds_at(&w));
        assert_eq!(w.iter().sum::<Rational>(), int(1));
    }

    #[test]
    fn error_paths() {
        let c = [LinearConstraint::new(vec![int(1), int(1)], int(0))];
        assert!(matches!(
            feasible_box_lp(&c, &[(int(0), int(1))]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(feasible_box_lp(&[], &[(int(1), int(0))]), Err(Error::EmptyBox(0)));
        let bad = [LinearConstraint::new(vec![], int(-1))];
        assert!(matches!(feasible_box_lp(&bad, &[]), Err(Error::DegenerateInput(0, _))));
        let ok = [LinearConstraint::new(vec![], int(0))];
        assert_eq!(feasible_box_lp(&ok, &[]).unwrap(), Feasibility::Feasible(vec![]));
    }

    #[test]
    fn coupled_system_infeasible() {
        // x - y <= -1, y - x <= -1 is contradictory
        let c = [
            LinearConstraint::new(vec![int(1), int(-1)], int(-1)),
            LinearConstraint::new(vec![int(-1), int(1)], int(-1)),
        ];
        let r = feasible_box_lp(&c, &[(int(-5), int(5)), (int(-5), int(5))]).unwrap();
        assert_eq!(r, Feasibility::Infeasible);
    }
}
