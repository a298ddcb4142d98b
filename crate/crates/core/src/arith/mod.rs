//! Exact numeric substrate: rationals, symmetric matrices, inertia, linear
//! solving and linear feasibility.

mod feasibility;
mod matrix;
pub mod rational;

pub use feasibility::{feasible_box_lp, Feasibility, LinearConstraint};
pub use matrix::{signature, solve_linear, LinearSolution, Signature, SingularReport, SymMatrix};
pub use rational::{floor, format_rational, int, parse_rational, pow, ratio, Rational};
