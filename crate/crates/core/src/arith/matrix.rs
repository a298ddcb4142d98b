use std::fmt;

use num::{One, Signed, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Dense symmetric matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix { dim, entries: vec![Rational::zero(); dim * dim] }
    }

    /// Builds a matrix from rows, rejecting non-square or asymmetric input.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare { row, len: r.len(), dim });
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.dim + j] = value.clone();
        self.entries[j * self.dim + i] = value;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(|r| r.to_vec()).collect()
    }

    /// Principal submatrix on the given indices (in the given order).
    pub fn principal(&self, indices: &[usize]) -> SymMatrix {
        let dim = indices.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j).clone());
            }
        }
        SymMatrix { dim, entries }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * &x[j]).sum())
            .collect())
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.dim {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.dim {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Inertia `(n_plus, n_zero, n_minus)` of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Signature {
    pub fn new(n_plus: usize, n_zero: usize, n_minus: usize) -> Self {
        Signature { n_plus, n_zero, n_minus }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n_plus, self.n_zero, self.n_minus)
    }
}

/// Exact inertia by symmetric (congruence) elimination.
///
/// A nonzero diagonal pivot is eliminated from both rows and columns. When the
/// remaining diagonal is entirely zero but some off-diagonal `a_ij` is not,
/// row/column `j` is added to row/column `i`, which puts `2 a_ij` on the
/// diagonal. Each step is a congruence, so the count of pivot signs is the
/// inertia by Sylvester's law.
pub fn signature(m: &SymMatrix) -> Signature {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = m.rows();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);

    while !alive.is_empty() {
        let pivot = alive.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let off = alive.iter().enumerate().find_map(|(k, &i)| {
                    alive[k + 1..].iter().copied().find(|&j| !a[i][j].is_zero()).map(|j| (i, j))
                });
                match off {
                    None => break,
                    Some((i, j)) => {
                        // row_i += row_j, then col_i += col_j
                        for &k in &alive {
                            let v = &a[i][k] + &a[j][k];
                            a[i][k] = v;
                        }
                        for &k in &alive {
                            let v = &a[k][i] + &a[k][j];
                            a[k][i] = v;
                        }
                        i
                    }
                }
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        alive.retain(|&i| i != p);
        for &i in &alive {
            if a[i][p].is_zero() {
                continue;
            }
            let factor = &a[i][p] / &d;
            for &j in &alive {
                if a[p][j].is_zero() {
                    continue;
                }
                let v = &a[i][j] - &factor * &a[p][j];
                a[i][j] = v;
            }
        }
    }
    Signature::new(pos, n - pos - neg, neg)
}

/// Diagnostic returned when a linear system has no unique solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularReport {
    pub rank: usize,
    /// A nonzero vector `k` with `m k = 0`.
    pub kernel: Vec<Rational>,
    /// Whether `m x = rhs` has any solution at all.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    Singular(SingularReport),
}

/// Solves `m x = rhs` exactly by Gauss-Jordan elimination.
pub fn solve_linear(m: &SymMatrix, rhs: &[Rational]) -> Result<LinearSolution> {
    let n = m.dim();
    if rhs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: rhs.len() });
    }
    // augmented rows [m | rhs]
    let mut a: Vec<Vec<Rational>> = m
        .rows()
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let v = &a[r][c] - &factor * &a[row][c];
                    a[r][c] = v;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }

    let rank = pivot_cols.len();
    if rank == n {
        return Ok(LinearSolution::Unique(a.into_iter().map(|r| r[n].clone()).collect()));
    }

    let consistent = a[rank..].iter().all(|r| r[n].is_zero());
    // kernel vector from the first free column
    let free = (0..n).find(|c| !pivot_cols.contains(c)).expect("rank < n");
    let mut kernel = vec![Rational::zero(); n];
    kernel[free] = Rational::one();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        kernel[pc] = -a[r][free].clone();
    }
    Ok(LinearSolution::Singular(SingularReport { rank, kernel, consistent }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;

    fn m(rows: &[Vec<i64>]) -> SymMatrix {
        SymMatrix::from_integers(rows).unwrap()
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&m(&[vec![-2]])), Signature::new(0, 0, 1));
        assert_eq!(signature(&m(&[vec![-2, 1], vec![1, -2]])), Signature::new(0, 0, 2));
        let lanner = m(&[vec![-1, 1, 0], vec![1, -1, 1], vec![0, 1, -1]]);
        assert_eq!(signature(&lanner), Signature::new(1, 0, 2));
    }

    #[test]
    fn signature_with_zero_diagonal() {
        // hyperbolic plane
        assert_eq!(signature(&m(&[vec![0, 1], vec![1, 0]])), Signature::new(1, 0, 1));
        assert_eq!(signature(&m(&[vec![0, 0], vec![0, 0]])), Signature::new(0, 2, 0));
        let z = m(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(signature(&z), Signature::new(1, 0, 2));
        assert_eq!(signature(&SymMatrix::zeros(0)), Signature::new(0, 0, 0));
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(
            SymMatrix::from_integers(&[vec![1, 2], vec![3, 1]]),
            Err(Error::NotSymmetric(0, 1))
        );
        assert!(matches!(
            SymMatrix::from_integers(&[vec![1, 2], vec![3]]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn solve_examples() {
        let sol = solve_linear(&m(&[vec![-2]]), &[int(0)]).unwrap();
        assert_eq!(sol, LinearSolution::Unique(vec![int(0)]));
        let sol = solve_linear(&m(&[vec![-2, 1], vec![1, -2]]), &[int(0), int(0)]).unwrap();
        assert_eq!(sol, LinearSolution::Unique(vec![int(0), int(0)]));
        let sol = solve_linear(&m(&[vec![-3]]), &[int(1)]).unwrap();
        assert_eq!(sol, LinearSolution::Unique(vec![ratio(-1, 3)]));
    }

    #[test]
    fn singular_report_has_kernel_and_consistency() {
        let cyc = m(&[vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]]);
        let LinearSolution::Singular(rep) = solve_linear(&cyc, &[int(0), int(0), int(0)]).unwrap()
        else {
            panic!("expected singular");
        };
        assert_eq!(rep.rank, 2);
        assert!(rep.consistent);
        assert!(cyc.mul_vec(&rep.kernel).unwrap().iter().all(Zero::is_zero));
        assert!(rep.kernel.iter().any(|v| !v.is_zero()));

        let LinearSolution::Singular(rep) = solve_linear(&cyc, &[int(1), int(0), int(0)]).unwrap()
        else {
            panic!("expected singular");
        };
        assert!(!rep.consistent);
    }

    #[test]
    fn solve_rejects_wrong_rhs_length() {
        assert!(solve_linear(&m(&[vec![1]]), &[]).is_err());
    }
}
