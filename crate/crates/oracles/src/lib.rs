//! Slow, independent reference computations for cross-checking.
//!
//! Nothing here shares code with `diagramkit`: inertia comes from the
//! characteristic polynomial (Faddeev-LeVerrier) and Sturm sequences,
//! log terminality from all vertex subsets, `*(eps)` from polytope
//! vertices, and tree isomorphism from AHU encodings.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

// ---------------------------------------------------------------- polynomials

/// Ascending coefficients, no trailing zeros; the zero polynomial is empty.
pub type Poly = Vec<Q>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty") / &lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &f * c;
        }
        r = trim(r);
    }
    r
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// `det(x I - A)`.
pub fn char_poly(a: &[Vec<Q>]) -> Poly {
    let n = a.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = Q::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -tr / q(k as i64);
    }
    trim(coeffs)
}

fn sign_changes(values: impl Iterator<Item = Q>) -> usize {
    let signs: Vec<bool> = values.filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn eval(p: &Poly, x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            return chain;
        }
        let r: Poly = rem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        chain.push(r);
    }
}

/// Distinct positive and negative real roots of `p`, assuming `p(0) != 0`.
fn distinct_signed_roots(p: &Poly) -> (usize, usize) {
    let chain = sturm_chain(p);
    let at_zero = sign_changes(chain.iter().map(|s| eval(s, &Q::zero())));
    let at_pos = sign_changes(chain.iter().map(|s| s.last().cloned().unwrap_or_default()));
    let at_neg = sign_changes(chain.iter().map(|s| {
        let lead = s.last().cloned().unwrap_or_default();
        if degree(s) % 2 == 1 {
            -lead
        } else {
            lead
        }
    }));
    (at_zero - at_pos, at_neg - at_zero)
}

/// `(positive, zero, negative)` eigenvalue counts of a symmetric matrix.
///
/// Root multiplicities come from the chain `p, gcd(p, p'), ...`: a root of
/// multiplicity `m` is a root of the first `m` members.
pub fn inertia(a: &[Vec<Q>]) -> (usize, usize, usize) {
    let p = char_poly(a);
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    let mut cur: Poly = p[zeros..].to_vec();
    let (mut pos, mut neg) = (0, 0);
    while degree(&cur) > 0 {
        let (pp, nn) = distinct_signed_roots(&cur);
        pos += pp;
        neg += nn;
        cur = gcd(&cur, &derivative(&cur));
    }
    (pos, zeros, neg)
}

// ------------------------------------------------------------ linear algebra

/// Unique solution of `a x = b`, if any.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut aug: Vec<Vec<Q>> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, p);
        let piv = aug[col][col].clone();
        for c in col..=n {
            aug[col][c] = &aug[col][c] / &piv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=n {
                    let d = &f * &aug[col][c];
                    aug[r][c] -= d;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

fn principal(a: &[Vec<Q>], idx: &[usize]) -> Vec<Vec<Q>> {
    idx.iter().map(|&i| idx.iter().map(|&j| a[i][j].clone()).collect()).collect()
}

/// Intersection matrix and `K . F_i` of a weighted graph.
pub fn graph_data(weights: &[u32], genera: &[u32], edges: &[(usize, usize, u32)]) -> (Vec<Vec<Q>>, Vec<Q>) {
    let n = weights.len();
    let mut m = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        m[i][i] = -q(i64::from(weights[i]));
    }
    for &(i, j, mult) in edges {
        m[i][j] = q(i64::from(mult));
        m[j][i] = q(i64::from(mult));
    }
    let k = (0..n).map(|i| q(i64::from(weights[i]) - 2 + 2 * i64::from(genera[i]))).collect();
    (m, k)
}

/// Minimum log discrepancy over every negative definite vertex subset, or
/// `None` when no subset is negative definite.
pub fn min_log_discrepancy_all_subsets(m: &[Vec<Q>], k: &[Q]) -> Option<Q> {
    let n = m.len();
    let mut best: Option<Q> = None;
    for mask in 1u64..(1u64 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let sub = principal(m, &idx);
        if inertia(&sub).2 != idx.len() {
            continue;
        }
        let rhs: Vec<Q> = idx.iter().map(|&i| -k[i].clone()).collect();
        let b = solve(&sub, &rhs).expect("definite");
        for bi in b {
            let f = Q::one() - bi;
            if best.as_ref().is_none_or(|x| f < *x) {
                best = Some(f);
            }
        }
    }
    best
}

pub fn log_terminal_all_subsets(m: &[Vec<Q>], k: &[Q]) -> bool {
    min_log_discrepancy_all_subsets(m, k).is_none_or(|f| f.is_positive())
}

/// `*(eps)` by polytope vertices: the region is bounded, so it is nonempty
/// iff some choice of `n` tight constraints has a feasible solution.
pub fn star_by_vertices(m: &[Vec<Q>], k: &[Q], eps: &Q) -> bool {
    let n = m.len();
    if n == 0 {
        return true;
    }
    let cap = Q::one() - eps;
    // rows a . x <= c
    let mut rows: Vec<(Vec<Q>, Q)> = Vec::new();
    for j in 0..n {
        rows.push(((0..n).map(|i| m[i][j].clone()).collect(), -k[j].clone()));
    }
    for i in 0..n {
        let mut lo = vec![Q::zero(); n];
        lo[i] = -Q::one();
        rows.push((lo, Q::zero()));
        let mut hi = vec![Q::zero(); n];
        hi[i] = Q::one();
        rows.push((hi, cap.clone()));
    }
    let holds = |x: &[Q]| {
        rows.iter().all(|(a, c)| a.iter().zip(x).fold(Q::zero(), |s, (ai, xi)| s + ai * xi) <= *c)
    };
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let a: Vec<Vec<Q>> = pick.iter().map(|&r| rows[r].0.clone()).collect();
        let c: Vec<Q> = pick.iter().map(|&r| rows[r].1.clone()).collect();
        if let Some(x) = solve(&a, &c) {
            if holds(&x) {
                return true;
            }
        }
        if !next_combination(&mut pick, rows.len()) {
            return false;
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// --------------------------------------------------------------------- trees

/// AHU code of a vertex-labelled tree; equal iff isomorphic.
pub fn tree_code(n: usize, edges: &[(usize, usize)], labels: &[u32]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    centers(&adj)
        .into_iter()
        .map(|c| rooted_code(&adj, labels, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn rooted_code(adj: &[Vec<usize>], labels: &[u32], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> =
        adj[v].iter().filter(|&&w| w != parent).map(|&w| rooted_code(adj, labels, w, v)).collect();
    kids.sort();
    format!("({}{})", labels[v], kids.concat())
}

fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&i| deg[i] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= leaves.len();
        let mut next = Vec::new();
        for &l in &leaves {
            deg[l] = 0;
            for &w in &adj[l] {
                if deg[w] > 0 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        leaves = next;
    }
    leaves
}

/// Unlabelled trees on `n` vertices, grown leaf by leaf.
pub fn trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size - 1 {
                let mut grown = t.clone();
                grown.push((v, size - 1));
                if seen.insert(tree_code(size, &grown, &vec![0; size])) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47]);
    }

    #[test]
    fn inertia_basics() {
        assert_eq!(inertia(&to_q(&[vec![-2, 1], vec![1, -2]])), (0, 0, 2));
        assert_eq!(inertia(&to_q(&[vec![0, 1], vec![1, 0]])), (1, 0, 1));
        assert_eq!(inertia(&to_q(&[vec![1, 1], vec![1, 1]])), (1, 1, 0));
        assert_eq!(inertia(&to_q(&[vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, -1]])), (2, 0, 1));
        assert_eq!(inertia(&[]), (0, 0, 0));
    }

    #[test]
    fn single_vertex_discrepancy() {
        for w in 1..=12u32 {
            let (m, k) = graph_data(&[w], &[0], &[]);
            assert_eq!(min_log_discrepancy_all_subsets(&m, &k), Some(Q::new(2.into(), i64::from(w).into())));
        }
    }

    #[test]
    fn star_vertices() {
        let half = Q::new(1.into(), 2.into());
        for (w, ok) in [(2, true), (4, true), (5, false)] {
            let (m, k) = graph_data(&[w], &[0], &[]);
            assert_eq!(star_by_vertices(&m, &k, &half), ok);
        }
    }
}
