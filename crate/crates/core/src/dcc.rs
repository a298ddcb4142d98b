//! Sets of coefficients in `[0, 1]` satisfying the descending chain
//! condition, represented as a finite part plus families `c - a/k`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// `{ c - a/k : k >= k_min }`, strictly increasing in `k` with limit `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    pub c: Rational,
    pub a: Rational,
    pub k_min: u64,
}

impl Family {
    pub fn new(c: Rational, a: Rational, k_min: u64) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::InvalidArgument(format!("family step must be positive, got {}", format_rational(&a))));
        }
        if k_min == 0 {
            return Err(Error::InvalidArgument("family k_min must be at least 1".into()));
        }
        Ok(Self { c, a, k_min })
    }

    pub fn member(&self, k: u64) -> Rational {
        &self.c - &self.a / Rational::from_integer(BigInt::from(k))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if *x >= self.c {
            return false;
        }
        let k = &self.a / (&self.c - x);
        k.is_integer() && k.to_integer() >= BigInt::from(self.k_min)
    }

    /// Least `k >= k_min` with a nonnegative member.
    fn first_nonnegative(&self) -> Option<u64> {
        if !self.c.is_positive() {
            return None;
        }
        let q = &self.a / &self.c;
        let k = q.ceil().to_integer().to_u64()?;
        Some(k.max(self.k_min))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family:{}:{}:{}", format_rational(&self.c), format_rational(&self.a), self.k_min)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoefficientSet {
    pub finite: BTreeSet<Rational>,
    pub families: Vec<Family>,
}

impl CoefficientSet {
    pub fn new(finite: impl IntoIterator<Item = Rational>, families: Vec<Family>) -> Result<Self> {
        let finite: BTreeSet<Rational> = finite.into_iter().collect();
        if let Some(bad) = finite.iter().find(|x| x.is_negative() || **x > Rational::one()) {
            return Err(Error::InvalidArgument(format!("{} is outside [0, 1]", format_rational(bad))));
        }
        Ok(Self { finite, families })
    }

    /// `{1/12, ..., 11/12} u {1 - 1/k : k >= 2}`.
    pub fn standard() -> Self {
        let finite = (1..12).map(|i| Rational::new(i.into(), 12.into())).collect();
        let family = Family { c: Rational::one(), a: Rational::one(), k_min: 2 };
        Self { finite, families: vec![family] }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if x.is_negative() || *x > Rational::one() {
            return false;
        }
        self.finite.contains(x) || self.families.iter().any(|f| f.contains(x))
    }

    /// Least element of the set in `(0, 1]`.
    pub fn min_positive(&self) -> Option<Rational> {
        let finite = self.finite.iter().find(|x| x.is_positive()).cloned();
        let fams = self.families.iter().filter_map(|f| {
            let k0 = if f.c.is_positive() {
                (&f.a / &f.c).floor().to_integer().to_u64()?.saturating_add(1).max(f.k_min)
            } else {
                return None;
            };
            let v = f.member(k0);
            (v <= Rational::one()).then_some(v)
        });
        finite.into_iter().chain(fams).min()
    }

    /// Every element in `[0, t]`, sorted. Fails when some family has
    /// infinitely many members there.
    pub fn below_threshold(&self, t: &Rational) -> Result<Vec<Rational>> {
        let mut out: BTreeSet<Rational> = self.finite.iter().filter(|x| *x <= t).cloned().collect();
        let cap = t.clone().min(Rational::one());
        for f in &self.families {
            if f.c.is_positive() && f.c <= Rational::one() && *t >= f.c {
                return Err(Error::InfiniteTail { threshold: format_rational(t), supremum: format_rational(&f.c) });
            }
            let Some(mut k) = f.first_nonnegative() else { continue };
            loop {
                let v = f.member(k);
                if v > cap {
                    break;
                }
                out.insert(v);
                k += 1;
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Members of `[0, 1]` taking at most `depth` terms of each family.
    /// The flag is set when some family has further members in `[0, 1]`.
    pub fn truncated_members(&self, depth: u64) -> (Vec<Rational>, bool) {
        let mut out: BTreeSet<Rational> = self.finite.clone();
        let mut cut = false;
        for f in &self.families {
            let Some(start) = f.first_nonnegative() else { continue };
            for k in start..start.saturating_add(depth) {
                let v = f.member(k);
                if v > Rational::one() {
                    break;
                }
                out.insert(v);
            }
            let next = f.member(start.saturating_add(depth));
            cut |= next <= Rational::one() && !next.is_negative();
        }
        (out.into_iter().collect(), cut)
    }

    /// A finite sample: the finite part ascending, then each family in
    /// increasing `k`.
    pub fn sample(&self, per_family: u64) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.finite.iter().cloned().collect();
        for f in &self.families {
            let Some(start) = f.first_nonnegative() else { continue };
            out.extend(
                (start..start.saturating_add(per_family))
                    .map(|k| f.member(k))
                    .take_while(|v| *v <= Rational::one()),
            );
        }
        out
    }
}

impl fmt::Display for CoefficientSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .finite
            .iter()
            .map(format_rational)
            .chain(self.families.iter().map(Family::to_string))
            .collect();
        f.write_str(&items.join(","))
    }
}

/// Comma-separated items: `standard`, a rational `p/q`, or
/// `family:c:a:k_min`. The empty string is the empty set.
impl FromStr for CoefficientSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut finite = Vec::new();
        let mut families = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            if item == "standard" {
                let std = CoefficientSet::standard();
                finite.extend(std.finite);
                families.extend(std.families);
            } else if let Some(rest) = item.strip_prefix("family:") {
                let parts: Vec<&str> = rest.split(':').collect();
                let [c, a, k] = parts.as_slice() else {
                    return Err(Error::InvalidArgument(format!("expected family:c:a:k_min, got {item:?}")));
                };
                let k_min = k
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad k_min in {item:?}")))?;
                families.push(Family::new(parse_rational(c)?, parse_rational(a)?, k_min)?);
            } else {
                finite.push(parse_rational(item)?);
            }
        }
        let mut seen = Vec::new();
        families.retain(|f| {
            let fresh = !seen.contains(f);
            seen.push(f.clone());
            fresh
        });
        CoefficientSet::new(finite, families)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientImage {
    pub set: CoefficientSet,
    /// Some family was cut off at depth `max_m`.
    pub truncated: bool,
}

/// All values `1 - (1 - sum n_j b_j)/m` in `[0, 1]` with `m <= max_m`, at
/// most `max_terms` summands, `n_j <= max_n`, and each `b_j` from `s`.
/// Family members are drawn up to depth `max_m`.
pub fn hurwitz_quotient_transform(s: &CoefficientSet, max_m: u64, max_terms: usize, max_n: u64) -> Result<QuotientImage> {
    if max_m == 0 || max_terms == 0 || max_n == 0 {
        return Err(Error::InvalidArgument("bounds must be at least 1".into()));
    }
    let one = Rational::one();
    let (pool, truncated) = s.truncated_members(max_m);
    let steps: BTreeSet<Rational> = pool
        .iter()
        .flat_map(|b| (1..=max_n).map(move |n| b * Rational::from_integer(BigInt::from(n))))
        .filter(|x| *x <= one)
        .collect();
    let mut sums: BTreeSet<Rational> = BTreeSet::from([Rational::zero()]);
    let mut layer = sums.clone();
    for _ in 0..max_terms {
        let mut next = BTreeSet::new();
        for x in &layer {
            for st in &steps {
                let y = x + st;
                if y <= one && !sums.contains(&y) {
                    next.insert(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        sums.extend(next.iter().cloned());
        layer = next;
    }
    let mut values = BTreeSet::new();
    for m in 1..=max_m {
        let m = Rational::from_integer(BigInt::from(m));
        for sum in &sums {
            let v = &one - (&one - sum) / &m;
            if !v.is_negative() && v <= one {
                values.insert(v);
            }
        }
    }
    Ok(QuotientImage { set: CoefficientSet { finite: values, families: Vec::new() }, truncated })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    /// No strictly decreasing subsequence is longer than the allowed length.
    pub within: bool,
    pub longest: usize,
    /// One longest strictly decreasing subsequence.
    pub chain: Vec<Rational>,
}

/// Longest strictly decreasing subsequence of `values`, compared with
/// `chain_len`.
pub fn is_dcc_witnessed(values: &[Rational], chain_len: usize) -> ChainReport {
    // tails[l]: index ending a decreasing run of length l+1 with the largest last value
    let mut tails: Vec<usize> = Vec::new();
    let mut prev: Vec<Option<usize>> = vec![None; values.len()];
    for (i, x) in values.iter().enumerate() {
        let pos = tails.partition_point(|&t| values[t] > *x);
        prev[i] = pos.checked_sub(1).map(|p| tails[p]);
        if pos == tails.len() {
            tails.push(i);
        } else {
            tails[pos] = i;
        }
    }
    let mut chain = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied();
    while let Some(i) = cur {
        chain.push(values[i].clone());
        cur = prev[i];
    }
    chain.reverse();
    ChainReport { within: chain.len() <= chain_len, longest: chain.len(), chain }
}

/// `x` is in `s` by direct search over the family indices `k <= bound`.
pub fn contains_by_search(s: &CoefficientSet, x: &Rational, bound: u64) -> bool {
    s.finite.contains(x) || s.families.iter().any(|f| (f.k_min..=bound).any(|k| f.member(k) == *x))
}
