use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::Prime;

/// Degree of `xi_j`, namely `1 + p + ... + p^(j-1)`.
pub fn generator_degree(j: usize, p: Prime) -> u64 {
    assert!(j >= 1, "generators are indexed from 1");
    let p = p.as_u64();
    (0..j).fold(0u64, |acc, _| acc * p + 1)
}

/// Largest `j` with `|xi_j| <= n` (0 when `n == 0`).
pub fn max_generator(n: u64, p: Prime) -> usize {
    let mut j = 0;
    while generator_degree(j + 1, p) <= n {
        j += 1;
    }
    j
}

/// Exponent sequence `R = (r_1, r_2, ...)` of the monomial `xi^R`.
///
/// Trailing zeros are never stored, so equal monomials have equal
/// representations. Ordering is right-lexicographic: the entry with the
/// highest index is compared first.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", from = "Vec<u32>")]
pub struct ExponentSeq(Vec<u32>);

impl ExponentSeq {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        ExponentSeq(entries)
    }

    /// The empty sequence, i.e. the monomial `1`.
    pub fn unit() -> Self {
        ExponentSeq(Vec::new())
    }

    /// `xi_k^exp` as a sequence.
    pub fn xi(k: usize, exp: u32) -> Self {
        assert!(k >= 1, "generators are indexed from 1");
        let mut v = vec![0; k];
        v[k - 1] = exp;
        ExponentSeq::new(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `r_j`, with `j` counted from 1; zero past the end.
    pub fn get(&self, j: usize) -> u32 {
        assert!(j >= 1, "generators are indexed from 1");
        self.0.get(j - 1).copied().unwrap_or(0)
    }

    /// Index of the highest nonzero entry (0 for the unit).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// `|R| = sum r_j (p^j - 1)/(p - 1)`.
    pub fn degree(&self, p: Prime) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &r)| u64::from(r) * generator_degree(i + 1, p))
            .sum()
    }

    /// `||R|| = r_1 + p r_2 + p^2 r_3 + ...`.
    pub fn weight(&self, p: Prime) -> u64 {
        self.0
            .iter()
            .rev()
            .fold(0u64, |acc, &r| acc * p.as_u64() + u64::from(r))
    }

    /// `e(R)`, the sum of the entries.
    pub fn excess(&self) -> u64 {
        self.0.iter().map(|&r| u64::from(r)).sum()
    }

    /// Entrywise sum, i.e. the exponent of `xi^R xi^S`.
    pub fn add(&self, other: &ExponentSeq) -> ExponentSeq {
        let n = self.len().max(other.len());
        ExponentSeq::new((1..=n).map(|j| self.get(j) + other.get(j)).collect())
    }

    /// Monomial notation, e.g. `xi1^3 xi2`; the unit renders as `1`.
    pub fn to_monomial_string(&self) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(i, &r)| {
                if r == 1 {
                    format!("xi{}", i + 1)
                } else {
                    format!("xi{}^{}", i + 1, r)
                }
            })
            .collect();
        parts.join(" ")
    }
}

impl Ord for ExponentSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        // normalized: a longer sequence has a nonzero entry above the other's top
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for ExponentSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentSeq {
    fn from(v: Vec<u32>) -> Self {
        ExponentSeq::new(v)
    }
}

impl From<ExponentSeq> for Vec<u32> {
    fn from(s: ExponentSeq) -> Self {
        s.0
    }
}

impl fmt::Display for ExponentSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ExponentSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses tuple notation such as `(3,1)` or `()`.
impl FromStr for ExponentSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected a parenthesized tuple, got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(ExponentSeq::unit());
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(ExponentSeq::new)
    }
}

/// Parses monomial notation such as `xi1^3 xi2` (or `1`).
pub fn parse_monomial(s: &str) -> Result<ExponentSeq> {
    let s = s.trim();
    if s == "1" {
        return Ok(ExponentSeq::unit());
    }
    let mut entries: Vec<u32> = Vec::new();
    for factor in s.split_whitespace() {
        let body = factor
            .strip_prefix("xi")
            .ok_or_else(|| Error::Parse(format!("bad factor {factor:?}")))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e),
            None => (body, "1"),
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator index in {factor:?}")))?;
        let exp: u32 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
        if idx == 0 {
            return Err(Error::Parse("generators are indexed from 1".into()));
        }
        if entries.len() < idx {
            entries.resize(idx, 0);
        }
        entries[idx - 1] += exp;
    }
    if entries.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    Ok(ExponentSeq::new(entries))
}

/// All `R` with `|R| = n`, in descending right-lexicographic order.
pub fn enumerate_monomials(n: u64, p: Prime) -> Vec<ExponentSeq> {
    let top = max_generator(n, p);
    let mut out = Vec::new();
    let mut current = vec![0u32; top];
    fill(top, n, p, &mut current, &mut out);
    out
}

fn fill(j: usize, remaining: u64, p: Prime, current: &mut Vec<u32>, out: &mut Vec<ExponentSeq>) {
    if j == 0 {
        if remaining == 0 {
            out.push(ExponentSeq::new(current.clone()));
        }
        return;
    }
    if j == 1 {
        // |xi_1| = 1 absorbs whatever is left
        current[0] = remaining as u32;
        out.push(ExponentSeq::new(current.clone()));
        current[0] = 0;
        return;
    }
    let d = generator_degree(j, p);
    for r in (0..=remaining / d).rev() {
        current[j - 1] = r as u32;
        fill(j - 1, remaining - r * d, p, current, out);
    }
    current[j - 1] = 0;
}
