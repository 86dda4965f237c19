//! The extremal sequence `M` and the triangular family `R_{n,j}`.
//!
//! `M` is the right-lexicographically largest sequence of degree `n`. It is
//! characterized by `0 <= m_i <= p` together with "`m_j = p` forces all
//! earlier entries to vanish", and its weight is `l(n) + 1`. Shifting lower
//! degree tables by `xi_1` gives one sequence of every weight between
//! `l(n) + 1` and `n`, which makes the pairing matrix against
//! `P^i chi P^(n-i)` triangular.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::dual::{enumerate_monomials, generator_degree, max_generator, ExponentSeq};
use crate::fp::{FpScalar, Prime};
use crate::memo::Memo;
use crate::operations::mu_matrix;
use crate::relations::l_of_n;

static M_CACHE: Memo<(u64, Prime), ExponentSeq> = Memo::new();
static RTABLE_CACHE: Memo<(u64, Prime), RTable> = Memo::new();

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSequence {
    pub seq: ExponentSeq,
    pub degree: u64,
    pub prime: Prime,
}

impl MSequence {
    pub fn weight(&self) -> u64 {
        self.seq.weight(self.prime)
    }
}

/// Entries bounded by `p`, and an entry equal to `p` only when everything
/// before it is zero.
pub fn satisfies_bounds(seq: &ExponentSeq, p: Prime) -> bool {
    let p = p.get();
    let entries = seq.entries();
    entries.iter().all(|&r| r <= p)
        && entries
            .iter()
            .enumerate()
            .all(|(j, &r)| r != p || entries[..j].iter().all(|&x| x == 0))
}

/// Degree `n` plus [`satisfies_bounds`].
pub fn satisfies_m_conditions(seq: &ExponentSeq, n: u64, p: Prime) -> bool {
    seq.degree(p) == n && satisfies_bounds(seq, p)
}

/// Greedy construction: take as many of the highest generator as fit, then
/// the next, and so on.
pub fn construct_m(n: u64, p: Prime) -> MSequence {
    let seq = M_CACHE.get_or_compute(&(n, p), || {
        let top = max_generator(n, p);
        let mut entries = vec![0u32; top];
        let mut remaining = n;
        for j in (1..=top).rev() {
            let d = generator_degree(j, p);
            entries[j - 1] = (remaining / d) as u32;
            remaining %= d;
        }
        ExponentSeq::new(entries)
    });
    MSequence {
        seq: (*seq).clone(),
        degree: n,
        prime: p,
    }
}

/// Maximum of all degree-`n` sequences under right-lexicographic order.
pub fn brute_force_rlex_max(n: u64, p: Prime) -> ExponentSeq {
    enumerate_monomials(n, p)
        .into_iter()
        .max()
        .expect("every degree has at least xi_1^n")
}

/// A degree-preserving rewrite that increases right-lexicographic order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// `r_1 > p`: `(r_1 - (p+1), r_2 + 1, ...)`.
    ReduceFirst,
    /// `r_j > p`, `j > 1`: `r_{j-1} += p`, `r_j -= p+1`, `r_{j+1} += 1`.
    ReduceEntry { j: usize },
    /// `r_j = p` with `r_1 > 0`: `r_1 -= 1`, `r_j = 0`, `r_{j+1} += 1`.
    ClearFromFirst { j: usize },
    /// `r_j = p` with lowest nonzero index `i > 1`: `r_i -= 1`,
    /// `r_{i-1} += p`, `r_j = 0`, `r_{j+1} += 1`.
    ClearFromLater { i: usize, j: usize },
}

impl Move {
    pub fn apply(&self, seq: &ExponentSeq, p: Prime) -> ExponentSeq {
        let p = p.get();
        let reach = match *self {
            Move::ReduceFirst => 2,
            Move::ReduceEntry { j }
            | Move::ClearFromFirst { j }
            | Move::ClearFromLater { j, .. } => j + 1,
        };
        let mut r: Vec<u32> = (1..=seq.len().max(reach)).map(|k| seq.get(k)).collect();
        match *self {
            Move::ReduceFirst => {
                r[0] -= p + 1;
                r[1] += 1;
            }
            Move::ReduceEntry { j } => {
                r[j - 2] += p;
                r[j - 1] -= p + 1;
                r[j] += 1;
            }
            Move::ClearFromFirst { j } => {
                r[0] -= 1;
                r[j - 1] = 0;
                r[j] += 1;
            }
            Move::ClearFromLater { i, j } => {
                r[i - 1] -= 1;
                r[i - 2] += p;
                r[j - 1] = 0;
                r[j] += 1;
            }
        }
        ExponentSeq::new(r)
    }
}

/// The lowest-index repair that applies to `seq`, if any.
pub fn next_move(seq: &ExponentSeq, p: Prime) -> Option<Move> {
    let pv = p.get();
    let entries = seq.entries();
    for (idx, &r) in entries.iter().enumerate() {
        let j = idx + 1;
        if r > pv {
            return Some(if j == 1 {
                Move::ReduceFirst
            } else {
                Move::ReduceEntry { j }
            });
        }
        if r == pv && j > 1 {
            if let Some(first) = entries[..idx].iter().position(|&x| x > 0) {
                let i = first + 1;
                return Some(if i == 1 {
                    Move::ClearFromFirst { j }
                } else {
                    Move::ClearFromLater { i, j }
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    #[serde(flatten)]
    pub kind: Move,
    pub before: String,
    pub after: String,
    pub weight_delta: i64,
}

/// Applies repairs until the bounds hold, recording each step.
pub fn apply_moves_traced(seq: &ExponentSeq, p: Prime) -> (ExponentSeq, Vec<MoveRecord>) {
    let mut current = seq.clone();
    let mut trace = Vec::new();
    while let Some(mv) = next_move(&current, p) {
        let next = mv.apply(&current, p);
        debug_assert_eq!(next.degree(p), current.degree(p));
        debug_assert!(next > current);
        trace.push(MoveRecord {
            kind: mv,
            before: current.to_string(),
            after: next.to_string(),
            weight_delta: next.weight(p) as i64 - current.weight(p) as i64,
        });
        current = next;
    }
    (current, trace)
}

pub fn apply_moves(seq: &ExponentSeq, p: Prime) -> ExponentSeq {
    apply_moves_traced(seq, p).0
}

/// `(1, 0, ...) + M(n)` repaired into a sequence of degree `n + 1`.
pub fn successor_via_moves(n: u64, p: Prime) -> (ExponentSeq, Vec<MoveRecord>) {
    let start = construct_m(n, p).seq.add(&ExponentSeq::xi(1, 1));
    apply_moves_traced(&start, p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    pub constructed: ExponentSeq,
    pub survivors: Vec<ExponentSeq>,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.survivors.len() == 1 && self.survivors[0] == self.constructed
    }
}

/// Exhaustively filters degree-`n` sequences by the defining conditions.
pub fn m_uniqueness_check(n: u64, p: Prime) -> UniquenessReport {
    UniquenessReport {
        constructed: construct_m(n, p).seq,
        survivors: enumerate_monomials(n, p)
            .into_iter()
            .filter(|s| satisfies_bounds(s, p))
            .collect(),
    }
}

/// One sequence of degree `n` for each weight `l(n) + 1 ..= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTable {
    pub degree: u64,
    pub prime: Prime,
    pub entries: BTreeMap<u64, ExponentSeq>,
}

impl RTable {
    /// Every entry has the right degree and weight, and the weights run
    /// over exactly `l(n) + 1 ..= n`.
    pub fn is_consistent(&self) -> bool {
        let p = self.prime;
        let lo = (l_of_n(self.degree, p) + 1) as u64;
        self.entries.keys().copied().eq(lo..=self.degree)
            && self
                .entries
                .iter()
                .all(|(&w, s)| s.degree(p) == self.degree && s.weight(p) == w)
    }
}

pub fn build_r_table(n: u64, p: Prime) -> RTable {
    (*r_table_shared(n, p)).clone()
}

fn r_table_shared(n: u64, p: Prime) -> Arc<RTable> {
    RTABLE_CACHE.get_or_compute(&(n, p), || {
        let base = (l_of_n(n, p) + 1) as u64;
        let mut entries = BTreeMap::new();
        entries.insert(base, construct_m(n, p).seq);
        if n > 0 {
            let lower = r_table_shared(n - 1, p);
            let xi1 = ExponentSeq::xi(1, 1);
            for j in base + 1..=n {
                // l is weakly increasing, so weight j - 1 exists one degree down
                let prev = lower.entries.get(&(j - 1)).expect("monotone threshold");
                entries.insert(j, prev.add(&xi1));
            }
        }
        RTable {
            degree: n,
            prime: p,
            entries,
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularityRow {
    pub weight: u64,
    pub sequence: String,
    /// `<P^w chi P^(n-w), xi^R>`, as a symmetric representative.
    pub diagonal: i64,
    /// Values `i > w` where the pairing fails to vanish.
    pub nonzero_above: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularityCertificate {
    pub degree: u64,
    pub rows: Vec<TriangularityRow>,
}

impl TriangularityCertificate {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.diagonal != 0 && r.nonzero_above.is_empty())
    }
}

/// Pairs every table entry `R` of weight `w` against `P^i chi P^(n-i)`:
/// a unit at `i = w`, zero for `i > w`.
pub fn triangularity_certificate(n: u64, p: Prime) -> TriangularityCertificate {
    let table = build_r_table(n, p);
    let mu = mu_matrix(n, p);
    let rows = table
        .entries
        .iter()
        .map(|(&w, s)| {
            let pair = |i: u64| -> FpScalar { mu.column(i as usize).pairing(s) };
            TriangularityRow {
                weight: w,
                sequence: s.to_string(),
                diagonal: pair(w).symmetric(),
                nonzero_above: (w + 1..=n).filter(|&i| !pair(i).is_zero()).collect(),
            }
        })
        .collect();
    TriangularityCertificate { degree: n, rows }
}

/// First `n < nmax` with `l(n + 1) < l(n)`, if any.
pub fn l_monotonicity_violation(nmax: u64, p: Prime) -> Option<u64> {
    (0..nmax).find(|&n| l_of_n(n + 1, p) < l_of_n(n, p))
}
