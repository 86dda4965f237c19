//! Parameter sweeps over the certificates, run on a bounded worker pool.
//!
//! Work is split into independent tasks (mostly one per degree). Results are
//! collected in task order, so a report is byte-identical for any worker
//! count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dual::enumerate_monomials;
use crate::error::{Error, Result};
use crate::fp::{alpha, binom_int, binom_mod_p, Prime};
use crate::operations::{chi_pn_dual, chi_pn_inductive, mu_matrix, OpVector};
use crate::relations::{
    alternating_binomial_sum, alternating_sum_identity_holds, bm_vector, davis_check,
    kernel_certificate_with, l_of_n, relation_window_rank, straffin_check, toeplitz_certificate,
    verify_bm_with, vn_basis_certificate_with, BmOutcome, RelationSpec,
};
use crate::report::{Check, Status, Suite, VerificationReport};
use crate::sequences::{
    brute_force_rlex_max, build_r_table, construct_m, l_monotonicity_violation, m_uniqueness_check,
    satisfies_m_conditions, successor_via_moves, triangularity_certificate,
};

/// Inclusive integer range, written `a..b` (or a single `a`).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub start: i64,
    pub end: i64,
}

impl IntRange {
    pub fn new(start: i64, end: i64) -> Result<Self> {
        if start > end {
            return Err(Error::Parse(format!("empty range {start}..{end}")));
        }
        Ok(IntRange { start, end })
    }

    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.start..=self.end
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad range bound {t:?}")))
        };
        match s.split_once("..") {
            Some((a, b)) => IntRange::new(num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                IntRange::new(v, v)
            }
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Degree bound for the `--suite all` sweep.
pub fn default_max_degree(p: Prime) -> u64 {
    match p.get() {
        2 => 24,
        3 => 14,
        5 => 10,
        _ => 8,
    }
}

pub fn default_monotone_bound(p: Prime) -> u64 {
    match p.get() {
        2 => 64,
        3 => 40,
        _ => 30,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub prime: Prime,
    /// Degrees for the per-degree suites.
    pub degrees: IntRange,
    pub davis_r: IntRange,
    pub straffin_r: IntRange,
    pub straffin_b: IntRange,
    pub toeplitz_l: IntRange,
    pub toeplitz_m: IntRange,
    pub monotone_max: u64,
}

impl SweepConfig {
    pub fn defaults(prime: Prime) -> Self {
        SweepConfig {
            prime,
            degrees: IntRange {
                start: 0,
                end: default_max_degree(prime) as i64,
            },
            davis_r: IntRange { start: 2, end: 4 },
            straffin_r: IntRange { start: 0, end: 2 },
            straffin_b: IntRange { start: 2, end: 3 },
            toeplitz_l: IntRange { start: 0, end: 8 },
            toeplitz_m: IntRange { start: -4, end: 8 },
            monotone_max: default_monotone_bound(prime),
        }
    }

    /// Checks the ranges used by the selected suites.
    pub fn validate(&self, suites: &[Suite]) -> Result<()> {
        let uses = |s: Suite| suites.contains(&s);
        let bad = |what: &str, r: IntRange| {
            Err(Error::OutOfRange(format!(
                "{what} range {r} is out of bounds"
            )))
        };
        if self.degrees.start < 0 || self.degrees.end > 200 {
            return bad("degree", self.degrees);
        }
        if uses(Suite::Davis) && (self.davis_r.start < 2 || self.davis_r.end > 8) {
            return bad("Davis r (needs 2 <= r <= 8)", self.davis_r);
        }
        if uses(Suite::Straffin) && (self.straffin_r.start < 0 || self.straffin_r.end > 5) {
            return bad("Straffin r (needs 0 <= r <= 5)", self.straffin_r);
        }
        if uses(Suite::Straffin) && (self.straffin_b.start < 2 || self.straffin_b.end > 16) {
            return bad("Straffin b (needs 2 <= b <= 16)", self.straffin_b);
        }
        if uses(Suite::Toeplitz) && (self.toeplitz_l.start < 0 || self.toeplitz_l.end > 40) {
            return bad("Toeplitz l", self.toeplitz_l);
        }
        if uses(Suite::Toeplitz)
            && (self.toeplitz_m.start.abs() > 10_000 || self.toeplitz_m.end.abs() > 10_000)
        {
            return bad("Toeplitz m", self.toeplitz_m);
        }
        Ok(())
    }

    fn degree_list(&self, min: u64) -> Vec<u64> {
        self.degrees
            .iter()
            .filter(|&n| n >= min as i64)
            .map(|n| n as u64)
            .collect()
    }
}

#[derive(Copy, Clone, Debug)]
enum Task {
    Bm(u64),
    Kernel(u64),
    Vn(u64),
    Davis(u32),
    Straffin(u32, u64),
    Milnor(u64),
    Mseq(u64),
    Rtable(u64),
    Toeplitz(usize, i64),
    Binom(BinomCheck),
    Monotone,
}

#[derive(Copy, Clone, Debug)]
enum BinomCheck {
    ModP,
    Pascal,
    AlternatingSum,
    AlternatingVanishing,
}

fn plan(config: &SweepConfig, suites: &[Suite]) -> Vec<(Suite, Task)> {
    let mut tasks = Vec::new();
    for &suite in suites {
        match suite {
            Suite::Bm => tasks.extend(
                config
                    .degree_list(1)
                    .into_iter()
                    .map(|n| (suite, Task::Bm(n))),
            ),
            Suite::Kernel => tasks.extend(
                config
                    .degree_list(0)
                    .into_iter()
                    .map(|n| (suite, Task::Kernel(n))),
            ),
            Suite::Vn => tasks.extend(
                config
                    .degree_list(0)
                    .into_iter()
                    .map(|n| (suite, Task::Vn(n))),
            ),
            Suite::Milnor => tasks.extend(
                config
                    .degree_list(0)
                    .into_iter()
                    .map(|n| (suite, Task::Milnor(n))),
            ),
            Suite::Mseq => tasks.extend(
                config
                    .degree_list(0)
                    .into_iter()
                    .map(|n| (suite, Task::Mseq(n))),
            ),
            Suite::Rtable => tasks.extend(
                config
                    .degree_list(0)
                    .into_iter()
                    .map(|n| (suite, Task::Rtable(n))),
            ),
            Suite::Davis => tasks.extend(
                config
                    .davis_r
                    .iter()
                    .map(|r| (suite, Task::Davis(r as u32))),
            ),
            Suite::Straffin => {
                for r in config.straffin_r.iter() {
                    for b in config.straffin_b.iter() {
                        tasks.push((suite, Task::Straffin(r as u32, b as u64)));
                    }
                }
            }
            Suite::Toeplitz => {
                for l in config.toeplitz_l.iter() {
                    for m in config.toeplitz_m.iter() {
                        tasks.push((suite, Task::Toeplitz(l as usize, m)));
                    }
                }
            }
            Suite::Binom => tasks.extend(
                [
                    BinomCheck::ModP,
                    BinomCheck::Pascal,
                    BinomCheck::AlternatingSum,
                    BinomCheck::AlternatingVanishing,
                ]
                .map(|b| (suite, Task::Binom(b))),
            ),
            Suite::Monotone => tasks.push((suite, Task::Monotone)),
        }
    }
    tasks
}

/// Runs the selected suites with at most `jobs` worker threads.
pub fn run_suites(
    config: &SweepConfig,
    suites: &[Suite],
    jobs: usize,
) -> Result<VerificationReport> {
    config.validate(suites)?;
    let tasks = plan(config, suites);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::OutOfRange(format!("cannot start worker pool: {e}")))?;
    let p = config.prime;
    let results: Vec<Vec<Check>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(suite, task)| run_task(suite, task, p, config))
            .collect()
    });
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    Ok(VerificationReport::new(
        p.get(),
        suites,
        results.into_iter().flatten().collect(),
    ))
}

fn nonzero_entries(v: &OpVector) -> Value {
    Value::Array(
        v.iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| json!({"monomial": s.to_monomial_string(), "value": c.value()}))
            .collect(),
    )
}

fn run_task(suite: Suite, task: Task, p: Prime, config: &SweepConfig) -> Vec<Check> {
    let pv = p.get();
    match task {
        Task::Bm(n) => bm_checks(suite, n, p),
        Task::Kernel(n) => kernel_checks(suite, n, p),
        Task::Vn(n) => {
            let cert = vn_basis_certificate_with(&mu_matrix(n, p), p);
            vec![Check::new(suite, pv, Some(n), "vn_basis")
                .param("l", cert.l)
                .param("rank", cert.rank)
                .param("tail_rank", cert.tail_rank)
                .param("expected_rank", cert.expected_rank())
                .passed_if(cert.passed())]
        }
        Task::Milnor(n) => milnor_checks(suite, n, p),
        Task::Mseq(n) => mseq_checks(suite, n, p),
        Task::Rtable(n) => {
            let table = build_r_table(n, p);
            let tri = triangularity_certificate(n, p);
            let mut check = Check::new(suite, pv, Some(n), "triangularity")
                .param("entries", table.entries.len())
                .param("table_consistent", table.is_consistent())
                .passed_if(table.is_consistent() && tri.passed());
            if check.status == Status::Fail {
                check = check.witness(serde_json::to_value(&tri.rows).unwrap());
            }
            vec![check]
        }
        Task::Davis(r) => {
            let check = Check::new(suite, pv, None, "davis").param("r", r);
            if p != Prime::TWO {
                return vec![check
                    .status(Status::Skipped)
                    .param("reason", "prime is not 2")];
            }
            vec![match davis_check(r) {
                Ok(c) => check
                    .param("first", c.first)
                    .param("second", c.second)
                    .param("binomial_forms", c.binomial_forms)
                    .passed_if(c.passed()),
                Err(e) => check.passed_if(false).witness(Value::from(e.to_string())),
            }]
        }
        Task::Straffin(r, b) => {
            let check = Check::new(suite, pv, Some((1u64 << r) * b), "straffin")
                .param("r", r)
                .param("b", b);
            if p != Prime::TWO {
                return vec![check
                    .status(Status::Skipped)
                    .param("reason", "prime is not 2")];
            }
            vec![match straffin_check(r, b) {
                Ok(c) => check
                    .param("vanishes", c.vanishes)
                    .param("binomial_form", c.binomial_form)
                    .passed_if(c.passed()),
                Err(e) => check.passed_if(false).witness(Value::from(e.to_string())),
            }]
        }
        Task::Toeplitz(l, m) => {
            let check = Check::new(suite, pv, None, "toeplitz")
                .param("l", l)
                .param("m", m);
            vec![match toeplitz_certificate(l, m) {
                Ok(c) => check
                    .param("det", c.det.to_string())
                    .param("shift_identity", c.shift_identity)
                    .passed_if(c.passed()),
                Err(e) => check.passed_if(false).witness(Value::from(e.to_string())),
            }]
        }
        Task::Binom(which) => vec![binom_check(suite, which, p)],
        Task::Monotone => {
            let nmax = config.monotone_max;
            let violation = l_monotonicity_violation(nmax, p);
            let mut check = Check::new(suite, pv, None, "l_weakly_increasing")
                .param("nmax", nmax)
                .passed_if(violation.is_none());
            if let Some(n) = violation {
                check =
                    check.witness(json!({"n": n, "l_n": l_of_n(n, p), "l_next": l_of_n(n + 1, p)}));
            }
            vec![check]
        }
    }
}

fn bm_checks(suite: Suite, n: u64, p: Prime) -> Vec<Check> {
    let pv = p.get();
    let mu = mu_matrix(n, p);
    let l_n = l_of_n(n, p);
    let spread = 2 * (l_n + 1);
    let (k_min, k_max) = (-spread, n as i64 + spread);
    let mut out = Vec::new();

    for l in 0..=l_n.max(-1) {
        let l = l as u64;
        let mut check = Check::new(suite, pv, Some(n), "relation")
            .param("l", l)
            .param("k_min", k_min)
            .param("k_max", k_max);
        let failure = (k_min..=k_max).find_map(|k| {
            match verify_bm_with(&mu, RelationSpec::new(n, l, k), p) {
                BmOutcome::Pass => None,
                BmOutcome::Fail { residual } => Some(json!({
                    "p": pv, "n": n, "l": l, "k": k, "residual": nonzero_entries(&residual),
                })),
                BmOutcome::HypothesisNotMet { .. } => Some(json!({
                    "p": pv, "n": n, "l": l, "k": k, "error": "hypothesis unexpectedly not met",
                })),
            }
        });
        check = match failure {
            None => check,
            Some(w) => check.passed_if(false).witness(w),
        };
        out.push(check);
    }

    // C(k+1-i, l) - C(k-i, l) = C(k-i, l-1) as coefficient vectors
    let l_top = (l_n + 1).max(1) as u64;
    let diff_ok = (1..=l_top).all(|l| {
        (k_min..=k_max).all(|k| {
            let hi = bm_vector(RelationSpec::new(n, l, k + 1), p);
            let lo = bm_vector(RelationSpec::new(n, l, k), p);
            let lower = bm_vector(RelationSpec::new(n, l - 1, k), p);
            hi.iter()
                .zip(&lo)
                .map(|(&a, &b)| p.sub(a, b))
                .eq(lower.iter().copied())
        })
    });
    out.push(
        Check::new(suite, pv, Some(n), "consecutive_difference")
            .param("l_max", l_top)
            .param("k_min", k_min)
            .param("k_max", k_max)
            .passed_if(diff_ok),
    );

    // first l past the hypothesis: nothing is claimed, residuals are recorded
    let l_bad = (l_n + 1) as u64;
    let zero = (k_min..=k_max)
        .filter(|&k| {
            matches!(
                verify_bm_with(&mu, RelationSpec::new(n, l_bad, k), p),
                BmOutcome::HypothesisNotMet {
                    residual_is_zero: true
                }
            )
        })
        .count();
    let total = (k_max - k_min + 1) as usize;
    out.push(
        Check::new(suite, pv, Some(n), "outside_hypothesis")
            .param("l", l_bad)
            .param("k_min", k_min)
            .param("k_max", k_max)
            .param("zero_residuals", zero)
            .param("nonzero_residuals", total - zero)
            .status(Status::Skipped),
    );
    out
}

fn kernel_checks(suite: Suite, n: u64, p: Prime) -> Vec<Check> {
    let pv = p.get();
    let mu = mu_matrix(n, p);
    let l_n = l_of_n(n, p);
    let spread = 2 * (l_n + 1);
    let certs: Vec<_> = (-spread..=spread)
        .map(|m| kernel_certificate_with(&mu, m, p))
        .collect();
    let kernel_dim = certs[0].kernel_dim;
    let mut basis = Check::new(suite, pv, Some(n), "kernel_basis")
        .param("l", l_n)
        .param("m_min", -spread)
        .param("m_max", spread)
        .param("kernel_dim", kernel_dim)
        .passed_if(certs.iter().all(|c| c.passed()));
    if let Some(bad) = certs.iter().find(|c| !c.passed()) {
        basis = basis.witness(json!({
            "m": bad.m,
            "window_rank": bad.window_rank,
            "all_in_kernel": bad.all_in_kernel,
            "kernel_dim": bad.kernel_dim,
            "expected_dim": bad.expected_dim(),
        }));
    }

    // independence of any l + 1 consecutive binomial vectors, 0 <= l <= n
    let mut failure = None;
    'outer: for l in 0..=n {
        let spread = 2 * (l as i64 + 1);
        for m in -spread..=spread {
            let rank = relation_window_rank(n, l, m, p);
            if rank != l as usize + 1 {
                failure = Some(json!({"l": l, "m": m, "rank": rank}));
                break 'outer;
            }
        }
    }
    let mut window = Check::new(suite, pv, Some(n), "window_independence")
        .param("l_max", n)
        .passed_if(failure.is_none());
    if let Some(w) = failure {
        window = window.witness(w);
    }
    vec![basis, window]
}

fn milnor_checks(suite: Suite, n: u64, p: Prime) -> Vec<Check> {
    let pv = p.get();
    let dual = chi_pn_dual(n, p);
    let inductive = chi_pn_inductive(n, p);
    let mut route = Check::new(suite, pv, Some(n), "route_agreement").passed_if(dual == inductive);
    if route.status == Status::Fail {
        route = route.witness(json!({
            "dual": dual,
            "inductive": inductive,
        }));
    }

    let zeros: Vec<String> = dual.zero_pairings().iter().map(|s| s.to_string()).collect();
    let mut nonvanishing = Check::new(suite, pv, Some(n), "chi_pairings_nonzero")
        .param("monomials", dual.len())
        .passed_if(zeros.is_empty());
    if !zeros.is_empty() {
        nonvanishing = nonvanishing.witness(json!({ "zero_at": zeros }));
    }

    let mut out = vec![route, nonvanishing];
    if n > 0 {
        let sum = mu_matrix(n, p).apply(&vec![1; n as usize + 1]);
        out.push(Check::new(suite, pv, Some(n), "defining_relation").passed_if(sum.is_zero()));
    }

    let bad = enumerate_monomials(n, p).into_iter().find(|r| {
        let w = r.weight(p);
        p.as_u64() * w - r.excess() != (p.as_u64() - 1) * n || r.excess() < alpha(w, p)
    });
    let mut inv = Check::new(suite, pv, Some(n), "weight_excess_identity").passed_if(bad.is_none());
    if let Some(r) = bad {
        inv = inv.witness(Value::from(r.to_string()));
    }
    out.push(inv);
    out
}

fn mseq_checks(suite: Suite, n: u64, p: Prime) -> Vec<Check> {
    let pv = p.get();
    let m = construct_m(n, p);
    let l = l_of_n(n, p);
    let brute = brute_force_rlex_max(n, p);
    let conditions = satisfies_m_conditions(&m.seq, n, p);
    let ok = conditions && m.weight() as i64 == l + 1 && m.seq == brute;
    let mut construct = Check::new(suite, pv, Some(n), "m_sequence")
        .param("sequence", m.seq.to_string())
        .param("weight", m.weight())
        .param("l", l)
        .passed_if(ok);
    if !ok {
        construct = construct.witness(json!({
            "conditions": conditions,
            "brute_force_max": brute.to_string(),
        }));
    }

    let uniq = m_uniqueness_check(n, p);
    let mut unique = Check::new(suite, pv, Some(n), "m_unique")
        .param("survivors", uniq.survivors.len())
        .passed_if(uniq.passed());
    if !uniq.passed() {
        unique = unique.witness(Value::from(
            uniq.survivors
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
        ));
    }

    let (next, trace) = successor_via_moves(n, p);
    let deltas: Vec<i64> = trace.iter().map(|t| t.weight_delta).collect();
    let expected = construct_m(n + 1, p).seq;
    let mut successor = Check::new(suite, pv, Some(n), "successor_moves")
        .param("moves", trace.len())
        .param("weight_deltas", deltas)
        .passed_if(next == expected);
    if next != expected {
        successor = successor.witness(json!({
            "reached": next.to_string(),
            "expected": expected.to_string(),
            "trace": trace,
        }));
    }
    vec![construct, unique, successor]
}

fn binom_check(suite: Suite, which: BinomCheck, p: Prime) -> Check {
    let pv = p.get();
    match which {
        BinomCheck::ModP => {
            let bad = (-64i64..=64)
                .flat_map(|m| (0..=32u64).map(move |l| (m, l)))
                .find(|&(m, l)| {
                    let exact = binom_int(m, l as i64) % i64::from(pv);
                    let exact = i64::try_from(exact).unwrap().rem_euclid(i64::from(pv));
                    i64::from(binom_mod_p(m, l, p).value()) != exact
                });
            let mut c = Check::new(suite, pv, None, "mod_p_agreement")
                .param("m_range", "-64..64")
                .param("l_range", "0..32")
                .passed_if(bad.is_none());
            if let Some((m, l)) = bad {
                c = c.witness(json!({"m": m, "l": l}));
            }
            c
        }
        BinomCheck::Pascal => {
            let bad = (-64i64..=64)
                .flat_map(|m| (1..=32i64).map(move |l| (m, l)))
                .find(|&(m, l)| binom_int(m, l) != binom_int(m - 1, l) + binom_int(m - 1, l - 1));
            let mut c = Check::new(suite, pv, None, "pascal_recursion")
                .param("m_range", "-64..64")
                .param("l_range", "1..32")
                .passed_if(bad.is_none());
            if let Some((m, l)) = bad {
                c = c.witness(json!({"m": m, "l": l}));
            }
            c
        }
        BinomCheck::AlternatingSum => {
            let bad = (0..=16i64)
                .flat_map(|l| (0..=16u64).map(move |m| (l, m)))
                .flat_map(|(l, m)| (-32..=32i64).map(move |n| (l, m, n)))
                .find(|&(l, m, n)| !alternating_sum_identity_holds(m, n, l));
            let mut c = Check::new(suite, pv, None, "alternating_sum_identity")
                .param("l_range", "0..16")
                .param("m_range", "0..16")
                .param("n_range", "-32..32")
                .passed_if(bad.is_none());
            if let Some((l, m, n)) = bad {
                c = c.witness(json!({"l": l, "m": m, "n": n}));
            }
            c
        }
        BinomCheck::AlternatingVanishing => {
            let bad = (0..=16i64)
                .flat_map(|l| (-32..=32i64).map(move |n| (l, n)))
                .find(|&(l, n)| alternating_binomial_sum(l as u64 + 1, n, l) != 0.into());
            let mut c = Check::new(suite, pv, None, "alternating_sum_vanishing")
                .param("l_range", "0..16")
                .param("n_range", "-32..32")
                .passed_if(bad.is_none());
            if let Some((l, n)) = bad {
                c = c.witness(json!({"l": l, "n": n}));
            }
            c
        }
    }
}
