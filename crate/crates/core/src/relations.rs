//! Linear relations among the elements `P^i chi P^(n-i)`.
//!
//! A relation is a coefficient vector `c` in `F_p^(n+1)` with
//! `sum_i c_i P^i chi P^(n-i) = 0`, i.e. an element of the kernel of the
//! [`MuMatrix`]. The binomial family `c_i = C(k - i, l)` is a relation
//! whenever `p l - alpha(l) < (p - 1) n`; taking `l = l(n)`, any `l(n) + 1`
//! consecutive values of `k` give a basis of the kernel.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fp::{alpha, binom_int, binom_mod_p, BigIntMatrix, FpMatrix, Prime};
use crate::operations::{chi_pn_dual, compose_left_pi, mu_matrix, MuMatrix, OpVector};

/// `l(n) = max { j : p j - alpha(j) < (p - 1) n }`, or `-1` when the set is
/// empty (only at `n = 0`).
pub fn l_of_n(n: u64, p: Prime) -> i64 {
    let bound = (p.as_u64() - 1) * n;
    // p j - alpha(j) >= (p - 1) j, so no j >= n qualifies
    (0..n)
        .take_while(|&j| p.as_u64() * j - alpha(j, p) < bound)
        .last()
        .map_or(-1, |j| j as i64)
}

/// The relation `sum_i C(k - i, l) P^i chi P^(n-i)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationSpec {
    pub n: u64,
    pub l: u64,
    pub k: i64,
}

impl RelationSpec {
    pub fn new(n: u64, l: u64, k: i64) -> Self {
        RelationSpec { n, l, k }
    }

    /// Whether `p l - alpha(l) < (p - 1) n`.
    pub fn satisfies_hypothesis(&self, p: Prime) -> bool {
        p.as_u64() * self.l - alpha(self.l, p) < (p.as_u64() - 1) * self.n
    }
}

/// Coefficients `C(k - i, l) mod p` for `0 <= i <= n`.
pub fn bm_vector(spec: RelationSpec, p: Prime) -> Vec<u32> {
    (0..=spec.n as i64)
        .map(|i| binom_mod_p(spec.k - i, spec.l, p).value())
        .collect()
}

/// `mu` applied to the binomial coefficient vector.
pub fn bm_residual(spec: RelationSpec, p: Prime) -> OpVector {
    mu_matrix(spec.n, p).apply(&bm_vector(spec, p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BmOutcome {
    Pass,
    Fail {
        residual: OpVector,
    },
    /// The hypothesis on `l` fails; nothing is claimed either way.
    HypothesisNotMet {
        residual_is_zero: bool,
    },
}

impl BmOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, BmOutcome::Pass)
    }
}

pub fn verify_bm(spec: RelationSpec, p: Prime) -> BmOutcome {
    verify_bm_with(&mu_matrix(spec.n, p), spec, p)
}

/// Same as [`verify_bm`] with a precomputed `mu` matrix.
pub fn verify_bm_with(mu: &MuMatrix, spec: RelationSpec, p: Prime) -> BmOutcome {
    assert_eq!(mu.degree(), spec.n);
    let residual = mu.apply(&bm_vector(spec, p));
    match (spec.satisfies_hypothesis(p), residual.is_zero()) {
        (true, true) => BmOutcome::Pass,
        (true, false) => BmOutcome::Fail { residual },
        (false, zero) => BmOutcome::HypothesisNotMet {
            residual_is_zero: zero,
        },
    }
}

/// Rank of the `l + 1` vectors `bm_vector(l, k)`, `m <= k <= m + l`.
pub fn relation_window_rank(n: u64, l: u64, m: i64, p: Prime) -> usize {
    let columns: Vec<Vec<u32>> = (0..=l as i64)
        .map(|t| bm_vector(RelationSpec::new(n, l, m + t), p))
        .collect();
    FpMatrix::from_columns(&columns, n as usize + 1, p).rank()
}

/// Evidence that `l(n) + 1` consecutive relations starting at `k = m` form a
/// basis of `ker mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate {
    pub n: u64,
    pub m: i64,
    pub l: i64,
    pub window_rank: usize,
    pub all_in_kernel: bool,
    pub kernel_dim: usize,
}

impl KernelCertificate {
    pub fn expected_dim(&self) -> usize {
        (self.l + 1) as usize
    }

    pub fn passed(&self) -> bool {
        self.window_rank == self.expected_dim()
            && self.all_in_kernel
            && self.kernel_dim == self.expected_dim()
    }
}

pub fn kernel_certificate(n: u64, m: i64, p: Prime) -> KernelCertificate {
    kernel_certificate_with(&mu_matrix(n, p), m, p)
}

pub fn kernel_certificate_with(mu: &MuMatrix, m: i64, p: Prime) -> KernelCertificate {
    let n = mu.degree();
    let l = l_of_n(n, p);
    let (window_rank, all_in_kernel) = if l < 0 {
        (0, true)
    } else {
        let l = l as u64;
        let in_kernel = (0..=l as i64).all(|t| {
            let v = bm_vector(RelationSpec::new(n, l, m + t), p);
            mu.apply(&v).is_zero()
        });
        (relation_window_rank(n, l, m, p), in_kernel)
    };
    KernelCertificate {
        n,
        m,
        l,
        window_rank,
        all_in_kernel,
        kernel_dim: mu.kernel_basis().len(),
    }
}

/// Evidence that `{P^i chi P^(n-i) : l(n) < i <= n}` is a basis of `V_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VnCertificate {
    pub n: u64,
    pub l: i64,
    pub rank: usize,
    pub tail_rank: usize,
}

impl VnCertificate {
    pub fn expected_rank(&self) -> usize {
        (self.n as i64 - self.l) as usize
    }

    pub fn passed(&self) -> bool {
        self.rank == self.expected_rank() && self.tail_rank == self.expected_rank()
    }
}

pub fn vn_basis_certificate(n: u64, p: Prime) -> VnCertificate {
    vn_basis_certificate_with(&mu_matrix(n, p), p)
}

pub fn vn_basis_certificate_with(mu: &MuMatrix, p: Prime) -> VnCertificate {
    let n = mu.degree();
    let l = l_of_n(n, p);
    let tail: Vec<usize> = ((l + 1) as usize..=n as usize).collect();
    VnCertificate {
        n,
        l,
        rank: mu.rank(),
        tail_rank: mu.matrix().select_columns(&tail).rank(),
    }
}

/// `Sq^a chi Sq^b`, with negative superscripts read as zero.
fn sq_chi_sq(a: i64, b: i64) -> Option<OpVector> {
    (a >= 0 && b >= 0).then(|| compose_left_pi(a as u64, &chi_pn_dual(b as u64, Prime::TWO)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DavisCertificate {
    pub r: u32,
    /// `chi Sq^(2^r - 1) = Sq^(2^(r-1)) chi Sq^(2^(r-1) - 1)`
    pub first: bool,
    /// `chi Sq^(2^r - r - 1) = Sq^(2^(r-1) - 1) chi Sq^(2^(r-1) - r)
    ///   + Sq^(2^(r-1)) chi Sq^(2^(r-1) - r - 1)`
    pub second: bool,
    /// The matching binomial relations `(2^r - 1, 2^(r-1) - 1, 2^r - 1)` and
    /// `(2^r - r - 1, 2^(r-1) - 2, 2^r - 2)` hold.
    pub binomial_forms: bool,
}

impl DavisCertificate {
    pub fn passed(&self) -> bool {
        self.first && self.second && self.binomial_forms
    }
}

/// Davis' two formulas for `chi Sq^n` at `p = 2`, for `r >= 2`.
pub fn davis_check(r: u32) -> Result<DavisCertificate> {
    if !(2..=30).contains(&r) {
        return Err(Error::OutOfRange(format!(
            "Davis formulas need 2 <= r, got r={r}"
        )));
    }
    let p = Prime::TWO;
    let h = 1i64 << (r - 1);
    let full = 2 * h;
    let r64 = i64::from(r);

    let first = chi_pn_dual((full - 1) as u64, p) == sq_chi_sq(h, h - 1).unwrap();

    let lhs = chi_pn_dual((full - r64 - 1) as u64, p);
    let mut rhs = sq_chi_sq(h - 1, h - r64).unwrap();
    if let Some(t) = sq_chi_sq(h, h - r64 - 1) {
        rhs = rhs.add(&t)?;
    }
    let second = lhs == rhs;

    let binomial_forms = [
        RelationSpec::new((full - 1) as u64, (h - 1) as u64, full - 1),
        RelationSpec::new((full - r64 - 1) as u64, (h - 2) as u64, full - 2),
    ]
    .into_iter()
    .all(|s| verify_bm(s, p).is_pass());

    Ok(DavisCertificate {
        r,
        first,
        second,
        binomial_forms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraffinCertificate {
    pub r: u32,
    pub b: u64,
    /// `sum_i Sq^(2^r i) chi Sq^(2^r (b - i)) = 0`
    pub vanishes: bool,
    /// The relation `(2^r b, 2^r - 1, 2^r b)` holds.
    pub binomial_form: bool,
}

impl StraffinCertificate {
    pub fn passed(&self) -> bool {
        self.vanishes && self.binomial_form
    }
}

/// Straffin's relation at `p = 2`, for `b >= 2`.
pub fn straffin_check(r: u32, b: u64) -> Result<StraffinCertificate> {
    if b < 2 {
        return Err(Error::OutOfRange(format!(
            "Straffin's relation needs b >= 2, got b={b}"
        )));
    }
    if r > 20 {
        return Err(Error::OutOfRange(format!("r={r} is too large")));
    }
    let p = Prime::TWO;
    let step = 1u64 << r;
    let n = step * b;
    let mut sum = OpVector::zero(n, p);
    for i in 0..=b {
        let term = compose_left_pi(step * i, &chi_pn_dual(step * (b - i), p));
        sum = sum.add(&term)?;
    }
    let binomial_form = verify_bm(RelationSpec::new(n, step - 1, n as i64), p).is_pass();
    Ok(StraffinCertificate {
        r,
        b,
        vanishes: sum.is_zero(),
        binomial_form,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzCertificate {
    pub l: usize,
    pub m: i64,
    pub det: BigInt,
    /// `B A_l(m) = A_l(m + 1)`
    pub shift_identity: bool,
}

impl ToeplitzCertificate {
    pub fn passed(&self) -> bool {
        self.det.is_one() && self.shift_identity
    }
}

/// Determinant and shift identity for the binomial Toeplitz matrix
/// `A_l(m) = [C(m + j - i, l)]`.
pub fn toeplitz_certificate(l: usize, m: i64) -> Result<ToeplitzCertificate> {
    let a = BigIntMatrix::binomial_toeplitz(l, m);
    let det = a.det_exact()?;
    let shifted = BigIntMatrix::binomial_shift(l).mul(&a)?;
    Ok(ToeplitzCertificate {
        l,
        m,
        det,
        shift_identity: shifted == BigIntMatrix::binomial_toeplitz(l, m + 1),
    })
}

/// `sum_{k=0}^{m} (-1)^k C(m, k) C(n - k, l)`.
pub fn alternating_binomial_sum(m: u64, n: i64, l: i64) -> BigInt {
    (0..=m as i64)
        .map(|k| {
            let t = binom_int(m as i64, k) * binom_int(n - k, l);
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// `sum_k (-1)^k C(m, k) C(n - k, l) = C(n - m, l - m)`.
pub fn alternating_sum_identity_holds(m: u64, n: i64, l: i64) -> bool {
    alternating_binomial_sum(m, n, l) == binom_int(n - m as i64, l - m as i64)
}
