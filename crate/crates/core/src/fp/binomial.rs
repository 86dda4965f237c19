use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{FpScalar, Prime};

/// Generalized binomial coefficient `m(m-1)...(m-l+1) / l!` for any integer
/// top; zero when `l < 0`.
pub fn binom_int(m: i64, l: i64) -> BigInt {
    if l < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for t in 0..l {
        // C(m, t+1) = C(m, t) (m - t) / (t + 1), exact at every step
        acc *= BigInt::from(m) - BigInt::from(t);
        acc /= BigInt::from(t + 1);
    }
    acc
}

/// `C(m, l) mod p` for any integer `m` and `l >= 0`.
///
/// Negative tops go through `C(m, l) = (-1)^l C(l - m - 1, l)`, then Lucas.
pub fn binom_mod_p(m: i64, l: u64, p: Prime) -> FpScalar {
    let (top, negate) = if m < 0 {
        (i128::from(l) - i128::from(m) - 1, l % 2 == 1)
    } else {
        (i128::from(m), false)
    };
    let v = lucas_binom(top as u128, u128::from(l), p);
    let v = if negate { p.neg(v) } else { v };
    FpScalar::from_residue(v, p)
}

/// `C(top, bottom) mod p` for nonnegative arguments via Lucas' theorem.
pub fn lucas_binom(mut top: u128, mut bottom: u128, p: Prime) -> u32 {
    let pp = u128::from(p.get());
    let mut acc = 1u32 % p.get();
    while bottom > 0 {
        let (t, b) = ((top % pp) as u32, (bottom % pp) as u32);
        if b > t {
            return 0;
        }
        acc = p.mul(acc, digit_binom(t, b, p));
        top /= pp;
        bottom /= pp;
    }
    acc
}

// C(t, b) mod p with 0 <= b <= t < p; no factor of p appears.
fn digit_binom(t: u32, b: u32, p: Prime) -> u32 {
    let b = b.min(t - b);
    let mut num = 1;
    let mut den = 1;
    for i in 0..b {
        num = p.mul(num, t - i);
        den = p.mul(den, i + 1);
    }
    p.mul(num, p.inv(den))
}
