use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime number, checked at construction.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);
    pub const FIVE: Prime = Prime(5);

    pub fn new(p: u32) -> Result<Self> {
        if is_prime(u64::from(p)) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(u64::from(p)))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_u64(self) -> u64 {
        u64::from(self.0)
    }

    /// Reduces a signed integer to its canonical residue in `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(i64::from(self.0)) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % self.as_u64()) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + self.as_u64() - u64::from(b)) % self.as_u64()) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % self.as_u64()) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, base: u32, mut exp: u64) -> u32 {
        let p = self.as_u64();
        let mut acc = 1 % p;
        let mut b = u64::from(base) % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        assert!(
            !a.is_multiple_of(self.0),
            "zero has no inverse mod {}",
            self.0
        );
        self.pow(a, u64::from(self.0) - 2)
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of F_p, stored as its canonical representative.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    prime: Prime,
}

impl FpScalar {
    pub fn new(value: i64, prime: Prime) -> Self {
        FpScalar {
            value: prime.reduce(value),
            prime,
        }
    }

    pub(crate) fn from_residue(value: u32, prime: Prime) -> Self {
        debug_assert!(value < prime.get());
        FpScalar { value, prime }
    }

    pub fn zero(prime: Prime) -> Self {
        FpScalar { value: 0, prime }
    }

    pub fn one(prime: Prime) -> Self {
        FpScalar::new(1, prime)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Nonzero elements of a field are exactly its units.
    pub fn is_unit(self) -> bool {
        self.value != 0
    }

    /// Representative in `(-p/2, p/2]`; at `p = 2` this is `0` or `1`.
    pub fn symmetric(self) -> i64 {
        let v = i64::from(self.value);
        let p = i64::from(self.prime.get());
        if 2 * v > p {
            v - p
        } else {
            v
        }
    }

    pub fn inverse(self) -> Option<Self> {
        self.is_unit().then(|| FpScalar {
            value: self.prime.inv(self.value),
            prime: self.prime,
        })
    }

    fn check(self, other: FpScalar) {
        assert_eq!(self.prime, other.prime, "mixed primes in F_p arithmetic");
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        self.check(rhs);
        FpScalar::from_residue(self.prime.add(self.value, rhs.value), self.prime)
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        self.check(rhs);
        FpScalar::from_residue(self.prime.sub(self.value, rhs.value), self.prime)
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        self.check(rhs);
        FpScalar::from_residue(self.prime.mul(self.value, rhs.value), self.prime)
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar::from_residue(self.prime.neg(self.value), self.prime)
    }
}

impl AddAssign for FpScalar {
    fn add_assign(&mut self, rhs: FpScalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for FpScalar {
    fn sub_assign(&mut self, rhs: FpScalar) {
        *self = *self - rhs;
    }
}

impl MulAssign for FpScalar {
    fn mul_assign(&mut self, rhs: FpScalar) {
        *self = *self * rhs;
    }
}

/// Sum of the base-`p` digits of `n`.
///
/// The argument is unsigned, so negative input is unrepresentable.
pub fn alpha(mut n: u64, p: Prime) -> u64 {
    let p = p.as_u64();
    let mut sum = 0;
    while n > 0 {
        sum += n % p;
        n /= p;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert_eq!(Prime::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(0), Err(Error::NotPrime(0)));
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(7919).is_ok());
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(0, Prime::TWO), 0);
        assert_eq!(alpha(6, Prime::TWO), 2);
        // 10 = 101 in base 3
        assert_eq!(alpha(10, Prime::THREE), 2);
        assert_eq!(alpha(24, Prime::FIVE), 8);
    }

    #[test]
    fn alpha_matches_repeated_division_oracle() {
        for p in [Prime::TWO, Prime::THREE, Prime::FIVE] {
            for n in 0..500u64 {
                let digits: Vec<u64> =
                    std::iter::successors(Some(n), |&m| (m >= p.as_u64()).then(|| m / p.as_u64()))
                        .map(|m| m % p.as_u64())
                        .collect();
                assert_eq!(alpha(n, p), digits.iter().sum::<u64>());
            }
        }
    }

    #[test]
    fn scalar_arithmetic() {
        let p = Prime::FIVE;
        let a = FpScalar::new(3, p);
        let b = FpScalar::new(-1, p);
        assert_eq!(b.value(), 4);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 4);
        assert_eq!((a * b).value(), 2);
        assert_eq!((-a).value(), 2);
        assert_eq!(a * a.inverse().unwrap(), FpScalar::one(p));
        assert_eq!(FpScalar::zero(p).inverse(), None);
        assert_eq!(b.symmetric(), -1);
        assert_eq!(FpScalar::new(-1, Prime::TWO).symmetric(), 1);
    }

    #[test]
    #[should_panic]
    fn mixed_primes_panic() {
        let _ = FpScalar::new(1, Prime::TWO) + FpScalar::new(1, Prime::THREE);
    }
}
