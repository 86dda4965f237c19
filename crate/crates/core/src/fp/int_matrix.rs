use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::binomial::binom_int;
use crate::error::{Error, Result};

/// Moduli used to cross-check every fraction-free determinant.
const CROSS_CHECK_MODULI: [u64; 3] = [2_147_483_647, 1_000_000_007, 998_244_353];

/// Square matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl BigIntMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        BigIntMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Ok(BigIntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// The `(l+1) x (l+1)` Toeplitz matrix with entries `C(m + j - i, l)`.
    pub fn binomial_toeplitz(l: usize, m: i64) -> Self {
        BigIntMatrix::from_fn(l + 1, |i, j| binom_int(m + j as i64 - i as i64, l as i64))
    }

    /// The companion-type matrix that shifts the Toeplitz family by one:
    /// first row `(-1)^c C(l+1, c+1)`, ones on the subdiagonal.
    pub fn binomial_shift(l: usize) -> Self {
        BigIntMatrix::from_fn(l + 1, |i, j| {
            if i == 0 {
                let b = binom_int(l as i64 + 1, j as i64 + 1);
                if j % 2 == 0 {
                    b
                } else {
                    -b
                }
            } else if j + 1 == i {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &BigIntMatrix) -> Result<BigIntMatrix> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                expected: self.n as u64,
                found: other.n as u64,
            });
        }
        let n = self.n;
        Ok(BigIntMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    /// Exact determinant by Bareiss elimination, cross-checked against
    /// Gaussian elimination modulo several primes.
    pub fn det_exact(&self) -> Result<BigInt> {
        let det = self.det_bareiss();
        for q in CROSS_CHECK_MODULI {
            let modular = self.det_mod(q);
            let reduced = det.mod_floor(&BigInt::from(q)).to_u64().unwrap();
            if reduced != modular {
                return Err(Error::DeterminantMismatch {
                    modulus: q,
                    exact: det.to_string(),
                    modular,
                });
            }
        }
        Ok(det)
    }

    pub fn det_bareiss(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    // exact by Sylvester's identity
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        let det = a[n * n - 1].clone();
        if sign {
            -det
        } else {
            det
        }
    }

    /// Determinant modulo a prime `q` by ordinary elimination.
    pub fn det_mod(&self, q: u64) -> u64 {
        let n = self.n;
        let qb = BigInt::from(q);
        let mut a: Vec<u64> = self
            .data
            .iter()
            .map(|x| x.mod_floor(&qb).to_u64().unwrap())
            .collect();
        let mulm = |x: u64, y: u64| ((u128::from(x) * u128::from(y)) % u128::from(q)) as u64;
        let powm = |mut b: u64, mut e: u64| {
            let mut r = 1 % q;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulm(r, b);
                }
                b = mulm(b, b);
                e >>= 1;
            }
            r
        };
        let mut det = 1 % q;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| a[i * n + c] != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    a.swap(c * n + j, pr * n + j);
                }
                det = (q - det) % q;
            }
            let piv = a[c * n + c];
            det = mulm(det, piv);
            let inv = powm(piv, q - 2);
            for i in c + 1..n {
                let f = mulm(a[i * n + c], inv);
                if f != 0 {
                    for j in c..n {
                        let sub = mulm(f, a[c * n + j]);
                        a[i * n + j] = (a[i * n + j] + q - sub) % q;
                    }
                }
            }
        }
        det
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}
