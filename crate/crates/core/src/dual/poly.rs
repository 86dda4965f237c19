use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::seq::ExponentSeq;
use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};

/// Sparse polynomial in `F_p[xi_1, xi_2, ...]`. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct DualPoly {
    prime: Prime,
    terms: BTreeMap<ExponentSeq, u32>,
}

impl DualPoly {
    pub fn zero(prime: Prime) -> Self {
        DualPoly {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(prime: Prime) -> Self {
        DualPoly::monomial(ExponentSeq::unit(), prime)
    }

    pub fn monomial(seq: ExponentSeq, prime: Prime) -> Self {
        let mut p = DualPoly::zero(prime);
        p.add_term(seq, 1);
        p
    }

    /// `xi_k`.
    pub fn xi(k: usize, prime: Prime) -> Self {
        DualPoly::monomial(ExponentSeq::xi(k, 1), prime)
    }

    pub fn from_terms<I>(terms: I, prime: Prime) -> Self
    where
        I: IntoIterator<Item = (ExponentSeq, i64)>,
    {
        let mut p = DualPoly::zero(prime);
        for (s, c) in terms {
            p.add_term(s, prime.reduce(c));
        }
        p
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending right-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentSeq, FpScalar)> + '_ {
        self.terms
            .iter()
            .map(move |(s, &c)| (s, FpScalar::from_residue(c, self.prime)))
    }

    pub fn coefficient(&self, seq: &ExponentSeq) -> FpScalar {
        FpScalar::from_residue(self.terms.get(seq).copied().unwrap_or(0), self.prime)
    }

    /// Adds `coeff * xi^seq`, where `coeff` is a residue mod p.
    pub fn add_term(&mut self, seq: ExponentSeq, coeff: u32) {
        let prime = self.prime;
        let coeff = coeff % prime.get();
        if coeff == 0 {
            return;
        }
        match self.terms.entry(seq) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let c = prime.add(*e.get(), coeff);
                if c == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = c;
                }
            }
        }
    }

    /// The common degree of all terms, or `None` if the polynomial is zero or
    /// not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degrees = self.terms.keys().map(|s| s.degree(self.prime));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn check_prime(&self, other: &DualPoly) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch {
                left: self.prime.get(),
                right: other.prime.get(),
            })
        }
    }

    pub fn add(&self, other: &DualPoly) -> Result<DualPoly> {
        self.check_prime(other)?;
        let mut out = self.clone();
        for (s, &c) in &other.terms {
            out.add_term(s.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> DualPoly {
        self.scale(FpScalar::new(-1, self.prime))
    }

    pub fn scale(&self, c: FpScalar) -> DualPoly {
        assert_eq!(c.prime(), self.prime);
        if c.is_zero() {
            return DualPoly::zero(self.prime);
        }
        DualPoly {
            prime: self.prime,
            terms: self
                .terms
                .iter()
                .map(|(s, &v)| (s.clone(), self.prime.mul(v, c.value())))
                .collect(),
        }
    }

    pub fn mul(&self, other: &DualPoly) -> Result<DualPoly> {
        self.check_prime(other)?;
        let prime = self.prime;
        let mut acc: BTreeMap<ExponentSeq, u32> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let slot = acc.entry(a.add(b)).or_insert(0);
                *slot = prime.add(*slot, prime.mul(ca, cb));
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(DualPoly { prime, terms: acc })
    }

    pub fn pow(&self, mut exp: u64) -> DualPoly {
        let mut result = DualPoly::one(self.prime);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base).expect("same prime");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same prime");
            }
        }
        result
    }
}

impl fmt::Display for DualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (c, s.is_unit()) {
                (1, _) => write!(f, "{}", s.to_monomial_string())?,
                (_, true) => write!(f, "{c}")?,
                _ => write!(f, "{c} {}", s.to_monomial_string())?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[F_{}] {}", self.prime, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u32]) -> ExponentSeq {
        ExponentSeq::new(v.to_vec())
    }

    #[test]
    fn unit_is_neutral() {
        let p = Prime::THREE;
        let a = DualPoly::from_terms([(seq(&[2]), 1), (seq(&[0, 1]), 2)], p);
        assert_eq!(a.mul(&DualPoly::one(p)).unwrap(), a);
    }

    #[test]
    fn square_of_xi1() {
        let p = Prime::TWO;
        let x = DualPoly::xi(1, p);
        assert_eq!(x.mul(&x).unwrap(), DualPoly::monomial(seq(&[2]), p));
    }

    #[test]
    fn frobenius_kills_cross_terms() {
        let p = Prime::TWO;
        let s = DualPoly::xi(1, p).add(&DualPoly::xi(2, p)).unwrap();
        let expected = DualPoly::from_terms([(seq(&[2]), 1), (seq(&[0, 2]), 1)], p);
        assert_eq!(s.mul(&s).unwrap(), expected);
        assert_eq!(s.pow(2), expected);
    }

    #[test]
    fn cross_terms_survive_at_odd_prime() {
        let p = Prime::THREE;
        let s = DualPoly::xi(1, p).add(&DualPoly::xi(2, p)).unwrap();
        let sq = s.pow(2);
        assert_eq!(sq.coefficient(&seq(&[1, 1])).value(), 2);
        assert_eq!(s.pow(3).num_terms(), 2);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = Prime::FIVE;
        let a = DualPoly::xi(2, p);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        let mut b = DualPoly::zero(p);
        b.add_term(seq(&[1]), 3);
        b.add_term(seq(&[1]), 2);
        assert!(b.is_zero());
    }

    #[test]
    fn prime_mismatch_is_an_error() {
        let a = DualPoly::xi(1, Prime::TWO);
        let b = DualPoly::xi(1, Prime::THREE);
        assert_eq!(a.mul(&b), Err(Error::PrimeMismatch { left: 2, right: 3 }));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn display() {
        let p = Prime::THREE;
        let a = DualPoly::from_terms([(seq(&[3]), 1), (seq(&[0, 1]), 2), (seq(&[]), 1)], p);
        assert_eq!(a.to_string(), "2 xi2 + xi1^3 + 1");
        assert_eq!(DualPoly::zero(p).to_string(), "0");
    }

    #[test]
    fn homogeneity() {
        let p = Prime::TWO;
        let a = DualPoly::from_terms([(seq(&[3]), 1), (seq(&[0, 1]), 1)], p);
        assert_eq!(a.homogeneous_degree(), Some(3));
        let b = a.add(&DualPoly::one(p)).unwrap();
        assert_eq!(b.homogeneous_degree(), None);
    }
}
