//! Elements of `P^n` as pairing vectors.
//!
//! An element `theta` of degree `n` is stored as the list of values
//! `<theta, xi^R>` over all degree-`n` monomials, in the order produced by
//! [`enumerate_monomials`]. Since those monomials form a basis of the dual,
//! this determines `theta`, and products `P^i theta` only need the part of
//! the coproduct with a pure `xi_1` power on the left.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::dual::{antipode_monomial, diagonal_left_xi1, enumerate_monomials, ExponentSeq};
use crate::error::{Error, Result};
use crate::fp::{FpMatrix, FpScalar, Prime};
use crate::memo::Memo;

static BASIS_CACHE: Memo<(u64, Prime), MonomialBasis> = Memo::new();
static CHI_DUAL_CACHE: Memo<(u64, Prime), OpVector> = Memo::new();
static CHI_INDUCTIVE_CACHE: Memo<(u64, Prime), OpVector> = Memo::new();

/// Degree-`n` monomials in canonical order, with a reverse index.
#[derive(Debug)]
pub struct MonomialBasis {
    degree: u64,
    prime: Prime,
    monomials: Vec<ExponentSeq>,
    index: HashMap<ExponentSeq, usize>,
}

impl MonomialBasis {
    pub fn get(n: u64, p: Prime) -> Arc<MonomialBasis> {
        BASIS_CACHE.get_or_compute(&(n, p), || {
            let monomials = enumerate_monomials(n, p);
            let index = monomials
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect();
            MonomialBasis {
                degree: n,
                prime: p,
                monomials,
                index,
            }
        })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[ExponentSeq] {
        &self.monomials
    }

    pub fn index_of(&self, seq: &ExponentSeq) -> Option<usize> {
        self.index.get(seq).copied()
    }
}

/// An element of `P^n`, given by its pairings with the degree-`n` monomials.
#[derive(Clone)]
pub struct OpVector {
    basis: Arc<MonomialBasis>,
    entries: Vec<u32>,
}

impl OpVector {
    pub fn zero(n: u64, p: Prime) -> Self {
        let basis = MonomialBasis::get(n, p);
        let entries = vec![0; basis.len()];
        OpVector { basis, entries }
    }

    pub fn from_entries(n: u64, p: Prime, entries: Vec<u32>) -> Result<Self> {
        let basis = MonomialBasis::get(n, p);
        if entries.len() != basis.len() {
            return Err(Error::OutOfRange(format!(
                "degree {n} has {} monomials, got {} entries",
                basis.len(),
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|x| x % p.get()).collect();
        Ok(OpVector { basis, entries })
    }

    pub fn degree(&self) -> u64 {
        self.basis.degree
    }

    pub fn prime(&self) -> Prime {
        self.basis.prime
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Raw residues in canonical monomial order.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `<theta, xi^R>`; zero for monomials of another degree.
    pub fn pairing(&self, seq: &ExponentSeq) -> FpScalar {
        let v = self.basis.index_of(seq).map_or(0, |i| self.entries[i]);
        FpScalar::new(i64::from(v), self.prime())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentSeq, FpScalar)> + '_ {
        let p = self.prime();
        self.basis
            .monomials
            .iter()
            .zip(&self.entries)
            .map(move |(s, &v)| (s, FpScalar::new(i64::from(v), p)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Monomials at which the pairing vanishes.
    pub fn zero_pairings(&self) -> Vec<&ExponentSeq> {
        self.iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(s, _)| s)
            .collect()
    }

    fn check_compatible(&self, other: &OpVector) -> Result<()> {
        if self.prime() != other.prime() {
            return Err(Error::PrimeMismatch {
                left: self.prime().get(),
                right: other.prime().get(),
            });
        }
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &OpVector) -> Result<OpVector> {
        self.check_compatible(other)?;
        let p = self.prime();
        Ok(self.map_with(other, |a, b| p.add(a, b)))
    }

    pub fn sub(&self, other: &OpVector) -> Result<OpVector> {
        self.check_compatible(other)?;
        let p = self.prime();
        Ok(self.map_with(other, |a, b| p.sub(a, b)))
    }

    pub fn neg(&self) -> OpVector {
        let p = self.prime();
        OpVector {
            basis: Arc::clone(&self.basis),
            entries: self.entries.iter().map(|&a| p.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: FpScalar) -> OpVector {
        let p = self.prime();
        assert_eq!(c.prime(), p);
        OpVector {
            basis: Arc::clone(&self.basis),
            entries: self.entries.iter().map(|&a| p.mul(a, c.value())).collect(),
        }
    }

    fn map_with(&self, other: &OpVector, f: impl Fn(u32, u32) -> u32) -> OpVector {
        OpVector {
            basis: Arc::clone(&self.basis),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl PartialEq for OpVector {
    fn eq(&self, other: &Self) -> bool {
        self.prime() == other.prime()
            && self.degree() == other.degree()
            && self.entries == other.entries
    }
}

impl Eq for OpVector {}

impl fmt::Debug for OpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpVector(p={}, n={}) {{", self.prime(), self.degree())?;
        for (i, (s, v)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {s}: {v}")?;
        }
        write!(f, " }}")
    }
}

struct Entry<'a>(&'a ExponentSeq, u32);

impl Serialize for Entry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("monomial", &self.0.to_monomial_string())?;
        m.serialize_entry("value", &self.1)?;
        m.end()
    }
}

/// `{degree, prime, entries: [{monomial, value}]}` in canonical order.
impl Serialize for OpVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry<'_>> = self
            .basis
            .monomials
            .iter()
            .zip(&self.entries)
            .map(|(m, &v)| Entry(m, v))
            .collect();
        let mut st = s.serialize_struct("OpVector", 3)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("prime", &self.prime().get())?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// `P^n`: dual to `xi_1^n`.
pub fn op_pn(n: u64, p: Prime) -> OpVector {
    let mut v = OpVector::zero(n, p);
    let i = v
        .basis
        .index_of(&ExponentSeq::new(vec![n as u32]))
        .expect("xi_1^n is always a degree-n monomial");
    v.entries[i] = 1 % p.get();
    v
}

/// `chi P^n` via `<chi P^n, xi^R> = <P^n, chi xi^R>`, the coefficient of
/// `xi_1^n` in `chi(xi^R)`.
pub fn chi_pn_dual(n: u64, p: Prime) -> OpVector {
    (*CHI_DUAL_CACHE.get_or_compute(&(n, p), || {
        let basis = MonomialBasis::get(n, p);
        let target = ExponentSeq::new(vec![n as u32]);
        let entries = basis
            .monomials
            .iter()
            .map(|r| antipode_monomial(r, p).coefficient(&target).value())
            .collect();
        OpVector { basis, entries }
    }))
    .clone()
}

/// `P^i theta`, an element of degree `i + deg(theta)`.
pub fn compose_left_pi(i: u64, theta: &OpVector) -> OpVector {
    let p = theta.prime();
    let n = theta.degree() + i;
    let mut out = OpVector::zero(n, p);
    for (slot, r) in out.entries.iter_mut().zip(&out.basis.monomials) {
        let mut acc = 0u32;
        for (s, c) in diagonal_left_xi1(r, i, p).terms() {
            acc = p.add(acc, p.mul(c.value(), theta.pairing(s).value()));
        }
        *slot = acc;
    }
    out
}

/// `chi P^n` from the recursion `chi P^n = -sum_{i>=1} P^i chi P^(n-i)`.
pub fn chi_pn_inductive(n: u64, p: Prime) -> OpVector {
    (*chi_inductive_shared(n, p)).clone()
}

fn chi_inductive_shared(n: u64, p: Prime) -> Arc<OpVector> {
    CHI_INDUCTIVE_CACHE.get_or_compute(&(n, p), || {
        if n == 0 {
            return op_pn(0, p);
        }
        let mut sum = OpVector::zero(n, p);
        for i in 1..=n {
            let term = compose_left_pi(i, &chi_inductive_shared(n - i, p));
            sum = sum.add(&term).expect("same degree");
        }
        sum.neg()
    })
}

/// `P^i chi P^(n-i)`.
pub fn op_pi_chi_pnmi(i: u64, n: u64, p: Prime) -> Result<OpVector> {
    if i > n {
        return Err(Error::OutOfRange(format!(
            "P^i chi P^(n-i) needs 0 <= i <= n, got i={i}, n={n}"
        )));
    }
    Ok(compose_left_pi(i, &chi_pn_dual(n - i, p)))
}

/// The matrix of `mu: F_p^(n+1) -> P^n`, `e_i -> P^i chi P^(n-i)`: one row
/// per degree-`n` monomial, column `i` holding the pairings of
/// `P^i chi P^(n-i)`.
#[derive(Clone, Debug)]
pub struct MuMatrix {
    degree: u64,
    matrix: FpMatrix,
    columns: Vec<OpVector>,
}

impl MuMatrix {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn prime(&self) -> Prime {
        self.matrix.prime()
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    /// `P^i chi P^(n-i)` as an element.
    pub fn column(&self, i: usize) -> &OpVector {
        &self.columns[i]
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// `mu(v)` for a coefficient vector `v` in `F_p^(n+1)`.
    pub fn apply(&self, coeffs: &[u32]) -> OpVector {
        let entries = self.matrix.mul_vec(coeffs);
        OpVector {
            basis: Arc::clone(&self.columns[0].basis),
            entries,
        }
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        self.matrix.kernel_basis()
    }
}

pub fn mu_matrix(n: u64, p: Prime) -> MuMatrix {
    let columns: Vec<OpVector> = (0..=n)
        .map(|i| op_pi_chi_pnmi(i, n, p).expect("i <= n"))
        .collect();
    let rows = columns[0].len();
    let raw: Vec<Vec<u32>> = columns.iter().map(|c| c.entries.clone()).collect();
    MuMatrix {
        degree: n,
        matrix: FpMatrix::from_columns(&raw, rows, p),
        columns,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::oracle::full_diagonal;

    fn seq(v: &[u32]) -> ExponentSeq {
        ExponentSeq::new(v.to_vec())
    }

    #[test]
    fn pn_is_dual_to_xi1_power() {
        let v = op_pn(0, Prime::TWO);
        assert_eq!(v.entries(), &[1]);
        let v = op_pn(3, Prime::TWO);
        assert_eq!(v.pairing(&seq(&[3])).value(), 1);
        assert_eq!(v.pairing(&seq(&[0, 1])).value(), 0);
        let v = op_pn(5, Prime::THREE);
        for (s, c) in v.iter() {
            assert_eq!(c.value(), u32::from(*s == seq(&[5])));
        }
    }

    #[test]
    fn chi_in_low_degrees() {
        assert_eq!(chi_pn_dual(0, Prime::THREE).entries(), &[1]);
        assert_eq!(chi_pn_dual(1, Prime::TWO).entries(), &[1]);
        assert_eq!(
            chi_pn_dual(1, Prime::THREE).pairing(&seq(&[1])).symmetric(),
            -1
        );
        let c = chi_pn_dual(3, Prime::TWO);
        assert_eq!(c.pairing(&seq(&[0, 1])).value(), 1);
        assert_eq!(c.pairing(&seq(&[3])).value(), 1);
    }

    #[test]
    fn inductive_low_degrees() {
        for p in [Prime::TWO, Prime::THREE, Prime::FIVE] {
            assert_eq!(chi_pn_inductive(0, p), op_pn(0, p));
            assert_eq!(chi_pn_inductive(1, p), op_pn(1, p).neg());
        }
    }

    #[test]
    fn routes_agree_in_small_degrees() {
        for p in [Prime::TWO, Prime::THREE, Prime::FIVE] {
            for n in 0..=10 {
                assert_eq!(chi_pn_dual(n, p), chi_pn_inductive(n, p), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn composing_with_p0_is_identity() {
        let theta = chi_pn_dual(6, Prime::THREE);
        assert_eq!(compose_left_pi(0, &theta), theta);
        for p in [Prime::TWO, Prime::THREE] {
            for n in 0..8 {
                assert_eq!(compose_left_pi(n, &op_pn(0, p)), op_pn(n, p));
            }
        }
    }

    #[test]
    fn chi_sq3_factors_through_sq2() {
        let p = Prime::TWO;
        assert_eq!(compose_left_pi(2, &chi_pn_dual(1, p)), chi_pn_dual(3, p));
    }

    #[test]
    fn op_pi_chi_values_and_range() {
        let p = Prime::TWO;
        assert_eq!(op_pi_chi_pnmi(3, 3, p).unwrap(), op_pn(3, p));
        assert_eq!(
            op_pi_chi_pnmi(2, 3, p)
                .unwrap()
                .pairing(&seq(&[0, 1]))
                .value(),
            1
        );
        assert_eq!(
            op_pi_chi_pnmi(3, 3, p)
                .unwrap()
                .pairing(&seq(&[0, 1]))
                .value(),
            0
        );
        assert!(matches!(op_pi_chi_pnmi(4, 3, p), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn mu_matrix_small_cases() {
        let m = mu_matrix(0, Prime::TWO);
        assert_eq!(m.matrix().rows(), 1);
        assert_eq!(m.matrix().cols(), 1);
        assert_eq!(m.matrix().get(0, 0), 1);

        let m = mu_matrix(1, Prime::TWO);
        assert_eq!(m.matrix().column(0), m.matrix().column(1));
        assert_eq!(m.rank(), 1);

        assert_eq!(mu_matrix(3, Prime::TWO).rank(), 2);
    }

    #[test]
    fn defining_relation_sums_to_zero() {
        for p in [Prime::TWO, Prime::THREE, Prime::FIVE] {
            for n in 1..=10 {
                let m = mu_matrix(n, p);
                let ones = vec![1u32; n as usize + 1];
                assert!(m.apply(&ones).is_zero(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn serializes_in_canonical_order() {
        let v = chi_pn_dual(3, Prime::TWO);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(
            json,
            r#"{"degree":3,"prime":2,"entries":[{"monomial":"xi2","value":1},{"monomial":"xi1^3","value":1}]}"#
        );
    }

    #[test]
    fn mixing_degrees_is_an_error() {
        let a = op_pn(2, Prime::TWO);
        let b = op_pn(3, Prime::TWO);
        assert!(matches!(a.add(&b), Err(Error::DegreeMismatch { .. })));
        let c = op_pn(2, Prime::THREE);
        assert!(matches!(a.sub(&c), Err(Error::PrimeMismatch { .. })));
        assert!(OpVector::from_entries(3, Prime::TWO, vec![1]).is_err());
    }

    // <P^i P^j theta, xi^R> through the full coproduct applied twice.
    fn two_step(i: u64, j: u64, theta: &OpVector) -> OpVector {
        let p = theta.prime();
        let n = theta.degree() + i + j;
        let left_i = seq(&[i as u32]);
        let left_j = seq(&[j as u32]);
        let entries = MonomialBasis::get(n, p)
            .monomials()
            .iter()
            .map(|r| {
                let mut acc = 0u32;
                for (x1, x2, c) in full_diagonal(r, p).iter() {
                    if x1.degree(p) != i + j {
                        continue;
                    }
                    let inner = full_diagonal(x1, p).coefficient(&left_i, &left_j);
                    let term = p.mul(p.mul(c, inner), theta.pairing(x2).value());
                    acc = p.add(acc, term);
                }
                acc
            })
            .collect();
        OpVector::from_entries(n, p, entries).unwrap()
    }

    #[test]
    fn iterated_composition_matches_full_coproduct() {
        for p in [Prime::TWO, Prime::THREE] {
            for m in 0..=3 {
                let theta = chi_pn_dual(m, p);
                for i in 0..=3 {
                    for j in 0..=3 {
                        let direct = compose_left_pi(i, &compose_left_pi(j, &theta));
                        assert_eq!(direct, two_step(i, j, &theta), "p={p} i={i} j={j} m={m}");
                    }
                }
            }
        }
    }
}
