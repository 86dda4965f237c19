//! Brute-force coproduct used to check the restricted diagonal.

use std::collections::BTreeMap;

use super::seq::ExponentSeq;
use super::DualPoly;
use crate::fp::Prime;

pub(crate) struct Tensor {
    prime: Prime,
    terms: BTreeMap<(ExponentSeq, ExponentSeq), u32>,
}

impl Tensor {
    fn unit(prime: Prime) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((ExponentSeq::unit(), ExponentSeq::unit()), 1);
        Tensor { prime, terms }
    }

    fn mul(&self, other: &Tensor) -> Tensor {
        let p = self.prime;
        let mut terms: BTreeMap<(ExponentSeq, ExponentSeq), u32> = BTreeMap::new();
        for ((a1, a2), &ca) in &self.terms {
            for ((b1, b2), &cb) in &other.terms {
                let slot = terms.entry((a1.add(b1), a2.add(b2))).or_insert(0);
                *slot = p.add(*slot, p.mul(ca, cb));
            }
        }
        terms.retain(|_, c| *c != 0);
        Tensor { prime: p, terms }
    }

    pub(crate) fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn right_factor_of(&self, left: &ExponentSeq) -> DualPoly {
        let mut out = DualPoly::zero(self.prime);
        for ((l, r), &c) in &self.terms {
            if l == left {
                out.add_term(r.clone(), c);
            }
        }
        out
    }

    pub(crate) fn terms_with_left(&self, pred: impl Fn(&ExponentSeq) -> bool) -> usize {
        self.terms.keys().filter(|(l, _)| pred(l)).count()
    }
}

// Delta xi_k = sum_{i+j=k} xi_i^{p^j} (x) xi_j
fn delta_xi(k: usize, p: Prime) -> Tensor {
    let mut terms = BTreeMap::new();
    for i in 0..=k {
        let j = k - i;
        let left = if i == 0 {
            ExponentSeq::unit()
        } else {
            ExponentSeq::xi(i, p.get().pow(j as u32))
        };
        let right = if j == 0 {
            ExponentSeq::unit()
        } else {
            ExponentSeq::xi(j, 1)
        };
        *terms.entry((left, right)).or_insert(0) += 1;
    }
    Tensor { prime: p, terms }
}

/// Full expansion of `Delta xi^R`.
pub(crate) fn full_diagonal(seq: &ExponentSeq, p: Prime) -> Tensor {
    let mut acc = Tensor::unit(p);
    for k in 1..=seq.len() {
        let d = delta_xi(k, p);
        for _ in 0..seq.get(k) {
            acc = acc.mul(&d);
        }
    }
    acc
}

impl Tensor {
    pub(crate) fn iter(&self) -> impl Iterator<Item = (&ExponentSeq, &ExponentSeq, u32)> + '_ {
        self.terms.iter().map(|((l, r), &c)| (l, r, c))
    }

    pub(crate) fn coefficient(&self, left: &ExponentSeq, right: &ExponentSeq) -> u32 {
        self.terms
            .get(&(left.clone(), right.clone()))
            .copied()
            .unwrap_or(0)
    }
}
