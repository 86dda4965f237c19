use super::poly::DualPoly;
use super::seq::ExponentSeq;
use crate::fp::Prime;
use crate::memo::Memo;

static XI_CACHE: Memo<(usize, Prime), DualPoly> = Memo::new();
static MONOMIAL_CACHE: Memo<(ExponentSeq, Prime), DualPoly> = Memo::new();

/// `chi(xi_k)`, from `sum_{i+j=k} xi_i^{p^j} chi(xi_j) = 0` and
/// `chi(xi_0) = 1`. Homogeneous of degree `|xi_k|`.
pub fn antipode_xi(k: usize, p: Prime) -> DualPoly {
    (*antipode_xi_shared(k, p)).clone()
}

fn antipode_xi_shared(k: usize, p: Prime) -> std::sync::Arc<DualPoly> {
    XI_CACHE.get_or_compute(&(k, p), || {
        if k == 0 {
            return DualPoly::one(p);
        }
        let mut sum = DualPoly::zero(p);
        for j in 0..k {
            let exp = p.get().pow(j as u32);
            let lead = DualPoly::monomial(ExponentSeq::xi(k - j, exp), p);
            let term = lead.mul(&antipode_xi_shared(j, p)).expect("same prime");
            sum = sum.add(&term).expect("same prime");
        }
        sum.neg()
    })
}

/// `chi(xi^R)`; the dual is commutative, so `chi` is multiplicative here.
pub fn antipode_monomial(seq: &ExponentSeq, p: Prime) -> DualPoly {
    (*antipode_monomial_shared(seq, p)).clone()
}

fn antipode_monomial_shared(seq: &ExponentSeq, p: Prime) -> std::sync::Arc<DualPoly> {
    MONOMIAL_CACHE.get_or_compute(&(seq.clone(), p), || {
        if seq.is_unit() {
            return DualPoly::one(p);
        }
        let top = seq.len();
        let mut rest = seq.entries().to_vec();
        rest[top - 1] -= 1;
        let rest = ExponentSeq::new(rest);
        antipode_monomial_shared(&rest, p)
            .mul(&antipode_xi_shared(top, p))
            .expect("same prime")
    })
}

/// The antipode extended linearly to all of the dual.
pub fn antipode(x: &DualPoly) -> DualPoly {
    let p = x.prime();
    let mut out = DualPoly::zero(p);
    for (s, c) in x.terms() {
        let image = antipode_monomial_shared(s, p).scale(c);
        out = out.add(&image).expect("same prime");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::enumerate_monomials;
    use crate::dual::seq::generator_degree;
    use proptest::prelude::*;

    fn seq(v: &[u32]) -> ExponentSeq {
        ExponentSeq::new(v.to_vec())
    }

    // Closed form: chi(xi_n) = sum over compositions (a_1..a_k) of n of
    // (-1)^k prod_i xi_{a_i}^{p^{a_1 + ... + a_{i-1}}}.
    fn antipode_xi_by_compositions(n: usize, p: Prime) -> DualPoly {
        fn go(
            remaining: usize,
            prefix: usize,
            k: usize,
            acc: ExponentSeq,
            p: Prime,
            out: &mut DualPoly,
        ) {
            if remaining == 0 {
                let sign = if k.is_multiple_of(2) { 1 } else { -1 };
                out.add_term(acc, p.reduce(sign));
                return;
            }
            for a in 1..=remaining {
                let factor = ExponentSeq::xi(a, p.get().pow(prefix as u32));
                go(remaining - a, prefix + a, k + 1, acc.add(&factor), p, out);
            }
        }
        let mut out = DualPoly::zero(p);
        go(n, 0, 0, ExponentSeq::unit(), p, &mut out);
        out
    }

    #[test]
    fn first_generators() {
        assert_eq!(antipode_xi(1, Prime::TWO), DualPoly::xi(1, Prime::TWO));
        assert_eq!(
            antipode_xi(1, Prime::THREE),
            DualPoly::xi(1, Prime::THREE).neg()
        );
        let p = Prime::TWO;
        assert_eq!(
            antipode_xi(2, p),
            DualPoly::from_terms([(seq(&[3]), 1), (seq(&[0, 1]), 1)], p)
        );
        assert_eq!(
            antipode_xi(3, p),
            DualPoly::from_terms(
                [
                    (seq(&[0, 0, 1]), 1),
                    (seq(&[4, 1]), 1),
                    (seq(&[1, 2]), 1),
                    (seq(&[7]), 1)
                ],
                p
            )
        );
    }

    #[test]
    fn matches_composition_formula() {
        for p in [Prime::TWO, Prime::THREE, Prime::FIVE] {
            for k in 1..=4 {
                assert_eq!(
                    antipode_xi(k, p),
                    antipode_xi_by_compositions(k, p),
                    "p={p} k={k}"
                );
            }
        }
    }

    #[test]
    fn defining_convolution_vanishes() {
        for p in [Prime::TWO, Prime::THREE, Prime::FIVE] {
            for k in 1..=4 {
                let mut sum = DualPoly::zero(p);
                for j in 0..=k {
                    let lead = DualPoly::monomial(
                        if j == k {
                            ExponentSeq::unit()
                        } else {
                            ExponentSeq::xi(k - j, p.get().pow(j as u32))
                        },
                        p,
                    );
                    sum = sum.add(&lead.mul(&antipode_xi(j, p)).unwrap()).unwrap();
                }
                assert!(sum.is_zero(), "p={p} k={k}: {sum}");
            }
        }
    }

    #[test]
    fn homogeneous_of_generator_degree() {
        for p in [Prime::TWO, Prime::THREE, Prime::FIVE] {
            for k in 1..=4 {
                assert_eq!(
                    antipode_xi(k, p).homogeneous_degree(),
                    Some(generator_degree(k, p))
                );
            }
        }
    }

    #[test]
    fn unit_and_xi1_powers() {
        let p = Prime::TWO;
        assert_eq!(antipode(&DualPoly::one(p)), DualPoly::one(p));
        for n in 0..12 {
            let x = DualPoly::monomial(seq(&[n]), p);
            assert_eq!(antipode(&x), x);
        }
    }

    #[test]
    fn xi2_round_trip() {
        let p = Prime::TWO;
        let x = DualPoly::xi(2, p);
        let once = antipode(&x);
        assert_eq!(
            once,
            DualPoly::from_terms([(seq(&[3]), 1), (seq(&[0, 1]), 1)], p)
        );
        assert_eq!(antipode(&once), x);
    }

    #[test]
    fn multiplicative() {
        for p in [Prime::TWO, Prime::THREE] {
            let a = DualPoly::from_terms([(seq(&[1, 1]), 1), (seq(&[5]), 2)], p);
            let b = DualPoly::from_terms([(seq(&[0, 1]), 1), (seq(&[2]), 1)], p);
            assert_eq!(
                antipode(&a.mul(&b).unwrap()),
                antipode(&a).mul(&antipode(&b)).unwrap()
            );
        }
    }

    fn arb_homogeneous() -> impl Strategy<Value = DualPoly> {
        (0usize..3, 0u64..=20).prop_flat_map(|(pi, n)| {
            let p = [Prime::TWO, Prime::THREE, Prime::FIVE][pi];
            let mons = enumerate_monomials(n, p);
            let len = mons.len();
            proptest::collection::vec(0i64..i64::from(p.get()), len).prop_map(move |coeffs| {
                DualPoly::from_terms(mons.clone().into_iter().zip(coeffs), p)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn involution_and_degree(x in arb_homogeneous()) {
            let y = antipode(&x);
            prop_assert_eq!(y.homogeneous_degree(), x.homogeneous_degree());
            prop_assert_eq!(antipode(&y), x);
        }
    }
}
