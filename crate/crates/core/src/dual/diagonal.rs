use super::poly::DualPoly;
use super::seq::ExponentSeq;
use crate::fp::{lucas_binom, Prime};

/// The `y` in the component `xi_1^i (x) y` of `Delta xi^R`.
///
/// Only two summands of `Delta xi_k` have a pure `xi_1`-power on the left:
/// `xi_1^{p^{k-1}} (x) xi_{k-1}` and `1 (x) xi_k`. Picking `a_k` of the `r_k`
/// copies of `xi_k` to take the first form contributes `C(r_k, a_k)` and left
/// exponent `a_k p^{k-1}`.
pub fn diagonal_left_xi1(seq: &ExponentSeq, i: u64, p: Prime) -> DualPoly {
    let mut out = DualPoly::zero(p);
    if i > seq.weight(p) {
        return out;
    }
    let len = seq.len();
    let mut right = vec![0u32; len];
    choose(seq, len, i, 1, p, &mut right, &mut out);
    out
}

// Walks k from the top generator down, since high generators have the
// coarsest left exponent and prune the search fastest.
fn choose(
    seq: &ExponentSeq,
    k: usize,
    remaining: u64,
    coeff: u32,
    p: Prime,
    right: &mut Vec<u32>,
    out: &mut DualPoly,
) {
    if k == 0 {
        if remaining == 0 {
            out.add_term(ExponentSeq::new(right.clone()), coeff);
        }
        return;
    }
    // the lower generators can contribute at most this much
    let below = ExponentSeq::new(seq.entries()[..k - 1].to_vec()).weight(p);
    let step = p.as_u64().pow(k as u32 - 1);
    let r = u64::from(seq.get(k));
    for a in 0..=r {
        let used = a * step;
        if used > remaining {
            break;
        }
        if remaining - used > below {
            continue;
        }
        let c = lucas_binom(u128::from(r), u128::from(a), p);
        if c == 0 {
            continue;
        }
        right[k - 1] += (r - a) as u32;
        if k >= 2 {
            right[k - 2] += a as u32;
        }
        choose(seq, k - 1, remaining - used, p.mul(coeff, c), p, right, out);
        right[k - 1] -= (r - a) as u32;
        if k >= 2 {
            right[k - 2] -= a as u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::enumerate_monomials;
    use crate::dual::oracle::full_diagonal;

    fn seq(v: &[u32]) -> ExponentSeq {
        ExponentSeq::new(v.to_vec())
    }

    #[test]
    fn zero_left_exponent_keeps_the_monomial() {
        let r = seq(&[2, 1, 3]);
        for p in [Prime::TWO, Prime::THREE] {
            assert_eq!(
                diagonal_left_xi1(&r, 0, p),
                DualPoly::monomial(r.clone(), p)
            );
        }
    }

    #[test]
    fn xi2_at_two() {
        let p = Prime::TWO;
        assert_eq!(diagonal_left_xi1(&seq(&[0, 1]), 2, p), DualPoly::xi(1, p));
        assert!(diagonal_left_xi1(&seq(&[0, 1]), 1, p).is_zero());
        assert!(diagonal_left_xi1(&seq(&[0, 1]), 3, p).is_zero());
    }

    #[test]
    fn beyond_weight_is_zero() {
        for p in [Prime::TWO, Prime::THREE, Prime::FIVE] {
            for n in 0..=12 {
                for r in enumerate_monomials(n, p) {
                    let w = r.weight(p);
                    for extra in 1..4 {
                        assert!(diagonal_left_xi1(&r, w + extra, p).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn matches_full_diagonal_expansion() {
        for (p, max_deg) in [(Prime::TWO, 8), (Prime::THREE, 9), (Prime::FIVE, 7)] {
            for n in 0..=max_deg {
                for r in enumerate_monomials(n, p) {
                    let full = full_diagonal(&r, p);
                    let mut reconstructed = 0usize;
                    for i in 0..=r.weight(p) {
                        let left = ExponentSeq::new(vec![i as u32]);
                        let expected = full.right_factor_of(&left);
                        let got = diagonal_left_xi1(&r, i, p);
                        assert_eq!(got, expected, "p={p} R={r} i={i}");
                        reconstructed += got.num_terms();
                    }
                    // everything not accounted for has a non-xi_1 left factor
                    let pruned = full.terms_with_left(|l| l.len() > 1);
                    assert_eq!(reconstructed + pruned, full.num_terms(), "p={p} R={r}");
                }
            }
        }
    }
}
