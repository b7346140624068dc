//! Certified rational enclosures of the exponential function, so that
//! comparisons against transcendental quantities stay exact.

use crate::scalar::{int, ratio, Scalar};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// A rational interval `[lo, hi]` guaranteed to contain `e^z`.
///
/// The argument is halved until it is at most 1/2, the Taylor series is
/// summed to `terms` terms with a geometric tail bound, and the interval
/// is squared back up. Negative arguments go through the reciprocal.
/// Larger `terms` gives a tighter interval.
pub fn exp_enclosure(z: &Scalar, terms: usize) -> (Scalar, Scalar) {
    if z.is_zero() {
        return (Scalar::one(), Scalar::one());
    }
    if z.is_negative() {
        let (lo, hi) = exp_enclosure(&-z, terms);
        return (hi.recip(), lo.recip());
    }

    let half = ratio(1, 2);
    let mut w = z.clone();
    let mut squarings = 0u32;
    while w > half {
        w /= int(2);
        squarings += 1;
    }

    let n = terms.max(1);
    let mut term = Scalar::one();
    let mut sum = Scalar::one();
    for j in 1..=n {
        term = term * &w / int(j as i64);
        sum += &term;
    }
    // Successive term ratios are at most w/(n+1) ≤ 1/2, so the tail is
    // bounded by twice the first omitted term.
    let tail = term * &w / int((n + 1) as i64) * int(2);
    let mut lo = sum.clone();
    let mut hi = sum + tail;
    for _ in 0..squarings {
        lo = &lo * &lo;
        hi = &hi * &hi;
    }
    (lo, hi)
}

/// Compares `a` with `b·e^z` exactly, refining the enclosure until it
/// separates the two sides. Termination is guaranteed: for rational
/// `z ≠ 0` and `b ≠ 0` the right side is irrational, so the sides are
/// never equal, and for `z = 0` the enclosure is a single point.
pub fn compare_with_exp(a: &Scalar, b: &Scalar, z: &Scalar) -> Ordering {
    if b.is_zero() {
        return a.cmp(&Scalar::zero());
    }
    let mut terms = 8;
    loop {
        let (lo, hi) = exp_enclosure(z, terms);
        let (blo, bhi) = if b.is_positive() {
            (b * &lo, b * &hi)
        } else {
            (b * &hi, b * &lo)
        };
        if *a < blo {
            return Ordering::Less;
        }
        if *a > bhi {
            return Ordering::Greater;
        }
        if blo == bhi {
            return Ordering::Equal;
        }
        terms *= 2;
        assert!(terms <= 1 << 20, "enclosure refinement stalled");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::approx;

    // 2.71828182845904523 < e < 2.71828182845904524
    fn e_bounds() -> (Scalar, Scalar) {
        (
            ratio(271_828_182_845_904_523, 100_000_000_000_000_000),
            ratio(271_828_182_845_904_524, 100_000_000_000_000_000),
        )
    }

    #[test]
    fn enclosure_of_e_brackets_the_known_digits() {
        let (known_lo, known_hi) = e_bounds();
        let (lo, hi) = exp_enclosure(&int(1), 30);
        assert!(lo <= hi);
        assert!(lo < known_hi && hi > known_lo);
        // With 30 terms the interval is far tighter than 1e-17.
        assert!(lo > known_lo && hi < known_hi);
    }

    #[test]
    fn zero_exponent_is_exact() {
        assert_eq!(exp_enclosure(&int(0), 5), (int(1), int(1)));
    }

    #[test]
    fn negative_arguments_go_through_the_reciprocal() {
        // 0.36787944117144232 < 1/e < 0.36787944117144233
        let lo_known = ratio(36_787_944_117_144_232, 100_000_000_000_000_000);
        let hi_known = ratio(36_787_944_117_144_233, 100_000_000_000_000_000);
        let (lo, hi) = exp_enclosure(&int(-1), 30);
        assert!(lo > lo_known && hi < hi_known);
    }

    #[test]
    fn large_arguments_square_back_up() {
        // 22026.465794806716 ≈ e^10
        let (lo, hi) = exp_enclosure(&int(10), 40);
        assert!(lo > int(22026) && hi < int(22027));
        assert!((approx(&lo) - 22026.465794806716).abs() < 1e-6);
    }

    #[test]
    fn more_terms_tighten_the_interval() {
        let z = ratio(7, 2);
        let (lo1, hi1) = exp_enclosure(&z, 10);
        let (lo2, hi2) = exp_enclosure(&z, 20);
        assert!(lo1 <= lo2 && hi2 <= hi1);
        assert!(&hi2 - &lo2 < &hi1 - &lo1);
    }

    #[test]
    fn comparisons_refine_until_separated() {
        let (known_lo, known_hi) = e_bounds();
        assert_eq!(
            compare_with_exp(&known_lo, &int(1), &int(1)),
            Ordering::Less
        );
        assert_eq!(
            compare_with_exp(&known_hi, &int(1), &int(1)),
            Ordering::Greater
        );
        assert_eq!(
            compare_with_exp(&int(3), &int(1), &int(1)),
            Ordering::Greater
        );
        assert_eq!(
            compare_with_exp(&int(-3), &int(-1), &int(1)),
            Ordering::Less
        );
        assert_eq!(compare_with_exp(&int(2), &int(2), &int(0)), Ordering::Equal);
    }
}
