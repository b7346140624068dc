//! Exact rational scalars and conversion helpers.
//!
//! Every coordinate, area and bound in this crate is an arbitrary-precision
//! rational. Floating point shows up only in pruning heuristics and printed
//! output, never in a decision that affects a result.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Exact rational scalar used for all coordinates and areas.
pub type Scalar = BigRational;

/// Builds the exact rational `num / den`.
///
/// # Panics
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the exact integer scalar `n`.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the exact power of two `2^e`.
pub fn pow2(e: i32) -> Scalar {
    let one = BigInt::one();
    if e >= 0 {
        BigRational::from_integer(one << e as usize)
    } else {
        BigRational::new(one.clone(), one << (-e) as usize)
    }
}

/// Raises `x` to an integer power, with negative exponents inverting.
///
/// # Panics
///
/// Panics if `x == 0` and `e < 0`.
pub fn pow(x: &Scalar, e: i32) -> Scalar {
    num_traits::Pow::pow(x.clone(), e)
}

/// Approximates a rational as `f64`.
///
/// Plain numerator/denominator division can degrade to `inf / inf = NaN`
/// when both sides exceed the `f64` range; this version rescales both sides
/// to 64 significant bits first and reapplies the scale difference.
pub fn approx(x: &Scalar) -> f64 {
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let sn = (nb - 64).max(0);
    let sd = (db - 64).max(0);
    let nf = (x.numer() >> sn as usize).to_f64().unwrap_or(f64::NAN);
    let df = (x.denom() >> sd as usize).to_f64().unwrap_or(f64::NAN);
    (nf / df) * 2f64.powi((sn - sd).clamp(-2000, 2000) as i32)
}

/// Maps `x ∈ [0, 1]` to a 64.64 fixed-point key when its reduced denominator
/// is a power of two no larger than `2^64`.
///
/// The map is strictly increasing, so sorting by key sorts by value. Returns
/// `None` for values outside `[0, 1]` or with an unsuitable denominator.
pub fn fixed64_key(x: &Scalar) -> Option<u128> {
    if x.is_negative() {
        return None;
    }
    let den = x.denom().magnitude();
    if den.count_ones() != 1 {
        return None;
    }
    let e = den.bits() - 1;
    if e > 64 {
        return None;
    }
    let num = x.numer().magnitude().to_u128()?;
    if num > 1u128 << e {
        return None;
    }
    Some(num << (64 - e))
}
