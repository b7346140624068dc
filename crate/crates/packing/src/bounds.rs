//! Closed-form coverage lower bounds and the exponential integral used by
//! the integrated variant. Everything here is plain `f64`: these are bound
//! evaluations, not geometric certificates.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && 0.0 < lambda && lambda < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "lambda must lie strictly between 0 and 1, got {lambda}"
        )))
    }
}

/// Coefficient `C(λ) = (3 − 3λ + λ²)(8 + 3λ − λ²) / (2λ(1 − λ)(2 − λ)²)`.
fn lambda_coefficient(lambda: f64) -> f64 {
    let num = (3.0 - 3.0 * lambda + lambda * lambda) * (8.0 + 3.0 * lambda - lambda * lambda);
    let den = 2.0 * lambda * (1.0 - lambda) * (2.0 - lambda) * (2.0 - lambda);
    num / den
}

/// Upper bound `C(λ) · β / e^{β−5}` on the total area fraction of tiles
/// whose own area exceeds `β` times their largest anchored rectangle.
pub fn beta_tile_fraction_bound(beta: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if !beta.is_finite() || beta < 5.0 {
        return Err(Error::InvalidParameter(format!(
            "beta must be at least 5, got {beta}"
        )));
    }
    Ok(lambda_coefficient(lambda) * beta * (5.0 - beta).exp())
}

/// Coverage lower bound `(1 − F) / β` where `F` is
/// [`beta_tile_fraction_bound`]. May be negative for poor parameters.
pub fn simple_lower_bound(beta: f64, lambda: f64) -> Result<f64> {
    let f = beta_tile_fraction_bound(beta, lambda)?;
    Ok((1.0 - f) / beta)
}

/// Exponential integral `E₁(x) = ∫ₓ^∞ e^(−t)/t dt` for `x > 0`.
///
/// Power series around zero for `x ≤ 1`; modified Lentz evaluation of the
/// continued fraction `e^(−x) / (x + 1 − 1²/(x + 3 − 2²/(x + 5 − …)))`
/// otherwise. Relative error is well below `1e−12` on both branches.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "exponential integral requires x > 0, got {x}"
        )));
    }
    Ok(if x <= 1.0 {
        e1_series(x)
    } else {
        e1_continued_fraction(x)
    })
}

fn e1_series(x: f64) -> f64 {
    let mut acc = -EULER_GAMMA - x.ln();
    let mut pow = 1.0;
    let mut sign = 1.0;
    for k in 1..200u32 {
        pow *= x / f64::from(k);
        let delta = sign * pow / f64::from(k);
        acc += delta;
        if delta.abs() < 1e-18 * acc.abs() {
            break;
        }
        sign = -sign;
    }
    acc
}

fn e1_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x + 1.0;
    let mut c = f;
    let mut d = 0.0;
    for k in 1..500u32 {
        let a = -f64::from(k * k);
        let b = x + f64::from(2 * k + 1);
        d = b + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = b + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-15 {
            break;
        }
    }
    (-x).exp() / f
}

/// Coverage lower bound `1/β₀ − C(λ) e⁵ E₁(β₀)` obtained by averaging the
/// simple bound over a range of thresholds.
pub fn integrated_lower_bound(beta0: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if !beta0.is_finite() || beta0 < 5.0 {
        return Err(Error::InvalidParameter(format!(
            "beta0 must be at least 5, got {beta0}"
        )));
    }
    Ok(1.0 / beta0 - lambda_coefficient(lambda) * 5.0f64.exp() * exp_integral_e1(beta0)?)
}

/// Parameters and value of one maximized bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundOptimum {
    pub beta: f64,
    pub lambda: f64,
    pub value: f64,
}

/// Grid-refined maxima of both lower bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizedBounds {
    pub simple: BoundOptimum,
    pub integrated: BoundOptimum,
}

/// Maximizes both bounds over `β ∈ [5, 30]`, `λ ∈ (0, 1)` with a
/// deterministic nested grid: a 0.05-step scan followed by three tenfold
/// refinements around the incumbent. Ties keep the lexicographically
/// smallest `(β, λ)`.
pub fn optimize_bounds() -> OptimizedBounds {
    OptimizedBounds {
        simple: grid_maximize(|b, l| simple_lower_bound(b, l).unwrap_or(f64::NEG_INFINITY)),
        integrated: grid_maximize(|b, l| integrated_lower_bound(b, l).unwrap_or(f64::NEG_INFINITY)),
    }
}

fn grid_maximize(f: impl Fn(f64, f64) -> f64) -> BoundOptimum {
    const BETA_RANGE: (f64, f64) = (5.0, 30.0);
    const LAMBDA_RANGE: (f64, f64) = (0.001, 0.999);
    let mut best = BoundOptimum {
        beta: BETA_RANGE.0,
        lambda: 0.5,
        value: f64::NEG_INFINITY,
    };
    let mut beta_window = BETA_RANGE;
    let mut lambda_window = (0.05, 0.95);
    let mut step = 0.05;
    for _ in 0..4 {
        let beta_count = ((beta_window.1 - beta_window.0) / step).round() as usize;
        let lambda_count = ((lambda_window.1 - lambda_window.0) / step).round() as usize;
        for i in 0..=beta_count {
            let beta = beta_window.0 + step * i as f64;
            for j in 0..=lambda_count {
                let lambda = lambda_window.0 + step * j as f64;
                let value = f(beta, lambda);
                if value > best.value {
                    best = BoundOptimum {
                        beta,
                        lambda,
                        value,
                    };
                }
            }
        }
        beta_window = (
            (best.beta - step).max(BETA_RANGE.0),
            (best.beta + step).min(BETA_RANGE.1),
        );
        lambda_window = (
            (best.lambda - step).max(LAMBDA_RANGE.0),
            (best.lambda + step).min(LAMBDA_RANGE.1),
        );
        step /= 10.0;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Adaptive Simpson quadrature of `∫ₓ^{x+90} e^(−t)/t dt`; the dropped
    /// tail is below `e^(−x−90)`, far under the comparison tolerance.
    fn quadrature_e1(x: f64) -> f64 {
        fn g(t: f64) -> f64 {
            (-t).exp() / t
        }
        #[allow(clippy::too_many_arguments)]
        fn refine(
            a: f64,
            b: f64,
            ga: f64,
            gm: f64,
            gb: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let lm = 0.5 * (a + m);
            let rm = 0.5 * (m + b);
            let glm = g(lm);
            let grm = g(rm);
            let left = (m - a) / 6.0 * (ga + 4.0 * glm + gm);
            let right = (b - m) / 6.0 * (gm + 4.0 * grm + gb);
            let sum = left + right;
            if depth == 0 || (sum - whole).abs() <= 15.0 * tol {
                sum + (sum - whole) / 15.0
            } else {
                refine(a, m, ga, glm, gm, left, 0.5 * tol, depth - 1)
                    + refine(m, b, gm, grm, gb, right, 0.5 * tol, depth - 1)
            }
        }
        let b = x + 90.0;
        let m = 0.5 * (x + b);
        let (ga, gm, gb) = (g(x), g(m), g(b));
        let whole = (b - x) / 6.0 * (ga + 4.0 * gm + gb);
        let tol = 1e-13 * (-x).exp() / (x + 1.0);
        refine(x, b, ga, gm, gb, whole, tol, 48)
    }

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn e1_matches_quadrature() {
        for &x in &[0.1, 1.0, 5.0, 9.955, 20.0] {
            let fast = exp_integral_e1(x).unwrap();
            let slow = quadrature_e1(x);
            assert!(
                rel_err(fast, slow) < 1e-10,
                "x = {x}: {fast} vs quadrature {slow}"
            );
        }
    }

    #[test]
    fn e1_branches_agree_across_the_switchover() {
        for i in 0..=30 {
            let x = 0.5 + 0.05 * f64::from(i);
            let series = e1_series(x);
            let fraction = e1_continued_fraction(x);
            assert!(
                rel_err(series, fraction) < 1e-10,
                "x = {x}: series {series} vs fraction {fraction}"
            );
        }
    }

    #[test]
    fn e1_reference_values() {
        assert!((exp_integral_e1(1.0).unwrap() - 0.219_383_934_4).abs() < 1e-9);
        assert!((exp_integral_e1(0.1).unwrap() - 1.822_923_958_4).abs() < 1e-9);
        for &x in &[0.1, 0.5, 1.0, 2.0, 9.955, 20.0] {
            let e1 = exp_integral_e1(x).unwrap();
            assert!(e1 > 0.0);
            assert!(e1 < (-x).exp() / x, "x = {x}");
        }
    }

    #[test]
    fn e1_rejects_nonpositive_arguments() {
        assert!(exp_integral_e1(0.0).is_err());
        assert!(exp_integral_e1(-1.0).is_err());
        assert!(exp_integral_e1(f64::NAN).is_err());
    }

    #[test]
    fn coefficient_and_fraction_reference_values() {
        assert!((lambda_coefficient(0.45) - 14.2492).abs() < 5e-4);
        let f = beta_tile_fraction_bound(12.75, 0.45).unwrap();
        assert!((f - 0.078_26).abs() < 5e-5, "F = {f}");
    }

    #[test]
    fn simple_bound_reference_value() {
        let v = simple_lower_bound(12.75, 0.45).unwrap();
        assert!((0.072_29..=0.072_4).contains(&v), "simple bound = {v}");
    }

    #[test]
    fn integrated_bound_reference_value() {
        let v = integrated_lower_bound(9.955, 0.452).unwrap();
        assert!((0.091_21..=0.0913).contains(&v), "integrated bound = {v}");
    }

    #[test]
    fn domain_violations_are_rejected() {
        assert!(beta_tile_fraction_bound(4.9, 0.45).is_err());
        assert!(beta_tile_fraction_bound(12.75, 0.0).is_err());
        assert!(beta_tile_fraction_bound(12.75, 1.0).is_err());
        assert!(integrated_lower_bound(4.9, 0.45).is_err());
        assert!(simple_lower_bound(f64::INFINITY, 0.45).is_err());
    }

    #[test]
    fn optimizer_lands_near_the_known_optima() {
        let opt = optimize_bounds();
        assert!((opt.simple.beta - 12.75).abs() <= 0.5, "{:?}", opt.simple);
        assert!((opt.simple.lambda - 0.45).abs() <= 0.05, "{:?}", opt.simple);
        assert!(opt.simple.value >= simple_lower_bound(12.75, 0.45).unwrap());
        assert!(
            (opt.integrated.beta - 9.955).abs() <= 0.5,
            "{:?}",
            opt.integrated
        );
        assert!(
            (opt.integrated.lambda - 0.452).abs() <= 0.05,
            "{:?}",
            opt.integrated
        );
        assert!(opt.integrated.value >= integrated_lower_bound(9.955, 0.452).unwrap());
        assert!(opt.integrated.value > opt.simple.value);
        assert!(opt.integrated.value < 0.0913);
    }
}
