//! Empirical check that a truncated branch nearly annihilates the symbol.

use num_complex::Complex64;
use num_rational::Rational64;

use super::newton::exponent_f64;
use super::series::{evaluate_series, PuiseuxSeries};
use crate::error::PuiseuxError;
use crate::symbol::BivariatePoly;

/// Allowance added to the analytic bound when judging a measured slope.
pub const RESIDUAL_SLACK: f64 = 0.2;

/// Minimum number of sample points accepted by [`residual_slope`].
pub const MIN_SAMPLES: usize = 8;

/// Measured residual decay of one branch against its analytic bound.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualCertificate {
    /// `−∞` when the residual stays at rounding level.
    pub slope: f64,
    pub bound: f64,
    pub passed: bool,
}

/// `n` geometrically spaced points from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|k| (a + (b - a) * k as f64 / (n - 1).max(1) as f64).exp()).collect()
}

/// Rounding scale of `p(x, ξ)` including the error carried in by `ξ` itself.
fn rounding_floor(p: &BivariatePoly, x: f64, xi: Complex64) -> f64 {
    let r = xi.norm();
    let scale: f64 = p
        .terms()
        .map(|(&(a, b), c)| c.to_complex().norm() * x.powi(b as i32) * r.powi(a as i32) * (1.0 + a as f64))
        .sum();
    1e3 * f64::EPSILON * scale
}

/// Least-squares slope of `y` against `x`.
pub(crate) fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Log-log slope of `x ↦ |p(x, s(x))|` over `sample_xs`.
///
/// Points where the residual sits below the rounding floor are ignored;
/// with fewer than four usable points the residual is indistinguishable
/// from zero and `−∞` is returned.
pub fn residual_slope(p: &BivariatePoly, s: &PuiseuxSeries, sample_xs: &[f64]) -> Result<f64, PuiseuxError> {
    if sample_xs.len() < MIN_SAMPLES {
        return Err(PuiseuxError::TooFewSamples { need: MIN_SAMPLES, got: sample_xs.len() });
    }
    let mut lx = Vec::new();
    let mut lr = Vec::new();
    for &x in sample_xs {
        let xi = evaluate_series(s, x);
        let value = p.eval(Complex64::new(x, 0.0), xi);
        if !value.is_finite() || !xi.is_finite() {
            return Err(PuiseuxError::NumericOverflow(x));
        }
        if value.norm() > rounding_floor(p, x, xi) {
            lx.push(x.ln());
            lr.push(value.norm().ln());
        }
    }
    if lx.len() < 4 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(fit_slope(&lx, &lr))
}

/// Exponent at which two truncated branches first differ.
///
/// Branches agreeing on every computed term are assigned the larger of the
/// two truncation exponents, an upper bound on the order of their difference.
pub fn first_difference(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Option<Rational64> {
    let ta = a.truncation_exponent;
    let tb = b.truncation_exponent;
    let mut exps: Vec<Rational64> = a.terms.iter().chain(b.terms.iter()).map(|(e, _)| *e).collect();
    exps.sort();
    exps.dedup();
    let floor = if a.exact && b.exact {
        None
    } else if a.exact {
        Some(tb)
    } else if b.exact {
        Some(ta)
    } else {
        Some(ta.max(tb))
    };
    for e in exps.into_iter().rev() {
        if floor.is_some_and(|f| e <= f) {
            break;
        }
        let ca = a.coefficient(e);
        let cb = b.coefficient(e);
        if (ca - cb).norm() > 1e-8 * (1.0 + ca.norm().max(cb.norm())) {
            return Some(e);
        }
    }
    floor
}

/// `T_j + Σ_{k≠j} d_jk`, the exponent the residual of branch `j` cannot exceed.
pub fn residual_bound(branches: &[PuiseuxSeries], j: usize) -> f64 {
    let own = &branches[j];
    if own.exact {
        return f64::NEG_INFINITY;
    }
    let mut total = exponent_f64(&own.truncation_exponent);
    for (k, other) in branches.iter().enumerate() {
        if k == j {
            continue;
        }
        match first_difference(own, other) {
            Some(d) => total += exponent_f64(&d),
            None => return f64::NEG_INFINITY,
        }
    }
    total
}

/// Certificates for every branch over the standard window `[10², 10⁴]`.
pub fn certify(p: &BivariatePoly, branches: &[PuiseuxSeries]) -> Vec<ResidualCertificate> {
    let xs = geometric_grid(1e2, 1e4, 12);
    (0..branches.len())
        .map(|j| {
            let bound = residual_bound(branches, j);
            match residual_slope(p, &branches[j], &xs) {
                Ok(slope) => ResidualCertificate {
                    slope,
                    bound,
                    passed: slope == f64::NEG_INFINITY || slope <= bound + RESIDUAL_SLACK,
                },
                Err(_) => ResidualCertificate { slope: f64::NAN, bound, passed: false },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::Direction;
    use crate::symbol::parse_symbol;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn exact_roots_give_sentinel() {
        let p = parse_symbol("xi - x + 1").unwrap();
        let s = PuiseuxSeries {
            direction: Direction::PlusInfinity,
            terms: vec![(r(1, 1), Complex64::new(1.0, 0.0)), (r(0, 1), Complex64::new(-1.0, 0.0))],
            truncation_exponent: r(-9, 4),
            exact: true,
        };
        let slope = residual_slope(&p, &s, &geometric_grid(1e2, 1e6, 10)).unwrap();
        assert_eq!(slope, f64::NEG_INFINITY);
    }

    #[test]
    fn two_term_quartic_branch() {
        // Truncated after x^{−1/2}; the next exponent is −5/4.
        let p = parse_symbol("xi^4 - 2*xi - x").unwrap();
        let s = PuiseuxSeries {
            direction: Direction::PlusInfinity,
            terms: vec![(r(1, 4), Complex64::new(1.0, 0.0)), (r(-1, 2), Complex64::new(0.5, 0.0))],
            truncation_exponent: r(-5, 4),
            exact: false,
        };
        let slope = residual_slope(&p, &s, &geometric_grid(1e2, 1e4, 12)).unwrap();
        let bound = 3.0 * 0.25 - 1.25;
        assert!((slope - bound).abs() < 0.05, "slope {slope}");
        assert!(residual_slope(&p, &s, &[1e2, 1e3]).is_err());
    }
}
