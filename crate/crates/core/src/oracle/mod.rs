//! Numerical cross-checks of verdicts: explicit witnesses `exp(i∫η)` built
//! from branch truncations, and direct integration of `P u = 0`.

pub mod integrate;

pub use integrate::{integrate, CompanionSystem, IntegratorOptions, ScaledState};

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::OracleError;
use crate::puiseux::residual::fit_slope;
use crate::puiseux::{geometric_grid, Direction, PuiseuxSeries};
use crate::regularity::{ConditionStatus, Decision, Verdict};
use crate::symbol::{BivariatePoly, DiffOperator};

/// Minimum sample size accepted by [`growth_exponent`].
pub const MIN_POINTS: usize = 16;
/// Minimum `log₁₀(x_max/x_min)` accepted by [`growth_exponent`].
pub const MIN_DECADES: f64 = 2.0;

/// `log |u|` on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSample {
    pub xs: Vec<f64>,
    pub log_abs_u: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Growth {
    RapidDecay,
    PolynomialBounded(f64),
    SuperPolynomialGrowth,
}

impl Growth {
    pub fn name(&self) -> &'static str {
        match self {
            Growth::RapidDecay => "RapidDecay",
            Growth::PolynomialBounded(_) => "PolynomialBounded",
            Growth::SuperPolynomialGrowth => "SuperPolynomialGrowth",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthClass {
    pub label: Growth,
    /// Least-squares slope of `log|u|` against `log x`.
    pub slope_log: f64,
    /// RMS residual of that fit.
    pub residual_log: f64,
    /// Least-squares slope of `log|u|` against `x`.
    pub slope_linear: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOptions {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    /// Largest `|slope|` still called polynomial.
    pub slope_cap: f64,
    /// A log-log fit is good when its RMS residual is below `fit_tol·(1+|slope|)`.
    pub fit_tol: f64,
    pub integrator: IntegratorOptions,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            x_min: 1.0,
            x_max: 100.0,
            points: 32,
            slope_cap: 50.0,
            fit_tol: 0.05,
            integrator: IntegratorOptions::default(),
        }
    }
}

/// Classify the growth of a sample over its full grid; points where `u` vanishes are not fitted.
pub fn growth_exponent(sample: &GrowthSample, opts: &OracleOptions) -> Result<GrowthClass, OracleError> {
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        sample.xs.iter().zip(&sample.log_abs_u).filter(|(_, y)| y.is_finite()).map(|(x, y)| (*x, *y)).unzip();
    let n = xs.len();
    let full = &sample.xs;
    let decades = if full.len() >= 2 { (full[full.len() - 1] / full[0]).log10() } else { 0.0 };
    if n < MIN_POINTS || decades < MIN_DECADES {
        return Err(OracleError::InsufficientRange { points: n, decades });
    }
    let (xs, ys) = (&xs, &ys);
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let slope_log = fit_slope(&lx, ys);
    let (mx, my) = (lx.iter().sum::<f64>() / n as f64, ys.iter().sum::<f64>() / n as f64);
    let residual_log =
        (lx.iter().zip(ys).map(|(x, y)| (y - my - slope_log * (x - mx)).powi(2)).sum::<f64>() / n as f64).sqrt();
    let slope_linear = fit_slope(xs, ys);
    let label = if slope_log.abs() <= opts.slope_cap && residual_log <= opts.fit_tol * (1.0 + slope_log.abs()) {
        Growth::PolynomialBounded(slope_log)
    } else if ys[n - 1] > ys[0] {
        Growth::SuperPolynomialGrowth
    } else {
        Growth::RapidDecay
    };
    Ok(GrowthClass { label, slope_log, residual_log, slope_linear })
}

/// `Q(x) = ∫ η` termwise over the exponents above `−1`, plus `c·log x` for an `x^{−1}` term.
fn primitive(eta: &PuiseuxSeries, x: f64) -> Complex64 {
    let minus_one = Rational64::from_integer(-1);
    eta.terms
        .iter()
        .filter(|(e, _)| *e >= minus_one)
        .map(|(e, c)| {
            if *e == minus_one {
                c * x.ln()
            } else {
                let f = crate::puiseux::newton::exponent_f64(&(*e + Rational64::one()));
                c * x.powf(f) / f
            }
        })
        .sum()
}

/// `log |u|` for `u = exp(iQ)` with `Q′ = η`, in the series' own variable.
///
/// A [`Direction::MinusInfinity`] series describes `t ↦ ξ(−t)`, for which
/// `log |u(−t)| = +Im ∫ η`.
pub fn counterexample_solution(eta: &PuiseuxSeries, xs: &[f64]) -> GrowthSample {
    let sign = match eta.direction {
        Direction::PlusInfinity => -1.0,
        Direction::MinusInfinity => 1.0,
    };
    GrowthSample { xs: xs.to_vec(), log_abs_u: xs.iter().map(|&x| sign * primitive(eta, x).im).collect() }
}

/// Integrate `P u = 0` over `[span.0, span.1]` from each seed `(u, Du, …, D^{m−1}u)`.
///
/// The start moves past the largest real zero of the leading coefficient.
pub fn solve_operator_equation(
    p: &DiffOperator,
    span: (f64, f64),
    seeds: &[Vec<Complex64>],
    opts: &OracleOptions,
) -> Result<Vec<GrowthSample>, OracleError> {
    let (mut a, b) = span;
    if !(a > 0.0 && b > a) {
        return Err(OracleError::InvalidSpan(a, b));
    }
    let sys = CompanionSystem::new(p)?;
    if let Some(r) = sys.largest_real_singularity() {
        if r >= a {
            a = r + 1.0;
            if a * 10f64.powf(MIN_DECADES) > b {
                return Err(OracleError::LeadingCoeffVanishes);
            }
        }
    }
    let xs = geometric_grid(a, b, opts.points);
    seeds
        .par_iter()
        .map(|seed| {
            let states = integrate(&sys, a, seed, &xs, &opts.integrator)?;
            Ok(GrowthSample { xs: xs.clone(), log_abs_u: states.iter().map(|s| s.log_abs(0)).collect() })
        })
        .collect()
}

/// Canonical basis of initial data for an order-`m` operator.
pub fn unit_seeds(m: usize) -> Vec<Vec<Complex64>> {
    (0..m).map(|j| (0..m).map(|k| if j == k { Complex64::one() } else { Complex64::zero() }).collect()).collect()
}

/// The operator seen from `−∞`: Weyl symbol `p(−x, −ξ)`.
pub fn reflected_operator(weyl: &BivariatePoly) -> DiffOperator {
    let flipped = weyl.map_coeffs(|(a, b), c| if (a + b) % 2 == 1 { -c } else { c.clone() });
    DiffOperator::from_weyl_symbol(&flipped)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    Inconsistent,
    /// Observations only; nothing was asserted.
    Advisory,
    Skipped,
}

impl Consistency {
    pub fn name(self) -> &'static str {
        match self {
            Consistency::Consistent => "Consistent",
            Consistency::Inconsistent => "Inconsistent",
            Consistency::Advisory => "Advisory",
            Consistency::Skipped => "Skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub status: Consistency,
    pub observations: Vec<String>,
    /// Labelled growth classes that entered the judgement.
    pub samples: Vec<(String, GrowthClass)>,
}

fn classify_all(
    label: &str,
    p: &DiffOperator,
    opts: &OracleOptions,
    samples: &mut Vec<(String, GrowthClass)>,
    notes: &mut Vec<String>,
) -> Option<Vec<Growth>> {
    let m = p.order();
    match solve_operator_equation(p, (opts.x_min, opts.x_max), &unit_seeds(m), opts) {
        Ok(sols) => {
            let mut out = Vec::new();
            for (j, s) in sols.iter().enumerate() {
                match growth_exponent(s, opts) {
                    Ok(g) => {
                        out.push(g.label);
                        samples.push((format!("{label} solution {j}"), g));
                    }
                    Err(e) => notes.push(format!("{label} solution {j}: {e}")),
                }
            }
            (out.len() == m).then_some(out)
        }
        Err(e) => {
            notes.push(format!("{label}: integration failed: {e}"));
            None
        }
    }
}

/// Compare a verdict with numerical evidence.
pub fn cross_validate(v: &Verdict, opts: &OracleOptions) -> OracleReport {
    let mut samples = Vec::new();
    let mut notes = Vec::new();
    let xs = geometric_grid(opts.x_min, opts.x_max, opts.points);
    let status = match v.decision {
        Decision::NotRegular => {
            let failing = v
                .condition
                .as_ref()
                .and_then(|c| c.entries.iter().find(|e| e.status != ConditionStatus::Holds).cloned());
            match failing {
                Some(entry) => {
                    let set = v.branch_sets.iter().find(|s| s.direction == entry.direction).expect("branch set");
                    let branch = &set.branches[entry.branch];
                    let sample = counterexample_solution(branch, &xs);
                    match growth_exponent(&sample, opts) {
                        Ok(g) => {
                            let ok = matches!(g.label, Growth::PolynomialBounded(_));
                            notes.push(format!(
                                "witness from branch {} at {} infinity: {}",
                                entry.branch,
                                entry.direction.label(),
                                g.label.name()
                            ));
                            samples.push((format!("witness {} {}", entry.direction.label(), entry.branch), g));
                            if ok {
                                Consistency::Consistent
                            } else {
                                Consistency::Inconsistent
                            }
                        }
                        Err(e) => {
                            notes.push(format!("witness: {e}"));
                            Consistency::Skipped
                        }
                    }
                }
                None => {
                    notes.push("decided without branch expansions; no witness available".to_string());
                    Consistency::Skipped
                }
            }
        }
        Decision::Regular => {
            let op = DiffOperator::from_weyl_symbol(&v.weyl_symbol);
            let plus = classify_all("plus", &op, opts, &mut samples, &mut notes);
            let minus = classify_all("minus", &reflected_operator(&v.weyl_symbol), opts, &mut samples, &mut notes);
            if op.order() == 1 {
                match (plus, minus) {
                    (Some(p), Some(m)) => {
                        let bounded = p.iter().chain(&m).any(|g| matches!(g, Growth::PolynomialBounded(_)));
                        if bounded {
                            Consistency::Inconsistent
                        } else {
                            Consistency::Consistent
                        }
                    }
                    _ => Consistency::Skipped,
                }
            } else {
                notes.push("order above one: basis growth is reported, not asserted".to_string());
                Consistency::Advisory
            }
        }
        Decision::Inconclusive => Consistency::Skipped,
    };
    OracleReport { status, observations: notes, samples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularity::decide_default;
    use crate::symbol::parse_symbol;

    fn series(terms: &[(i64, i64, Complex64)]) -> PuiseuxSeries {
        PuiseuxSeries {
            direction: Direction::PlusInfinity,
            terms: terms.iter().map(|&(n, d, c)| (Rational64::new(n, d), c)).collect(),
            truncation_exponent: Rational64::new(-9, 4),
            exact: true,
        }
    }

    fn sample(f: impl Fn(f64) -> f64) -> GrowthSample {
        let xs = geometric_grid(1.0, 100.0, 32);
        GrowthSample { log_abs_u: xs.iter().map(|&x| f(x)).collect(), xs }
    }

    #[test]
    fn growth_labels() {
        let o = OracleOptions::default();
        match growth_exponent(&sample(|x| 2.0 * x.ln()), &o).unwrap().label {
            Growth::PolynomialBounded(s) => assert!((s - 2.0).abs() < 0.05),
            g => panic!("{g:?}"),
        }
        assert_eq!(growth_exponent(&sample(|x| x), &o).unwrap().label, Growth::SuperPolynomialGrowth);
        assert_eq!(growth_exponent(&sample(|x| -x * x / 2.0), &o).unwrap().label, Growth::RapidDecay);
        let short = GrowthSample { xs: vec![1.0, 2.0], log_abs_u: vec![0.0, 0.0] };
        assert!(matches!(growth_exponent(&short, &o), Err(OracleError::InsufficientRange { .. })));
    }

    #[test]
    fn closed_form_witnesses() {
        let xs = geometric_grid(1.0, 100.0, 32);
        let flat = counterexample_solution(
            &series(&[(1, 1, Complex64::new(1.0, 0.0)), (0, 1, Complex64::new(-1.0, 0.0))]),
            &xs,
        );
        assert!(flat.log_abs_u.iter().all(|v| v.abs() < 1e-12));
        let tilted = counterexample_solution(
            &series(&[(1, 1, Complex64::new(1.0, 0.0)), (0, 1, Complex64::new(0.0, -1.0))]),
            &xs,
        );
        for (x, v) in tilted.xs.iter().zip(&tilted.log_abs_u) {
            assert!((v - x).abs() < 1e-12);
        }
        let gauss = counterexample_solution(&series(&[(1, 1, Complex64::new(0.0, 1.0))]), &xs);
        assert_eq!(growth_exponent(&gauss, &OracleOptions::default()).unwrap().label, Growth::RapidDecay);
        let log = counterexample_solution(&series(&[(-1, 1, Complex64::new(0.0, 3.0))]), &xs);
        assert!((log.log_abs_u[31] + 3.0 * 100f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn integration_matches_closed_form() {
        let o = OracleOptions::default();
        let p = DiffOperator::from_weyl_symbol(&parse_symbol("xi - x + i").unwrap());
        let sol = &solve_operator_equation(&p, (1.0, 100.0), &unit_seeds(1), &o).unwrap()[0];
        for (x, v) in sol.xs.iter().zip(&sol.log_abs_u) {
            assert!((v - (x - 1.0)).abs() < 1e-6, "x = {x}: {v}");
        }
        let d = DiffOperator::from_weyl_symbol(&parse_symbol("xi").unwrap());
        let flat = &solve_operator_equation(&d, (1.0, 100.0), &unit_seeds(1), &o).unwrap()[0];
        match growth_exponent(flat, &o).unwrap().label {
            Growth::PolynomialBounded(s) => assert!(s.abs() < 1e-9),
            g => panic!("{g:?}"),
        }
    }

    #[test]
    fn cross_validation() {
        let o = OracleOptions::default();
        for s in ["xi - x + 1", "xi - x + i", "xi + i*x"] {
            let v = decide_default(&parse_symbol(s).unwrap()).unwrap();
            assert_eq!(cross_validate(&v, &o).status, Consistency::Consistent, "{s}");
        }
    }
}
