//! Truncated Puiseux series at infinity in a positive real variable.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

/// Which end of the real line a series describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    PlusInfinity,
    /// Stored as the expansion of `t ↦ ξ(−t)` for `t → +∞`.
    MinusInfinity,
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Direction::PlusInfinity => "plus",
            Direction::MinusInfinity => "minus",
        }
    }
}

/// `Σ c_e x^e` over strictly descending exponents `e ≤ 1`.
///
/// Every term with exponent above `truncation_exponent` is present. When
/// `exact` is set the series is a finite root and nothing is omitted.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxSeries {
    pub direction: Direction,
    pub terms: Vec<(Rational64, Complex64)>,
    pub truncation_exponent: Rational64,
    pub exact: bool,
}

impl PuiseuxSeries {
    /// Least common denominator of the stored exponents.
    pub fn ramification(&self) -> i64 {
        self.terms.iter().fold(1i64, |acc, (e, _)| acc.lcm(e.denom()))
    }

    /// The slope `λ = lim ξ(x)/x`.
    pub fn lambda(&self) -> Complex64 {
        self.coefficient(Rational64::from_integer(1))
    }

    pub fn coefficient(&self, e: Rational64) -> Complex64 {
        self.terms.iter().find(|(f, _)| *f == e).map(|(_, c)| *c).unwrap_or_else(Complex64::zero)
    }

    /// Terms below exponent 1: the deviation `ξ(x) − λx`.
    pub fn deviation(&self) -> impl Iterator<Item = &(Rational64, Complex64)> {
        self.terms.iter().filter(|(e, _)| *e < Rational64::from_integer(1))
    }

    /// Leading deviation term, `None` when `ξ = λx` exactly or to depth.
    pub fn leading_deviation(&self) -> Option<(Rational64, Complex64)> {
        self.deviation().next().copied()
    }
}

/// `Σ c_e x^e` with the real positive branch of each fractional power.
pub fn evaluate_series(s: &PuiseuxSeries, x: f64) -> Complex64 {
    s.terms.iter().map(|(e, c)| c * x.powf(e.to_f64().unwrap_or(f64::NAN))).sum()
}

/// `num/den` rendering of an exponent.
pub fn format_exponent(e: &Rational64) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}
