//! Ordinary differential operators `Σ c_k(x) D^{m−k}` with `D = −i d/dx`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::gaussian::{GaussianRational, Rational};
use super::poly::BivariatePoly;
use super::quantize::left_from_weyl;
use super::univariate::UniPoly;

pub type XPoly = UniPoly<GaussianRational>;

/// Operator stored by descending power of `D`: `coeffs[k]` multiplies `D^{m−k}`.
///
/// The leading slot is nonzero; the zero operator has no slots.
#[derive(Clone, PartialEq)]
pub struct DiffOperator {
    coeffs: Vec<XPoly>,
}

impl DiffOperator {
    /// Build from `c_0, …, c_m`, dropping vanishing leading slots.
    pub fn new(coeffs: Vec<XPoly>) -> Self {
        let first = coeffs.iter().position(|c| !c.is_zero());
        match first {
            Some(k) => Self { coeffs: coeffs[k..].to_vec() },
            None => Self { coeffs: Vec::new() },
        }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::multiplication(XPoly::one())
    }

    /// Multiplication by `f(x)`, an operator of order 0.
    pub fn multiplication(f: XPoly) -> Self {
        Self::new(vec![f])
    }

    /// `D = −i d/dx`.
    pub fn d() -> Self {
        Self::new(vec![XPoly::one(), XPoly::zero()])
    }

    /// `D − f(x)`.
    pub fn d_minus(f: XPoly) -> Self {
        Self::new(vec![XPoly::one(), -f])
    }

    /// Build from a power-indexed list: `by_power[n]` multiplies `D^n`.
    pub fn from_powers(mut by_power: Vec<XPoly>) -> Self {
        by_power.reverse();
        Self::new(by_power)
    }

    /// Power-indexed coefficients: entry `n` multiplies `D^n`.
    pub fn powers(&self) -> Vec<XPoly> {
        let mut v = self.coeffs.clone();
        v.reverse();
        v
    }

    pub fn coeffs(&self) -> &[XPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order `m`; 0 for the zero operator.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `D^{m−k}`.
    pub fn slot(&self, k: usize) -> XPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(XPoly::zero)
    }

    /// Standard quantization of a left symbol: `x`-factors act after `D`.
    pub fn from_left_symbol(a: &BivariatePoly) -> Self {
        let m = a.deg_xi();
        Self::new((0..=m).rev().map(|alpha| a.xi_coefficient(alpha)).collect())
    }

    /// Operator with Weyl symbol `p`.
    pub fn from_weyl_symbol(p: &BivariatePoly) -> Self {
        Self::from_left_symbol(&left_from_weyl(p))
    }

    /// The left symbol `Σ c_k(x) ξ^{m−k}`.
    pub fn left_symbol(&self) -> BivariatePoly {
        BivariatePoly::from_xi_coefficients(&self.powers())
    }

    /// Apply to a polynomial test function.
    pub fn apply(&self, u: &XPoly) -> XPoly {
        let minus_i = -GaussianRational::i();
        let mut out = XPoly::zero();
        let mut du = u.clone();
        for c in self.powers() {
            out = out + c * du.clone();
            du = du.derivative().scale(&minus_i);
        }
        out
    }

    /// Noncommutative product `self ∘ rhs`.
    ///
    /// `f D^j ∘ g D^k = Σ_l C(j,l) f (−i)^l g^{(l)} D^{j−l+k}`.
    pub fn compose(&self, rhs: &DiffOperator) -> DiffOperator {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let f = self.powers();
        let g = rhs.powers();
        let mut out = vec![XPoly::zero(); f.len() + g.len() - 1];
        for (k, gk) in g.iter().enumerate() {
            let mut deriv = gk.clone();
            let mut l = 0usize;
            loop {
                if deriv.is_zero() {
                    break;
                }
                let weight = GaussianRational::i_pow(-(l as i64));
                for (j, fj) in f.iter().enumerate().skip(l) {
                    let binom = binomial(j, l);
                    let term = (fj.clone() * deriv.clone()).scale(&weight.scale(&binom));
                    let slot = j - l + k;
                    out[slot] = out[slot].clone() + term;
                }
                if l + 1 >= f.len() {
                    break;
                }
                deriv = deriv.derivative();
                l += 1;
            }
        }
        Self::from_powers(out)
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut acc = Rational::one();
    for t in 0..k {
        acc = acc * Rational::from_integer((n - t).into()) / Rational::from_integer((t + 1).into());
    }
    acc
}

impl Add for &DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        let (a, b) = (self.powers(), rhs.powers());
        let n = a.len().max(b.len());
        DiffOperator::from_powers(
            (0..n)
                .map(|k| a.get(k).cloned().unwrap_or_else(XPoly::zero) + b.get(k).cloned().unwrap_or_else(XPoly::zero))
                .collect(),
        )
    }
}

impl Sub for &DiffOperator {
    type Output = DiffOperator;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        let neg = DiffOperator::new(rhs.coeffs.iter().map(|c| -c.clone()).collect());
        self + &neg
    }
}

impl Mul for &DiffOperator {
    type Output = DiffOperator;
    fn mul(self, rhs: &DiffOperator) -> DiffOperator {
        self.compose(rhs)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let m = self.order();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match m - k {
                0 => format!("({c})"),
                1 => format!("({c})*D"),
                n => format!("({c})*D^{n}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse::parse_symbol;

    fn xp(c: &[GaussianRational]) -> XPoly {
        XPoly::new(c.to_vec())
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn canonical_commutator() {
        let x = DiffOperator::multiplication(XPoly::var());
        let dx = DiffOperator::d().compose(&x);
        let expected = DiffOperator::new(vec![XPoly::var(), XPoly::constant(-GaussianRational::i())]);
        assert_eq!(dx, expected);
    }

    #[test]
    fn square_of_d_minus_x() {
        let a = DiffOperator::d_minus(XPoly::var());
        let sq = a.compose(&a);
        assert_eq!(sq.slot(0), XPoly::one());
        assert_eq!(sq.slot(1), xp(&[g(0), g(-2)]));
        assert_eq!(sq.slot(2), xp(&[GaussianRational::i(), g(0), g(1)]));
    }

    #[test]
    fn left_symbol_round_trip_and_action() {
        let a = parse_symbol("x^2*xi^2 + 3*xi - i*x").unwrap();
        let op = DiffOperator::from_left_symbol(&a);
        assert_eq!(op.order(), 2);
        assert_eq!(op.left_symbol(), a);
        // x²D²(x³) = x²·(−1)·6x = −6x³; 3D(x³) = −9i x²; −i x·x³.
        let u = XPoly::monomial(g(1), 3);
        let out = op.apply(&u);
        assert_eq!(out.coeff(3), g(-6));
        assert_eq!(
            out.coeff(2),
            GaussianRational::new(crate::symbol::gaussian::rat(0, 1), crate::symbol::gaussian::rat(-9, 1))
        );
        assert_eq!(out.coeff(4), -GaussianRational::i());
    }
}
