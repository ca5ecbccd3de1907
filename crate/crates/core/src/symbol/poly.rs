//! Sparse exact polynomials in the phase-space variables `(x, ξ)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gaussian::{GaussianRational, Rational};
use super::univariate::UniPoly;

/// Exponent pair `(α, β)` of the monomial `x^β ξ^α`.
pub type Monomial = (u32, u32);

/// `Σ c_{α,β} x^β ξ^α` with Gaussian-rational coefficients.
///
/// Keys are `(α, β)`: the ξ-degree first, then the x-degree. Zero
/// coefficients are never stored; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<Monomial, GaussianRational>,
    degree: u32,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut acc: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(GaussianRational::zero) += &c;
        }
        acc.retain(|_, c| !c.is_zero());
        let degree = acc.keys().map(|&(a, b)| a + b).max().unwrap_or(0);
        Self { terms: acc, degree }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    /// `c · x^β ξ^α`.
    pub fn monomial(c: GaussianRational, alpha: u32, beta: u32) -> Self {
        Self::from_terms([((alpha, beta), c)])
    }

    pub fn x() -> Self {
        Self::monomial(GaussianRational::one(), 0, 1)
    }

    pub fn xi() -> Self {
        Self::monomial(GaussianRational::one(), 1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree `max(α+β)`; 0 for constants and for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    pub fn deg_xi(&self) -> u32 {
        self.terms.keys().map(|&(a, _)| a).max().unwrap_or(0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0)
    }

    /// Coefficient of `x^β ξ^α`.
    pub fn coeff(&self, alpha: u32, beta: u32) -> GaussianRational {
        self.terms.get(&(alpha, beta)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_coeffs(&self, f: impl Fn(Monomial, &GaussianRational) -> GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&m, c)| (m, f(m, c))))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_coeffs(|_, a| a * c)
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map_coeffs(|_, c| c.conj())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(GaussianRational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `Σ_{α+β=j} c_{α,β} x^β ξ^α`.
    pub fn homogeneous_part(&self, j: u32) -> Self {
        Self::from_terms(self.terms.iter().filter(|(&(a, b), _)| a + b == j).map(|(&m, c)| (m, c.clone())))
    }

    /// Coefficient of `ξ^α` as a polynomial in `x`.
    pub fn xi_coefficient(&self, alpha: u32) -> UniPoly<GaussianRational> {
        let deg = self.terms.keys().filter(|&&(a, _)| a == alpha).map(|&(_, b)| b as usize).max();
        let Some(deg) = deg else { return UniPoly::zero() };
        let mut v = vec![GaussianRational::zero(); deg + 1];
        for (&(a, b), c) in &self.terms {
            if a == alpha {
                v[b as usize] = c.clone();
            }
        }
        UniPoly::new(v)
    }

    /// Build from `Σ_α coeffs[α](x) ξ^α`.
    pub fn from_xi_coefficients(coeffs: &[UniPoly<GaussianRational>]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .flat_map(|(a, p)| p.coeffs().iter().enumerate().map(move |(b, c)| ((a as u32, b as u32), c.clone()))),
        )
    }

    /// `∂_ξ^{k} ∂_x^{l}` applied exactly.
    pub fn mixed_derivative(&self, k: u32, l: u32) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(a, b), c)| {
            if a < k || b < l {
                return None;
            }
            let factor = falling(a, k) * falling(b, l);
            Some(((a - k, b - l), c.scale(&factor)))
        }))
    }

    /// Polynomial in x obtained by substituting a univariate polynomial for ξ.
    pub fn substitute_xi(&self, xi: &UniPoly<GaussianRational>) -> UniPoly<GaussianRational> {
        let mut out = UniPoly::zero();
        for a in (0..=self.deg_xi()).rev() {
            out = out * xi.clone() + self.xi_coefficient(a);
        }
        out
    }

    pub fn eval(&self, x: Complex64, xi: Complex64) -> Complex64 {
        self.terms.iter().map(|(&(a, b), c)| c.to_complex() * x.powu(b) * xi.powu(a)).sum()
    }

    /// `Σ |c_{α,β}| |x|^β |ξ|^α`, the natural scale for rounding errors of [`Self::eval`].
    pub fn eval_abs(&self, x: f64, xi: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c.to_complex().norm() * x.abs().powi(b as i32) * xi.abs().powi(a as i32))
            .sum()
    }
}

/// `n (n-1) … (n-k+1)` as a rational.
fn falling(n: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * Rational::from_integer((n - j).into()))
}

impl<'a> Add<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        BivariatePoly::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(&m, c)| (m, c.clone())))
    }
}

impl<'a> Sub<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        BivariatePoly::from_terms(
            self.terms.iter().map(|(&m, c)| (m, c.clone())).chain(rhs.terms.iter().map(|(&m, c)| (m, -c))),
        )
    }
}

impl<'a> Mul<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.push(((a1 + a2, b1 + b2), c1 * c2));
            }
        }
        BivariatePoly::from_terms(out)
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: BivariatePoly) -> BivariatePoly {
        &self + &rhs
    }
}

impl Sub for BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: BivariatePoly) -> BivariatePoly {
        &self - &rhs
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        &self * &rhs
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.map_coeffs(|_, c| -c)
    }
}

impl Neg for BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        -&self
    }
}

/// Renders in the input grammar, highest total degree first, so that the
/// output parses back to the same polynomial.
impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by_key(|&&(a, b)| std::cmp::Reverse((a + b, a)));
        for (idx, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let (alpha, beta) = *key;
            let negative_real = c.im.is_zero() && c.re < Rational::zero();
            let shown = if negative_real { -c } else { c.clone() };
            if idx == 0 {
                if negative_real {
                    write!(f, "-")?;
                }
            } else if negative_real {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !shown.is_one() || (alpha == 0 && beta == 0) {
                factors.push(shown.to_string());
            }
            match beta {
                0 => {}
                1 => factors.push("x".into()),
                b => factors.push(format!("x^{b}")),
            }
            match alpha {
                0 => {}
                1 => factors.push("xi".into()),
                a => factors.push(format!("xi^{a}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePoly({self})")
    }
}
