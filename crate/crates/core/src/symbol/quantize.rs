//! Exact transforms between symbols: Weyl/left quantization, shear and reflection.

use num_traits::{One, Zero};

use super::gaussian::{GaussianRational, Rational};
use super::poly::BivariatePoly;
use super::univariate::UniPoly;
use crate::error::SymbolError;

/// `Σ_γ f^γ/γ! ∂_ξ^γ ∂_x^γ a`, which terminates after `min(deg_ξ, deg_x)` steps.
fn derivative_series(a: &BivariatePoly, f: &GaussianRational) -> BivariatePoly {
    let top = a.deg_xi().min(a.deg_x());
    let mut out = a.clone();
    let mut weight = GaussianRational::one();
    for gamma in 1..=top {
        weight = (&weight * f).scale(&Rational::new(1.into(), gamma.into()));
        let d = a.mixed_derivative(gamma, gamma);
        out = &out + &d.scale(&weight);
    }
    out
}

/// Weyl symbol of the operator whose standard (left) symbol is `a`.
///
/// `p = Σ_γ (1/γ!) (−1/2)^γ ∂_ξ^γ D_x^γ a` with `D_x = −i ∂_x`, i.e. the
/// factor per step is `i/2`.
pub fn weyl_from_left(a: &BivariatePoly) -> BivariatePoly {
    derivative_series(a, &GaussianRational::new(Rational::zero(), Rational::new(1.into(), 2.into())))
}

/// Left symbol of the operator whose Weyl symbol is `p`; inverse of [`weyl_from_left`].
pub fn left_from_weyl(p: &BivariatePoly) -> BivariatePoly {
    derivative_series(p, &GaussianRational::new(Rational::zero(), Rational::new((-1).into(), 2.into())))
}

/// `p(x + λξ, ξ)`.
pub fn shear(p: &BivariatePoly, lambda: &Rational) -> BivariatePoly {
    if lambda.is_zero() {
        return p.clone();
    }
    let lin = BivariatePoly::from_terms([
        ((0, 1), GaussianRational::one()),
        ((1, 0), GaussianRational::real(lambda.clone())),
    ]);
    let mut powers = vec![BivariatePoly::constant(GaussianRational::one())];
    let mut out = BivariatePoly::zero();
    for (&(alpha, beta), c) in p.terms() {
        while powers.len() <= beta as usize {
            let next = &powers[powers.len() - 1] * &lin;
            powers.push(next);
        }
        let term = &powers[beta as usize] * &BivariatePoly::monomial(c.clone(), alpha, 0);
        out = &out + &term;
    }
    out
}

/// Candidate shear parameters in the fixed search order `1, −1, 2, −2, …`.
fn shear_candidates() -> impl Iterator<Item = Rational> {
    (1i64..).flat_map(|n| [n, -n]).map(|n| Rational::from_integer(n.into()))
}

/// Shear so that the `ξ^m` coefficient is nonzero, `m` the total degree.
///
/// Returns `λ = 0` when it already is; otherwise the first working candidate.
pub fn normalize_leading(p: &BivariatePoly) -> Result<(BivariatePoly, Rational), SymbolError> {
    if p.is_zero() {
        return Err(SymbolError::ZeroPolynomial);
    }
    let m = p.total_degree();
    if !p.coeff(m, 0).is_zero() {
        return Ok((p.clone(), Rational::zero()));
    }
    // After shearing, c̃_{m,0} = Σ_{α+β=m} c_{α,β} λ^β.
    let mut top = vec![GaussianRational::zero(); m as usize + 1];
    for (&(alpha, beta), c) in p.terms() {
        if alpha + beta == m {
            top[beta as usize] = c.clone();
        }
    }
    let q = UniPoly::new(top);
    let lambda = shear_candidates()
        .find(|l| !q.eval(&GaussianRational::real(l.clone())).is_zero())
        .expect("a nonzero polynomial has finitely many roots");
    Ok((shear(p, &lambda), lambda))
}

/// `p(−x, ξ)`.
pub fn reflect(p: &BivariatePoly) -> BivariatePoly {
    p.map_coeffs(|(_, beta), c| if beta % 2 == 1 { -c } else { c.clone() })
}
