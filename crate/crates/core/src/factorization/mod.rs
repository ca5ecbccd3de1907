//! Elementary symmetric functions, products of factored operators and the
//! interpolation matrix used to split a symbol into first-order factors.

pub mod interp;

pub use interp::{
    build_matrix_a, identity, identity_defect, inverse_b, inverse_b_exact, mat_mul, InterpMatrix, Matrix,
};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::FactorizationError;
use crate::symbol::univariate::Ring;
use crate::symbol::{left_from_weyl, BivariatePoly, DiffOperator, GaussianRational, XPoly};

/// Signed elementary symmetric functions `σ_0 … σ_n` of `values`.
///
/// `∏ (ξ − v_j) = Σ_h σ_h ξ^{n−h}`, so `σ_1 = −Σ v` and `σ_n = (−1)ⁿ ∏ v`.
pub fn elementary_symmetric_all<T: Ring>(values: &[T]) -> Vec<T> {
    let mut sigma = vec![T::one()];
    for v in values {
        let mut next = sigma.clone();
        next.push(T::zero());
        for h in 1..next.len() {
            next[h] = next[h].clone() - v.clone() * sigma[h - 1].clone();
        }
        sigma = next;
    }
    sigma
}

/// `σ_h(values)` in the signed convention.
pub fn elementary_symmetric<T: Ring>(h: usize, values: &[T]) -> Result<T, FactorizationError> {
    if h > values.len() {
        return Err(FactorizationError::IndexOutOfRange { index: h, len: values.len() });
    }
    Ok(elementary_symmetric_all(values).swap_remove(h))
}

/// `lhs ∘ rhs` with `D ∘ f = f ∘ D − i f′`.
pub fn compose_operators(lhs: &DiffOperator, rhs: &DiffOperator) -> DiffOperator {
    lhs.compose(rhs)
}

/// Slot-by-slot comparison of an operator with its commutative prediction.
///
/// `principal[k] = Σ_{l+h=k} a_l σ_h`; `remainder[k]` is the rest of slot `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredExpansion {
    pub operator: DiffOperator,
    pub principal: Vec<XPoly>,
    pub remainder: Vec<XPoly>,
}

impl FactoredExpansion {
    /// Every remainder vanishes.
    pub fn is_commutative(&self) -> bool {
        self.remainder.iter().all(|r| r.is_zero())
    }

    /// `R_0 = R_1 = 0`.
    pub fn leading_slots_exact(&self) -> bool {
        self.remainder.iter().take(2).all(|r| r.is_zero())
    }
}

fn cauchy(a: &[XPoly], b: &[XPoly], n: usize) -> Vec<XPoly> {
    (0..n)
        .map(|k| {
            (0..=k)
                .filter(|&l| l < a.len() && k - l < b.len())
                .fold(XPoly::zero(), |acc, l| acc + a[l].clone() * b[k - l].clone())
        })
        .collect()
}

/// `(Σ_k a_k D^{r1−k}) ∘ ∏_j (D − ξ_j)`, factors taken left to right.
pub fn expand_factored(a: &[XPoly], xis: &[XPoly]) -> Result<FactoredExpansion, FactorizationError> {
    if a.first().is_none_or(|a0| a0.is_zero()) {
        return Err(FactorizationError::ZeroLeading);
    }
    let front = DiffOperator::new(a.to_vec());
    let back = xis.iter().fold(DiffOperator::identity(), |acc, xi| acc.compose(&DiffOperator::d_minus(xi.clone())));
    let operator = front.compose(&back);
    let n = a.len() + xis.len();
    let principal = cauchy(a, &elementary_symmetric_all(xis), n);
    let remainder = (0..n).map(|k| operator.slot(k) - principal[k].clone()).collect();
    Ok(FactoredExpansion { operator, principal, remainder })
}

/// Standard symbol of the Weyl product `(Σ a_j ξ^{r1−j})(Σ b_h ξ^{r2−h})`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylProduct {
    pub weyl: BivariatePoly,
    pub standard: BivariatePoly,
    /// `Σ_{l+h=k} a_l b_h`, the coefficient of `ξ^{r1+r2−k}` in `weyl`.
    pub principal: Vec<XPoly>,
    /// Standard coefficient minus `principal`.
    pub remainder: Vec<XPoly>,
}

impl WeylProduct {
    /// `R_k = Σ_{ν≥1} (−i/2)^ν/ν! · (n−k+ν)!/(n−k)! · ∂^ν(Σ_{l+h=k−ν} a_l b_h)`.
    pub fn remainder_is_derivative_combination(&self) -> bool {
        let n = self.principal.len().saturating_sub(1);
        let half_i = GaussianRational::new(BigRational::zero(), BigRational::new((-1).into(), 2.into()));
        (0..self.principal.len()).all(|k| {
            let mut predicted = XPoly::zero();
            let mut weight = GaussianRational::one();
            for nu in 1..=k {
                let falling = BigRational::from_integer((n - k + nu).into());
                weight =
                    weight * half_i.clone() * GaussianRational::real(falling / BigRational::from_integer(nu.into()));
                predicted = predicted + self.principal[k - nu].nth_derivative(nu).scale(&weight);
            }
            predicted == self.remainder[k]
        })
    }
}

fn xi_sum(c: &[XPoly]) -> BivariatePoly {
    let mut by_power = c.to_vec();
    by_power.reverse();
    BivariatePoly::from_xi_coefficients(&by_power)
}

pub fn weyl_product_standard(a: &[XPoly], b: &[XPoly]) -> WeylProduct {
    let weyl = &xi_sum(a) * &xi_sum(b);
    let standard = left_from_weyl(&weyl);
    let n = (a.len() + b.len()).saturating_sub(1);
    let principal = cauchy(a, b, n);
    let top = n.saturating_sub(1) as u32;
    let remainder = (0..n).map(|k| standard.xi_coefficient(top - k as u32) - principal[k].clone()).collect();
    WeylProduct { weyl, standard, principal, remainder }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{parse_symbol, UniPoly};

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn xconst(c: GaussianRational) -> XPoly {
        UniPoly::constant(c)
    }

    fn x() -> XPoly {
        XPoly::var()
    }

    #[test]
    fn symmetric_values() {
        assert_eq!(elementary_symmetric(0, &[g(5), g(7)]).unwrap(), g(1));
        assert_eq!(elementary_symmetric(1, &[g(1), g(2), g(3)]).unwrap(), g(-6));
        assert_eq!(elementary_symmetric(2, &[g(1), g(2)]).unwrap(), g(2));
        assert_eq!(
            elementary_symmetric(3, &[g(1), g(2)]),
            Err(FactorizationError::IndexOutOfRange { index: 3, len: 2 })
        );
        let sigma = elementary_symmetric_all(&[g(1), g(2)]);
        assert_eq!(
            UniPoly::from_roots(&[g(1), g(2)]).coeffs(),
            &[sigma[2].clone(), sigma[1].clone(), sigma[0].clone()]
        );
    }

    #[test]
    fn factored_square() {
        let e = expand_factored(&[XPoly::one()], &[x(), x()]).unwrap();
        assert!(e.leading_slots_exact());
        assert_eq!(e.remainder[2], xconst(GaussianRational::i()));
        assert_eq!(e.operator.slot(2), x() * x() + xconst(GaussianRational::i()));
        let c = expand_factored(&[XPoly::one()], &[xconst(g(3))]).unwrap();
        assert_eq!(c.operator.coeffs(), &[XPoly::one(), xconst(g(-3))]);
        assert!(c.is_commutative());
        let mixed = expand_factored(&[XPoly::one(), x()], &[x()]).unwrap();
        assert!(mixed.leading_slots_exact());
        assert_eq!(mixed.operator.slot(1), XPoly::zero());
        assert_eq!(expand_factored(&[XPoly::zero()], &[x()]), Err(FactorizationError::ZeroLeading));
    }

    #[test]
    fn weyl_products() {
        let trivial = weyl_product_standard(&[xconst(g(1))], &[xconst(g(1))]);
        assert_eq!(trivial.standard, parse_symbol("1").unwrap());
        let xxi = weyl_product_standard(&[x(), XPoly::zero()], &[XPoly::one()]);
        assert_eq!(xxi.standard, parse_symbol("x*xi - 1/2*i").unwrap());
        assert!(xxi.remainder_is_derivative_combination());
        let sq = weyl_product_standard(&[XPoly::one(), XPoly::zero()], &[XPoly::one(), XPoly::zero()]);
        assert_eq!(sq.standard, parse_symbol("xi^2").unwrap());
        assert!(sq.remainder.iter().all(|r| r.is_zero()));
        let wide = weyl_product_standard(&[x() * x(), x(), XPoly::one()], &[x(), x() * x() * x()]);
        assert!(wide.remainder_is_derivative_combination());
    }
}
