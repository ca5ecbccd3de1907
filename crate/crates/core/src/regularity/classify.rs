//! Exact classifiers whose classes are known to be globally regular.

use num_traits::Zero;

use crate::symbol::{has_real_root, BivariatePoly, GaussianRational, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolClass {
    /// No dependence on `x`.
    ConstantCoefficient,
    /// `p_m(x, ξ) ≠ 0` off the origin.
    GloballyElliptic,
    /// Quasi-homogeneous principal part of weight `q` for `x`.
    QuasiElliptic {
        q: Rational,
    },
    /// `c_{m,n} ≠ 0` with `m = deg_ξ`, `n = deg_x`, both boundary parts free of real roots.
    SGElliptic {
        m: u32,
        n: u32,
    },
    General,
}

impl SymbolClass {
    pub fn name(&self) -> &'static str {
        match self {
            SymbolClass::ConstantCoefficient => "ConstantCoefficient",
            SymbolClass::GloballyElliptic => "GloballyElliptic",
            SymbolClass::QuasiElliptic { .. } => "QuasiElliptic",
            SymbolClass::SGElliptic { .. } => "SGElliptic",
            SymbolClass::General => "General",
        }
    }
}

/// Class of a symbol plus the regularity it implies, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: SymbolClass,
    /// `Some(true)` for the regular classes; constant-coefficient symbols
    /// are decided either way; `None` for [`SymbolClass::General`].
    pub regular: Option<bool>,
}

fn poly_in_xi(coeffs: Vec<GaussianRational>) -> UniPoly<GaussianRational> {
    UniPoly::new(coeffs)
}

/// `Σ_α c_α ξ^α` restricted to `p`'s monomials selected by `keep`, with `(±1)^β` folded in.
fn boundary_poly(p: &BivariatePoly, sign: i64, keep: impl Fn(u32, u32) -> bool) -> UniPoly<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); p.deg_xi() as usize + 1];
    for (&(a, b), c) in p.terms() {
        if keep(a, b) {
            let s = if sign < 0 && b % 2 == 1 { -c } else { c.clone() };
            v[a as usize] += &s;
        }
    }
    poly_in_xi(v)
}

fn constant_coefficient(p: &BivariatePoly) -> Option<Classification> {
    if p.terms().any(|(&(_, b), _)| b > 0) {
        return None;
    }
    let poly = poly_in_xi((0..=p.deg_xi()).map(|a| p.coeff(a, 0)).collect());
    Some(Classification {
        class: SymbolClass::ConstantCoefficient,
        regular: Some(!p.is_zero() && !has_real_root(&poly)),
    })
}

fn globally_elliptic(p: &BivariatePoly) -> bool {
    let m = p.total_degree();
    if p.coeff(m, 0).is_zero() {
        return false;
    }
    // p_m(1, λ) = Σ_{α+β=m} c_{α,β} λ^α.
    !has_real_root(&boundary_poly(p, 1, |a, b| a + b == m))
}

fn quasi_elliptic(p: &BivariatePoly) -> Option<Rational> {
    let m = p.total_degree();
    if p.coeff(m, 0).is_zero() {
        return None;
    }
    if p.terms().any(|(&(a, b), _)| a + b == m && a != m) {
        return None;
    }
    let q = p.terms().filter(|(&(_, b), _)| b > 0).map(|(&(a, b), _)| Rational::new((m - a).into(), b.into())).min()?;
    let on_q = |a: u32, b: u32| {
        Rational::from_integer(a.into()) + &q * Rational::from_integer(b.into()) == Rational::from_integer(m.into())
    };
    let plus = boundary_poly(p, 1, on_q);
    let minus = boundary_poly(p, -1, on_q);
    (!has_real_root(&plus) && !has_real_root(&minus)).then_some(q)
}

fn sg_elliptic(p: &BivariatePoly) -> Option<(u32, u32)> {
    let (m, n) = (p.deg_xi(), p.deg_x());
    if p.coeff(m, n).is_zero() {
        return None;
    }
    let in_xi = boundary_poly(p, 1, |_, b| b == n);
    let in_x = p.xi_coefficient(m);
    (!has_real_root(&in_xi) && !has_real_root(&in_x)).then_some((m, n))
}

/// The first matching class in the order constant, elliptic, quasi-elliptic, SG, general.
pub fn classify(p: &BivariatePoly) -> Classification {
    if let Some(c) = constant_coefficient(p) {
        return c;
    }
    if globally_elliptic(p) {
        return Classification { class: SymbolClass::GloballyElliptic, regular: Some(true) };
    }
    if let Some(q) = quasi_elliptic(p) {
        return Classification { class: SymbolClass::QuasiElliptic { q }, regular: Some(true) };
    }
    if let Some((m, n)) = sg_elliptic(p) {
        return Classification { class: SymbolClass::SGElliptic { m, n }, regular: Some(true) };
    }
    Classification { class: SymbolClass::General, regular: None }
}
