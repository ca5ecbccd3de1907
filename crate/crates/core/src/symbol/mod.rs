//! Exact symbols in `(x, ξ)`, their quantizations and the operators they define.

pub mod gaussian;
pub mod operator;
pub mod parse;
pub mod poly;
pub mod quantize;
pub mod univariate;

pub use gaussian::{rat, GaussianRational, Rational};
pub use operator::{DiffOperator, XPoly};
pub use parse::parse_symbol;
pub use poly::{BivariatePoly, Monomial};
pub use quantize::{left_from_weyl, normalize_leading, reflect, shear, weyl_from_left};
pub use univariate::{count_real_roots, has_real_root, UniPoly};
