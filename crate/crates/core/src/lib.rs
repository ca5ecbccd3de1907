//! Global regularity of ordinary differential operators with polynomial
//! coefficients, decided from Puiseux expansions of the Weyl-symbol roots.

pub mod error;
pub mod factorization;
pub mod oracle;
pub mod puiseux;
pub mod regularity;
pub mod selftest;
pub mod symbol;
