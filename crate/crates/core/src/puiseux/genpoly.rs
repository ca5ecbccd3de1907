//! Polynomials in `η` whose coefficients are finite sums `Σ a_e x^e` with
//! rational exponents and floating coefficients.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;

use crate::symbol::{BivariatePoly, GaussianRational};

/// A floating coefficient together with the sum of the moduli that produced it.
///
/// `value` is trusted only when it is large compared with `mass`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Coef {
    pub value: Complex64,
    pub mass: f64,
}

pub(crate) type Row = BTreeMap<Rational64, Coef>;

/// `Σ_k rows[k](x) η^k`.
#[derive(Debug, Clone)]
pub(crate) struct GenPoly {
    pub rows: Vec<Row>,
}

/// A vertex `(k, E_k)` of the Newton diagram: `E_k` is the leading exponent of row `k`.
pub(crate) type Vertex = (usize, Rational64);

/// Hull edge between `(k1, E1)` and `(k2, E2)`; `slope` is the root exponent `ν`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Edge {
    pub k1: usize,
    pub k2: usize,
    pub slope: Rational64,
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, t| acc * (n - t) as f64 / (t + 1) as f64)
}

impl GenPoly {
    /// Rows indexed by the ξ-power of `p`.
    pub fn from_symbol(p: &BivariatePoly) -> Self {
        let mut rows = vec![Row::new(); p.deg_xi() as usize + 1];
        for (&(alpha, beta), c) in p.terms() {
            let v = c.to_complex();
            rows[alpha as usize].insert(Rational64::from_integer(beta as i64), Coef { value: v, mass: v.norm() });
        }
        Self { rows }
    }

    /// Drop coefficients with `|value| ≤ zero_tol · mass` and trailing empty rows.
    pub fn cleanup(&mut self, zero_tol: f64) {
        for row in &mut self.rows {
            row.retain(|_, c| c.value.norm() > zero_tol * c.mass && c.value.norm() > 0.0);
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    /// Lowest power of `η` with a nonzero coefficient.
    pub fn lowest_power(&self) -> Option<usize> {
        self.rows.iter().position(|r| !r.is_empty())
    }

    pub fn leading(&self, k: usize) -> Option<(Rational64, Coef)> {
        self.rows.get(k)?.iter().next_back().map(|(e, c)| (*e, *c))
    }

    fn vertices(&self) -> Vec<Vertex> {
        self.rows.iter().enumerate().filter_map(|(k, r)| r.keys().next_back().map(|e| (k, *e))).collect()
    }

    /// Upper hull of the Newton diagram, edges ordered by increasing slope.
    pub fn edges(&self) -> Vec<Edge> {
        let pts = self.vertices();
        let mut hull: Vec<Vertex> = Vec::new();
        for &pt in &pts {
            while hull.len() >= 2 {
                let (k0, e0) = hull[hull.len() - 2];
                let (k1, e1) = hull[hull.len() - 1];
                // Keep the middle point only when it lies strictly above the chord.
                let lhs = (e1 - e0) * Rational64::from_integer((pt.0 - k0) as i64);
                let rhs = (pt.1 - e0) * Rational64::from_integer((k1 - k0) as i64);
                if lhs <= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        hull.windows(2)
            .map(|w| {
                let (k1, e1) = w[0];
                let (k2, e2) = w[1];
                Edge { k1, k2, slope: (e1 - e2) / Rational64::from_integer((k2 - k1) as i64) }
            })
            .collect()
    }

    /// Coefficients of the edge polynomial in `c`, ascending from power `k1`.
    pub fn edge_polynomial(&self, edge: &Edge) -> Vec<Complex64> {
        let (e1, _) = self.leading(edge.k1).expect("edge endpoint");
        (edge.k1..=edge.k2)
            .map(|k| {
                let target = e1 - edge.slope * Rational64::from_integer((k - edge.k1) as i64);
                self.rows[k].get(&target).map(|c| c.value).unwrap_or_else(Complex64::zero)
            })
            .collect()
    }

    /// `P(c·x^ν + η)` expanded in powers of the new `η`.
    pub fn substitute(&self, c: Complex64, nu: Rational64) -> GenPoly {
        let n = self.rows.len();
        let mut rows = vec![Row::new(); n];
        let cabs = c.norm();
        for (k, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let mut cpow = Complex64::new(1.0, 0.0);
            let mut cabs_pow = 1.0;
            for j in (0..=k).rev() {
                let shift = nu * Rational64::from_integer((k - j) as i64);
                let b = binomial(k, j);
                let factor = cpow * b;
                let mass_factor = cabs_pow * b;
                let target = &mut rows[j];
                for (e, coef) in row {
                    let entry = target.entry(*e + shift).or_insert(Coef { value: Complex64::zero(), mass: 0.0 });
                    entry.value += coef.value * factor;
                    entry.mass += coef.mass * mass_factor;
                }
                cpow *= c;
                cabs_pow *= cabs;
            }
        }
        GenPoly { rows }
    }
}

/// Exact edge polynomial of a symbol at the first level, with integer `E_k`.
pub(crate) fn exact_edge_polynomial(p: &BivariatePoly, edge: &Edge) -> Vec<GaussianRational> {
    let rows = GenPoly::from_symbol(p);
    let (e1, _) = rows.leading(edge.k1).expect("edge endpoint");
    (edge.k1..=edge.k2)
        .map(|k| {
            let target = e1 - edge.slope * Rational64::from_integer((k - edge.k1) as i64);
            if target.is_integer() && *target.numer() >= 0 {
                p.coeff(k as u32, *target.numer() as u32)
            } else {
                GaussianRational::zero()
            }
        })
        .collect()
}
