//! The interpolation matrix `A` built from `ξ^{r1−j}Q(ξ)` and `Q_j(ξ)`, and
//! its closed-form inverse.

use num_complex::Complex64;

use crate::error::FactorizationError;
use crate::symbol::univariate::Field;
use crate::symbol::{GaussianRational, UniPoly};

use super::elementary_symmetric_all;

/// Dense row-major matrix.
pub type Matrix<T> = Vec<Vec<T>>;

/// Row `i` holds the coefficients of `ξ^{n−1−i}`, `n = r1 + r2`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpMatrix<T> {
    pub r1: usize,
    pub r2: usize,
    pub xs: Vec<T>,
    pub a: Matrix<T>,
}

fn check_len<T>(xs: &[T], r1: usize, r2: usize) -> Result<usize, FactorizationError> {
    let n = r1 + r2;
    if xs.len() != n {
        return Err(FactorizationError::DimensionMismatch { expected: n, got: xs.len() });
    }
    Ok(n)
}

/// Descending coefficient column of length `n` for `poly`.
fn column<T: Field>(poly: &UniPoly<T>, n: usize) -> Vec<T> {
    (0..n).map(|i| poly.coeff(n - 1 - i)).collect()
}

pub fn build_matrix_a<T: Field>(xs: &[T], r1: usize, r2: usize) -> Result<InterpMatrix<T>, FactorizationError> {
    let n = check_len(xs, r1, r2)?;
    let q = UniPoly::from_roots(&xs[r1..]);
    let mut cols = Vec::with_capacity(n);
    for j in 0..r1 {
        cols.push(column(&(UniPoly::monomial(T::one(), r1 - 1 - j) * q.clone()), n));
    }
    for j in r1..n {
        let others: Vec<T> = xs.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect();
        cols.push(column(&UniPoly::from_roots(&others), n));
    }
    let a = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(InterpMatrix { r1, r2, xs: xs.to_vec(), a })
}

/// First coincident pair among those with an index in the back block.
fn back_coincidence<T: Field>(xs: &[T], r1: usize) -> Option<(usize, usize)> {
    let n = xs.len();
    (0..n).flat_map(|j| ((j + 1)..n).map(move |k| (j, k))).find(|&(j, k)| k >= r1 && xs[j] == xs[k])
}

fn front_coincidence<T: Field>(xs: &[T], r1: usize) -> Option<(usize, usize)> {
    (0..r1).flat_map(|j| ((j + 1)..r1).map(move |k| (j, k))).find(|&(j, k)| xs[j] == xs[k])
}

fn power<T: Field>(t: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc * t.clone())
}

/// `L_h(ξ_h) = ∏_{l≠h} (ξ_h − ξ_l)`.
fn lagrange_denominator<T: Field>(xs: &[T], h: usize) -> T {
    xs.iter().enumerate().filter(|&(l, _)| l != h).fold(T::one(), |acc, (_, v)| acc * (xs[h].clone() - v.clone()))
}

/// Closed-form inverse of `A`; all nodes must be pairwise distinct.
pub fn inverse_b<T: Field>(xs: &[T], r1: usize, r2: usize) -> Result<Matrix<T>, FactorizationError> {
    let n = check_len(xs, r1, r2)?;
    if let Some((j, k)) = back_coincidence(xs, r1).or_else(|| front_coincidence(xs, r1)) {
        return Err(FactorizationError::CoincidentNodes(j, k));
    }
    let weights: Vec<Vec<T>> = (0..n)
        .map(|h| {
            let d = lagrange_denominator(xs, h);
            (0..n).map(|k| power(&xs[h], n - 1 - k) / d.clone()).collect()
        })
        .collect();
    let front_sigma: Vec<Vec<T>> = (0..r1)
        .map(|h| {
            let rest: Vec<T> = xs[..r1].iter().enumerate().filter(|&(l, _)| l != h).map(|(_, v)| v.clone()).collect();
            elementary_symmetric_all(&rest)
        })
        .collect();
    let mut b = vec![vec![T::zero(); n]; n];
    for (j, row) in b.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            *entry = if j < r1 {
                (0..r1).fold(T::zero(), |acc, h| acc + weights[h][k].clone() * front_sigma[h][j].clone())
            } else {
                weights[j][k].clone()
            };
        }
    }
    Ok(b)
}

/// Exact inverse that also covers coincident front nodes.
///
/// For pairwise distinct nodes this is [`inverse_b`]; when only nodes among
/// the first `r1` coincide, `A` stays invertible and is inverted directly.
pub fn inverse_b_exact(
    xs: &[GaussianRational],
    r1: usize,
    r2: usize,
) -> Result<Matrix<GaussianRational>, FactorizationError> {
    check_len(xs, r1, r2)?;
    if let Some((j, k)) = back_coincidence(xs, r1) {
        return Err(FactorizationError::CoincidentNodes(j, k));
    }
    if front_coincidence(xs, r1).is_none() {
        return inverse_b(xs, r1, r2);
    }
    let a = build_matrix_a(xs, r1, r2)?.a;
    gauss_jordan(a).ok_or_else(|| {
        let (j, k) = front_coincidence(xs, r1).expect("checked above");
        FactorizationError::CoincidentNodes(j, k)
    })
}

/// Exact inverse by elimination; `None` when singular.
fn gauss_jordan<T: Field>(mut a: Matrix<T>) -> Option<Matrix<T>> {
    let n = a.len();
    let mut inv = identity::<T>(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for k in 0..n {
            a[col][k] = a[col][k].clone() / p.clone();
            inv[col][k] = inv[col][k].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..n {
                a[r][k] = a[r][k].clone() - f.clone() * a[col][k].clone();
                inv[r][k] = inv[r][k].clone() - f.clone() * inv[col][k].clone();
            }
        }
    }
    Some(inv)
}

pub fn identity<T: Field>(n: usize) -> Matrix<T> {
    (0..n).map(|i| (0..n).map(|k| if i == k { T::one() } else { T::zero() }).collect()).collect()
}

pub fn mat_mul<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols).map(|k| (0..inner).fold(T::zero(), |acc, l| acc + row[l].clone() * b[l][k].clone())).collect()
        })
        .collect()
}

/// `max |(A·B − I)_{jk}|`.
pub fn identity_defect(a: &Matrix<Complex64>, b: &Matrix<Complex64>) -> f64 {
    let p = mat_mul(a, b);
    p.iter()
        .enumerate()
        .flat_map(|(j, row)| row.iter().enumerate().map(move |(k, v)| (v - if j == k { 1.0 } else { 0.0 }).norm()))
        .fold(0.0, f64::max)
}
