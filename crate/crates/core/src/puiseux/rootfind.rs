//! Simultaneous complex root finding with multiplicity certification.
//!
//! Roots come from Aberth–Ehrlich iteration followed by Newton polishing.
//! A group of `k` approximations is accepted as one `k`-fold root only when
//! the group is tight and the first `k` Taylor coefficients at its centroid
//! are small at the scale a `k`-fold root perturbed by `precision` produces.

use num_complex::Complex64;

/// A certified root and its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RootError {
    /// Two approximations are closer than the cluster tolerance but do not
    /// form a certifiable multiple root.
    Ambiguous { near: Complex64, gap: f64 },
    /// A simple root failed the residual test.
    Residual { near: Complex64, residual: f64, bound: f64 },
    /// The leading coefficient is zero or a coefficient is not finite.
    Degenerate,
}

/// Relative distance below which distinct approximations are ambiguous.
pub const CLUSTER_TOL: f64 = 1e-8;

const MAX_ITER: usize = 800;

/// Horner evaluation of `q` and `q′` (ascending coefficients).
fn eval_with_derivative(q: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut f = Complex64::new(0.0, 0.0);
    let mut df = Complex64::new(0.0, 0.0);
    for &a in q.iter().rev() {
        df = df * z + f;
        f = f * z + a;
    }
    (f, df)
}

pub fn eval(q: &[Complex64], z: Complex64) -> Complex64 {
    q.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// `Σ |a_i| |z|^i`, the rounding scale of [`eval`].
pub fn eval_abs(q: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    q.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

/// Coefficients of `q^{(j)}/j!`.
fn taylor_coefficients(q: &[Complex64], j: usize) -> Vec<Complex64> {
    (j..q.len()).map(|i| q[i] * binomial(i, j)).collect()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, t| acc * (n - t) as f64 / (t + 1) as f64)
}

/// Trim trailing (leading-power) zeros.
fn trimmed(q: &[Complex64]) -> &[Complex64] {
    let mut n = q.len();
    while n > 0 && q[n - 1] == Complex64::new(0.0, 0.0) {
        n -= 1;
    }
    &q[..n]
}

/// Plain approximations to all roots of `q`, without certification.
pub fn aberth(q: &[Complex64]) -> Vec<Complex64> {
    let q = trimmed(q);
    let n = q.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![-q[0] / q[1]];
    }
    let lead = q[n].norm();
    // Fujiwara-type radius for the initial circle.
    let radius = (0..n).map(|i| (q[i].norm() / lead).powf(1.0 / (n - i) as f64)).fold(0.0f64, f64::max).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..MAX_ITER {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (f, df) = eval_with_derivative(q, z[k]);
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = f / df;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d == Complex64::new(0.0, 0.0) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * s;
            let step = if denom.norm() == 0.0 || !denom.is_finite() { ratio } else { ratio / denom };
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-17 {
            break;
        }
    }
    z
}

fn newton_polish(q: &[Complex64], mut z: Complex64, steps: usize) -> Complex64 {
    for _ in 0..steps {
        let (f, df) = eval_with_derivative(q, z);
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        if !step.is_finite() {
            break;
        }
        let next = z - step;
        if eval(q, next).norm() > eval(q, z).norm() {
            break;
        }
        z = next;
        if step.norm() <= 1e-17 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Whether `k` approximations centred at `c` are consistent with a `k`-fold root.
fn is_multiple_root(q: &[Complex64], c: Complex64, k: usize, precision: f64) -> bool {
    for j in 0..k {
        let t = taylor_coefficients(q, j);
        let value = eval(&t, c).norm();
        let scale = eval_abs(&t, c);
        if value > 10.0 * precision.powf((k - j) as f64 / k as f64) * scale {
            return false;
        }
    }
    true
}

/// All roots of `q` with certified multiplicities.
pub fn certified_roots(q: &[Complex64], precision: f64) -> Result<Vec<CertifiedRoot>, RootError> {
    let q = trimmed(q);
    if q.is_empty() || q.iter().any(|a| !a.is_finite()) {
        return Err(RootError::Degenerate);
    }
    let n = q.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let approx: Vec<Complex64> = aberth(q).into_iter().map(|z| newton_polish(q, z, 8)).collect();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let mut free: Vec<usize> = (0..n).filter(|&j| !assigned[j]).collect();
        free.sort_by(|&a, &b| {
            let da = (approx[a] - approx[start]).norm();
            let db = (approx[b] - approx[start]).norm();
            da.total_cmp(&db)
        });
        let mut taken = 1;
        let mut centre = approx[start];
        for k in (2..=free.len()).rev() {
            let group = &free[..k];
            let c: Complex64 = group.iter().map(|&j| approx[j]).sum::<Complex64>() / k as f64;
            let spread = group.iter().map(|&j| (approx[j] - c).norm()).fold(0.0, f64::max);
            if spread > 10.0 * precision.powf(1.0 / k as f64) * (1.0 + c.norm()) {
                continue;
            }
            if is_multiple_root(q, c, k, precision) {
                taken = k;
                // q^{(k−1)} has a simple root at a k-fold root of q.
                let dq: Vec<Complex64> = taylor_coefficients(q, k - 1);
                centre = newton_polish(&dq, c, 8);
                break;
            }
        }
        for &j in &free[..taken] {
            assigned[j] = true;
        }
        if taken == 1 {
            let r = eval(q, centre).norm();
            let bound = precision * eval_abs(q, centre);
            if r > bound {
                return Err(RootError::Residual { near: centre, residual: r, bound });
            }
        }
        out.push(CertifiedRoot { value: centre, multiplicity: taken });
    }
    for (a, ra) in out.iter().enumerate() {
        for rb in out.iter().skip(a + 1) {
            let gap = (ra.value - rb.value).norm();
            if gap <= CLUSTER_TOL * (1.0 + ra.value.norm().max(rb.value.norm())) {
                return Err(RootError::Ambiguous { near: ra.value, gap });
            }
        }
    }
    out.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
        let mut q = vec![c(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![c(0.0, 0.0); q.len() + 1];
            for (i, &a) in q.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            q = next;
        }
        q
    }

    #[test]
    fn simple_roots() {
        let roots = [c(1.0, 0.0), c(-2.0, 1.0), c(0.5, -3.0), c(0.0, 1.0)];
        let got = certified_roots(&from_roots(&roots), 1e-12).unwrap();
        assert_eq!(got.len(), 4);
        for r in roots {
            assert!(got.iter().any(|g| (g.value - r).norm() < 1e-12 && g.multiplicity == 1));
        }
    }

    #[test]
    fn multiple_roots_are_certified() {
        let roots = [c(1.0, 0.0), c(1.0, 0.0), c(0.0, 2.0), c(0.0, 2.0), c(0.0, 2.0), c(-1.0, 0.0)];
        let got = certified_roots(&from_roots(&roots), 1e-12).unwrap();
        let mults: Vec<usize> = got.iter().map(|g| g.multiplicity).collect();
        assert_eq!(mults.iter().sum::<usize>(), 6);
        let triple = got.iter().find(|g| g.multiplicity == 3).unwrap();
        assert!((triple.value - c(0.0, 2.0)).norm() < 1e-10);
        let double = got.iter().find(|g| g.multiplicity == 2).unwrap();
        assert!((double.value - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn fourth_roots_of_minus_one() {
        let q = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let got = certified_roots(&q, 1e-12).unwrap();
        assert_eq!(got.len(), 4);
        for g in got {
            assert!((g.value.powu(4) + c(1.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn near_coincident_roots_are_ambiguous() {
        let q = from_roots(&[c(1.0, 0.0), c(1.0 + 1e-9, 0.0), c(3.0, 0.0)]);
        assert!(certified_roots(&q, 1e-14).is_err() || certified_roots(&q, 1e-14).unwrap().len() == 2);
    }
}
