//! Adaptive Dormand–Prince 5(4) integration of `P u = 0` written as a
//! first-order system, with magnitudes carried in the log domain.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::OracleError;
use crate::puiseux::rootfind::aberth;
use crate::symbol::{DiffOperator, UniPoly};

/// Integrator settings.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegratorOptions {
    /// Relative local error per step against the state's max-norm.
    pub rtol: f64,
    /// Distance in `x` between renormalizations.
    pub renorm_interval: f64,
    /// Steps below `min_step·(1+|x|)` abort the integration.
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self { rtol: 1e-11, renorm_interval: 1.0, min_step: 1e-13, max_steps: 20_000_000 }
    }
}

/// `state · 2^{scale}` with `state` of unit order.
#[derive(Debug, Clone)]
pub struct ScaledState {
    pub state: Vec<Complex64>,
    /// Natural log of the factor removed so far.
    pub log_scale: f64,
}

impl ScaledState {
    /// `log |state[i]|` including the removed scale.
    pub fn log_abs(&self, i: usize) -> f64 {
        self.state[i].norm().ln() + self.log_scale
    }

    /// Rescale by a power of two so the max-norm lies in `[1/2, 1)`; exact in binary.
    pub fn renormalize(&mut self) {
        let m = max_norm(&self.state);
        if m == 0.0 || !m.is_finite() {
            return;
        }
        let (_, e) = frexp(m);
        let factor = 2f64.powi(-e);
        for v in &mut self.state {
            *v *= factor;
        }
        self.log_scale += e as f64 * std::f64::consts::LN_2;
    }
}

fn frexp(m: f64) -> (f64, i32) {
    let e = m.log2().floor() as i32 + 1;
    (m / 2f64.powi(e), e)
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Companion system of `Σ c_k(x) D^{m−k} u = 0` in `v_j = D^j u`.
pub struct CompanionSystem {
    coeffs: Vec<UniPoly<Complex64>>,
}

impl CompanionSystem {
    pub fn new(p: &DiffOperator) -> Result<Self, OracleError> {
        if p.order() == 0 {
            return Err(OracleError::ZeroOrder);
        }
        Ok(Self { coeffs: p.coeffs().iter().map(|c| c.map(|g| g.to_complex())).collect() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest real zero of the leading coefficient, if any.
    pub fn largest_real_singularity(&self) -> Option<f64> {
        let lead = self.coeffs[0].coeffs();
        if lead.len() < 2 {
            return None;
        }
        aberth(lead)
            .into_iter()
            .filter(|z| z.im.abs() <= 1e-8 * (1.0 + z.re.abs()))
            .map(|z| z.re)
            .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))))
    }

    /// `dv/dx` with `d/dx = i·D`.
    pub fn rhs(&self, x: f64, v: &[Complex64], out: &mut [Complex64]) {
        let m = self.order();
        let xc = Complex64::new(x, 0.0);
        let i = Complex64::i();
        for j in 0..m - 1 {
            out[j] = i * v[j + 1];
        }
        let c0 = self.coeffs[0].eval(&xc);
        let mut acc = Complex64::zero();
        for k in 1..=m {
            acc += self.coeffs[k].eval(&xc) * v[m - k];
        }
        out[m - 1] = i * (-acc / c0);
    }
}

// Dormand–Prince tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// One trial step; returns the new state and the scaled error estimate.
fn dp_step(sys: &CompanionSystem, x: f64, y: &[Complex64], h: f64) -> (Vec<Complex64>, f64) {
    let n = y.len();
    let mut k = vec![vec![Complex64::zero(); n]; 7];
    let mut tmp = vec![Complex64::zero(); n];
    for s in 0..7 {
        for i in 0..n {
            let mut acc = y[i];
            for (r, ks) in k.iter().enumerate().take(s) {
                acc += ks[i] * (h * A[s][r]);
            }
            tmp[i] = acc;
        }
        let mut out = vec![Complex64::zero(); n];
        sys.rhs(x + C[s] * h, &tmp, &mut out);
        k[s] = out;
    }
    let mut y5 = vec![Complex64::zero(); n];
    let mut err = 0.0f64;
    for i in 0..n {
        let mut hi = y[i];
        let mut diff = Complex64::zero();
        for s in 0..7 {
            hi += k[s][i] * (h * B5[s]);
            diff += k[s][i] * (h * (B5[s] - B4[s]));
        }
        y5[i] = hi;
        err = err.max(diff.norm());
    }
    let scale = max_norm(y).max(max_norm(&y5));
    (y5, if scale > 0.0 { err / scale } else { err })
}

/// Integrate from `x0` to each of the increasing targets, recording the state there.
pub fn integrate(
    sys: &CompanionSystem,
    x0: f64,
    y0: &[Complex64],
    targets: &[f64],
    opts: &IntegratorOptions,
) -> Result<Vec<ScaledState>, OracleError> {
    let mut st = ScaledState { state: y0.to_vec(), log_scale: 0.0 };
    st.renormalize();
    let mut x = x0;
    let mut h = 1e-3 * (1.0 + x0.abs());
    let mut next_renorm = x0 + opts.renorm_interval;
    let mut out = Vec::with_capacity(targets.len());
    let mut steps = 0usize;
    for &t in targets {
        while x < t {
            if steps >= opts.max_steps {
                return Err(OracleError::StiffnessFailure(x));
            }
            let hh = h.min(t - x);
            let (y_new, err) = dp_step(sys, x, &st.state, hh);
            let ratio = err / opts.rtol;
            if ratio <= 1.0 && y_new.iter().all(|c| c.is_finite()) {
                x = if hh == t - x { t } else { x + hh };
                st.state = y_new;
                steps += 1;
                if x >= next_renorm {
                    st.renormalize();
                    while next_renorm <= x {
                        next_renorm += opts.renorm_interval;
                    }
                }
            }
            let factor = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
            if hh == h || ratio > 1.0 {
                h = hh * factor;
            }
            if h < opts.min_step * (1.0 + x.abs()) {
                return Err(OracleError::StiffnessFailure(x));
            }
        }
        out.push(st.clone());
    }
    Ok(out)
}
