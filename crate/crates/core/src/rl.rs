//! One-dimensional Riemann–Liouville integrals by product integration.
//!
//! The integrand is replaced by its piecewise-linear interpolant and the
//! kernel moments `∫ (t_k - s)^{α-1} {1, s} ds` are integrated in closed form
//! on every cell, so the weak singularity at `s = t_k` costs nothing. On a
//! uniform grid the weights depend only on `k - j`:
//!
//! ```text
//! I^α f(t_k) ≈ h^α / Γ(α+2) · ( a_k f_0 + Σ_{0<j<k} c_{k-j} f_j + f_k )
//! a_k = (k-1)^{α+1} - (k-1-α) k^α
//! c_m = (m+1)^{α+1} - 2 m^{α+1} + (m-1)^{α+1}
//! ```
//!
//! All weights are nonnegative, and at `α = 1` they reduce to the trapezoid
//! weights `1, 2, ..., 2, 1` exactly.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{FracError, Result};
use crate::grid::{SampledFunction1D, UniformGrid1D};
use crate::special::{gamma, ln_gamma};

/// A strictly positive, finite order.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Self(alpha))
        } else {
            Err(FracError::InvalidOrder(alpha))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FractionalOrder {
    type Error = FracError;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

/// `τ^{α-1} / Γ(α)`.
pub fn rl_kernel(alpha: f64, tau: f64) -> Result<f64> {
    let alpha = FractionalOrder::new(alpha)?.get();
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(FracError::KernelDomain(tau));
    }
    if alpha == 1.0 {
        return Ok(1.0);
    }
    Ok(tau.powf(alpha - 1.0) / gamma(alpha))
}

/// Precomputed product-integration weights for one order on one uniform grid.
#[derive(Debug, Clone)]
pub struct ProductWeights {
    alpha: f64,
    scale: f64,
    first: Vec<f64>,
    interior: Vec<f64>,
}

impl ProductWeights {
    pub fn new(alpha: f64, grid: &UniformGrid1D) -> Result<Self> {
        let alpha = FractionalOrder::new(alpha)?.get();
        let n = grid.intervals();
        let p = alpha + 1.0;
        let pow_p: Vec<f64> = (0..=n).map(|m| (m as f64).powf(p)).collect();
        let mut first = vec![0.0; n + 1];
        for (k, slot) in first.iter_mut().enumerate().skip(1) {
            let kf = k as f64;
            *slot = (pow_p[k - 1] - (kf - 1.0 - alpha) * kf.powf(alpha)).max(0.0);
        }
        let mut interior = vec![0.0; n.max(1)];
        for m in 1..n {
            interior[m] = (pow_p[m + 1] - 2.0 * pow_p[m] + pow_p[m - 1]).max(0.0);
        }
        let scale = grid.step().powf(alpha) / gamma(alpha + 2.0);
        Ok(Self { alpha, scale, first, interior })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Applies the weights to node values; `values.len()` must be `n + 1`.
    pub fn apply(&self, values: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(values.len(), self.first.len());
        (0..values.len())
            .into_par_iter()
            .map(|k| self.node_value(values, k))
            .collect()
    }

    /// Real-valued variant used by the tensorized and table paths.
    pub fn apply_real(&self, values: &[f64]) -> Vec<f64> {
        (0..values.len())
            .into_par_iter()
            .map(|k| {
                if k == 0 {
                    return 0.0;
                }
                let head = self.first[k] * values[0];
                let mut acc = values[1..k]
                    .iter()
                    .zip(self.interior[1..k].iter().rev())
                    .fold(head, |acc, (v, w)| acc + w * v);
                acc += values[k];
                acc * self.scale
            })
            .collect()
    }

    fn node_value(&self, values: &[Complex64], k: usize) -> Complex64 {
        if k == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let head = values[0] * self.first[k];
        let mut acc = values[1..k]
            .iter()
            .zip(self.interior[1..k].iter().rev())
            .fold(head, |acc, (v, w)| acc + v * w);
        acc += values[k];
        acc * self.scale
    }
}

/// `I_a^α f` at every node, with origin at the grid's left endpoint.
pub fn rl_integral(alpha: f64, f: &SampledFunction1D) -> Result<SampledFunction1D> {
    let weights = ProductWeights::new(alpha, f.grid())?;
    let values = if f.is_real() {
        weights
            .apply_real(&f.real_parts())
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect()
    } else {
        weights.apply(f.values())
    };
    Ok(SampledFunction1D::from_parts_unchecked(*f.grid(), values))
}

/// Shift-conjugated form: translate `[a, T]` to `[0, T - a]`, integrate,
/// translate back.
pub fn rl_integral_shifted(alpha: f64, f: &SampledFunction1D) -> Result<SampledFunction1D> {
    let origin = f.grid().start();
    let at_zero = f.translated_to(0.0)?;
    rl_integral(alpha, &at_zero)?.translated_to(origin)
}

/// Fits `β` in `ln g(t) ≈ β ln(t - a) - ln Γ(β + 1)` over the interior nodes.
pub fn estimate_order(g: &SampledFunction1D) -> Result<f64> {
    const MAX_ORDER: f64 = 20.0;
    const SCAN: usize = 400;

    let grid = g.grid();
    let n = grid.intervals();
    if n < 3 {
        return Err(FracError::InvalidGrid("need at least two interior nodes".into()));
    }
    let mut logs_t = Vec::with_capacity(n - 1);
    let mut logs_g = Vec::with_capacity(n - 1);
    for k in 1..n {
        let v = g.value(k).re;
        if !(v > 0.0) {
            return Err(FracError::NonPositive { index: k, value: v });
        }
        logs_t.push((grid.node(k) - grid.start()).ln());
        logs_g.push(v.ln());
    }
    let objective = |beta: f64| -> f64 {
        let lg = ln_gamma(beta + 1.0);
        logs_t
            .iter()
            .zip(&logs_g)
            .map(|(lt, lgv)| {
                let r = lgv - beta * lt + lg;
                r * r
            })
            .sum()
    };

    let step = MAX_ORDER / SCAN as f64;
    let (best, _) = (1..=SCAN)
        .map(|i| {
            let beta = i as f64 * step;
            (beta, objective(beta))
        })
        .fold((step, f64::INFINITY), |acc, (b, v)| if v < acc.1 { (b, v) } else { acc });

    let mut lo = (best - step).max(1e-12);
    let mut hi = (best + step).min(MAX_ORDER);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    while hi - lo > 1e-6 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = objective(x2);
        }
    }
    Ok(0.5 * (lo + hi))
}
