//! Riesz potentials as Fourier multipliers on periodic grids.
//!
//! Period 1 on every axis; mode `k` (signed, `-M/2 <= k < M/2`) has frequency
//! `ξ = 2πk`. The zero mode is dropped, which is why inputs must have zero mean.

use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};
use crate::transforms::FitResult;

/// Largest tolerated mean of an input to [`riesz_potential`].
pub const MEAN_TOL: f64 = 1e-10;

/// Pass threshold for the multiplicativity and anchor verdicts.
pub const MULTIPLIER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicGridND {
    modes: Vec<usize>,
}

impl PeriodicGridND {
    pub fn new(modes: Vec<usize>) -> Result<Self> {
        if modes.is_empty() || modes.len() > 3 {
            return Err(FracError::InvalidGrid(format!("dimension must be 1..=3, got {}", modes.len())));
        }
        if let Some(m) = modes.iter().find(|m| **m < 4 || **m % 2 != 0) {
            return Err(FracError::InvalidGrid(format!("mode count must be even and >= 4, got {m}")));
        }
        Ok(Self { modes })
    }

    pub fn cube(dim: usize, modes: usize) -> Result<Self> {
        Self::new(vec![modes; dim])
    }

    pub fn dim(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for j in (0..self.dim()).rev() {
            idx[j] = flat % self.modes[j];
            flat /= self.modes[j];
        }
        idx
    }

    /// Node coordinates `j / M` per axis.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .iter()
            .zip(&self.modes)
            .map(|(&j, &m)| j as f64 / m as f64)
            .collect()
    }

    /// Signed wave numbers of the FFT slot `flat`.
    pub fn wave_numbers(&self, flat: usize) -> Vec<i64> {
        self.multi_index(flat)
            .iter()
            .zip(&self.modes)
            .map(|(&k, &m)| if k < m / 2 { k as i64 } else { k as i64 - m as i64 })
            .collect()
    }

    /// `ξ = 2πk` for every nonzero mode.
    pub fn nonzero_frequencies(&self) -> Vec<Vec<f64>> {
        (1..self.len())
            .map(|flat| {
                self.wave_numbers(flat)
                    .iter()
                    .map(|&k| 2.0 * std::f64::consts::PI * k as f64)
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSamples {
    grid: PeriodicGridND,
    values: Vec<Complex64>,
}

impl PeriodicSamples {
    pub fn sample(grid: PeriodicGridND, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let values = (0..grid.len())
            .map(|flat| {
                let value = f(&grid.point(flat));
                if value.is_finite() {
                    Ok(Complex64::new(value, 0.0))
                } else {
                    Err(FracError::NonFinite { index: flat, value })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, values })
    }

    pub fn from_values(grid: PeriodicGridND, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(FracError::GridMismatch(format!("{} values for {} nodes", values.len(), grid.len())));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &PeriodicGridND {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// `sqrt(mean |f|^2)`.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    pub fn linf_distance(&self, other: &Self) -> Result<f64> {
        if self.grid != other.grid {
            return Err(FracError::GridMismatch("periodic grids differ".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Normalized Fourier coefficients `f̂_k = mean_j f_j e^{-2πi k·t_j}`.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut data = self.values.clone();
        fft_nd(&mut data, self.grid.modes(), FftDirection::Forward);
        let scale = 1.0 / self.values.len() as f64;
        data.iter_mut().for_each(|v| *v *= scale);
        data
    }

    /// `k_1,...,k_n,re,im` for every nonzero mode.
    pub fn write_spectrum_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let cols: Vec<String> = (1..=self.grid.dim()).map(|j| format!("k_{j}")).collect();
        writeln!(w, "{},re,im", cols.join(","))?;
        for (flat, c) in self.spectrum().iter().enumerate().skip(1) {
            let ks: Vec<String> = self.grid.wave_numbers(flat).iter().map(|k| k.to_string()).collect();
            writeln!(w, "{},{:?},{:?}", ks.join(","), c.re, c.im)?;
        }
        Ok(())
    }
}

fn fft_nd(data: &mut [Complex64], modes: &[usize], direction: FftDirection) {
    let mut planner = FftPlanner::new();
    let dim = modes.len();
    let mut stride = 1;
    for axis in (0..dim).rev() {
        let m = modes[axis];
        let fft = planner.plan_fft(m, direction);
        let block = stride * m;
        let mut pencil = vec![Complex64::new(0.0, 0.0); m];
        for outer in (0..data.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (i, slot) in pencil.iter_mut().enumerate() {
                    *slot = data[base + i * stride];
                }
                fft.process(&mut pencil);
                for (i, v) in pencil.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
        stride = block;
    }
}

fn frequency_norm(grid: &PeriodicGridND, flat: usize) -> f64 {
    let k2: f64 = grid.wave_numbers(flat).iter().map(|&k| (k * k) as f64).sum();
    2.0 * std::f64::consts::PI * k2.sqrt()
}

fn check_order(alpha: f64, dim: usize) -> Result<()> {
    if !(alpha > 0.0 && alpha < dim as f64) {
        return Err(FracError::InvalidArgument(format!(
            "Riesz order must lie in (0, {dim}), got {alpha}"
        )));
    }
    Ok(())
}

/// Multiplies every nonzero mode by `|ξ|^{-α}` and drops the zero mode.
pub fn riesz_potential(alpha: f64, f: &PeriodicSamples) -> Result<PeriodicSamples> {
    let grid = f.grid();
    check_order(alpha, grid.dim())?;
    let mean = f.mean().norm();
    if !(mean < MEAN_TOL) {
        return Err(FracError::NonZeroMean(mean));
    }
    let mut data = f.values.clone();
    fft_nd(&mut data, grid.modes(), FftDirection::Forward);
    data[0] = Complex64::new(0.0, 0.0);
    for (flat, v) in data.iter_mut().enumerate().skip(1) {
        *v *= frequency_norm(grid, flat).powf(-alpha);
    }
    fft_nd(&mut data, grid.modes(), FftDirection::Inverse);
    let scale = 1.0 / data.len() as f64;
    data.iter_mut().for_each(|v| *v *= scale);
    Ok(PeriodicSamples { grid: grid.clone(), values: data })
}

/// `sqrt(Σ_{k≠0} |f̂_k|^2 |ξ_k|^{-2α})`, the norm Parseval predicts for the potential.
pub fn weighted_spectral_norm(alpha: f64, f: &PeriodicSamples) -> Result<f64> {
    check_order(alpha, f.grid().dim())?;
    let spectrum = f.spectrum();
    Ok(spectrum
        .iter()
        .enumerate()
        .skip(1)
        .map(|(flat, c)| c.norm_sqr() * frequency_norm(f.grid(), flat).powf(-2.0 * alpha))
        .sum::<f64>()
        .sqrt())
}

type MultiplierFn = dyn Fn(f64, &[f64]) -> f64 + Send + Sync;

/// A candidate symbol `m(α, ξ)` for orders in `(0, n)`.
#[derive(Clone)]
pub struct MultiplierFamily {
    name: String,
    dim: usize,
    anchor: f64,
    eval: Arc<MultiplierFn>,
}

impl std::fmt::Debug for MultiplierFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MultiplierFamily")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("anchor", &self.anchor)
            .finish()
    }
}

fn euclid(xi: &[f64]) -> f64 {
    xi.iter().map(|v| v * v).sum::<f64>().sqrt()
}

impl MultiplierFamily {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        anchor: f64,
        eval: impl Fn(f64, &[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if dim == 0 || dim > 3 {
            return Err(FracError::InvalidArgument(format!("dimension must be 1..=3, got {dim}")));
        }
        check_order(anchor, dim)?;
        Ok(Self { name: name.into(), dim, anchor, eval: Arc::new(eval) })
    }

    /// `|ξ|^{-α}`.
    pub fn exact(dim: usize, anchor: f64) -> Result<Self> {
        Self::new("riesz", dim, anchor, |a, xi| euclid(xi).powf(-a))
    }

    /// `b^α |ξ|^{-α}`: multiplicative, wrong at the anchor.
    pub fn scaled(base: f64, dim: usize, anchor: f64) -> Result<Self> {
        Self::new(format!("scaled_{base}"), dim, anchor, move |a, xi| base.powf(a) * euclid(xi).powf(-a))
    }

    /// `|ξ|^{-α²}`: right at α = 1, not multiplicative.
    pub fn squared_order(dim: usize, anchor: f64) -> Result<Self> {
        Self::new("squared_order", dim, anchor, |a, xi| euclid(xi).powf(-a * a))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn eval(&self, alpha: f64, xi: &[f64]) -> f64 {
        (self.eval)(alpha, xi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViolatingPair {
    pub alpha: f64,
    pub beta: f64,
    pub xi_norm: f64,
    pub log_violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierCheck {
    pub family: String,
    /// Through-origin fit `ln m(α, ξ) = d(ξ) α`; `max_residual` is the largest
    /// relative deviation `|m - |ξ|^{-α}| / |ξ|^{-α}` over the grid.
    pub fit: FitResult,
    pub max_log_violation: f64,
    pub multiplicative: bool,
    pub violating_pair: Option<ViolatingPair>,
    pub anchor: f64,
    pub anchor_residual: f64,
    pub anchor_pass: bool,
    /// `max_ξ |d(ξ) + ln|ξ||`.
    pub slope_error: f64,
}

/// Checks the restricted Cauchy equation in log scale plus the anchor value.
pub fn multiplier_family_check(
    fam: &MultiplierFamily,
    alpha_grid: &[f64],
    xi_grid: &[Vec<f64>],
) -> Result<MultiplierCheck> {
    let n = fam.dim() as f64;
    if alpha_grid.len() < 3 {
        return Err(FracError::InvalidArgument("need at least three orders".into()));
    }
    for &a in alpha_grid {
        check_order(a, fam.dim())?;
    }
    if !alpha_grid.iter().any(|a| (a - fam.anchor()).abs() <= 1e-12) {
        return Err(FracError::InvalidArgument(format!("anchor {} is not on the order grid", fam.anchor())));
    }
    let pairs: Vec<(f64, f64)> = alpha_grid
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| alpha_grid[i..].iter().map(move |&b| (a, b)))
        .filter(|(a, b)| a + b < n)
        .collect();
    if pairs.is_empty() {
        return Err(FracError::InvalidArgument(format!("every order pair sums to at least {n}")));
    }
    if xi_grid.is_empty() {
        return Err(FracError::InvalidArgument("frequency grid is empty".into()));
    }

    let value = |a: f64, xi: &[f64]| -> Result<f64> {
        let v = fam.eval(a, xi);
        if !(v > 0.0) || !v.is_finite() {
            return Err(FracError::NonPositive { index: 0, value: v });
        }
        Ok(v)
    };

    let mut slopes = Vec::with_capacity(xi_grid.len());
    let mut max_residual: f64 = 0.0;
    let mut max_log_violation: f64 = 0.0;
    let mut violating_pair = None;
    let mut anchor_residual: f64 = 0.0;
    let mut slope_error: f64 = 0.0;
    for xi in xi_grid {
        if xi.len() != fam.dim() {
            return Err(FracError::DimensionMismatch { expected: fam.dim(), found: xi.len() });
        }
        let r = euclid(xi);
        if r == 0.0 {
            return Err(FracError::InvalidArgument("zero frequency in the grid".into()));
        }
        for &(a, b) in &pairs {
            let v = (value(a + b, xi)?.ln() - value(a, xi)?.ln() - value(b, xi)?.ln()).abs();
            if v > max_log_violation {
                max_log_violation = v;
                if v > MULTIPLIER_TOL {
                    violating_pair = Some(ViolatingPair { alpha: a, beta: b, xi_norm: r, log_violation: v });
                }
            }
        }
        let (mut num, mut den) = (0.0, 0.0);
        for &a in alpha_grid {
            let m = value(a, xi)?;
            num += a * m.ln();
            den += a * a;
            let target = r.powf(-a);
            max_residual = max_residual.max((m - target).abs() / target);
        }
        let d = num / den;
        slope_error = slope_error.max((d + r.ln()).abs());
        slopes.push(vec![d]);
        let target = r.powf(-fam.anchor());
        anchor_residual = anchor_residual.max((value(fam.anchor(), xi)? - target).abs() / target);
    }
    Ok(MultiplierCheck {
        family: fam.name().to_string(),
        fit: FitResult {
            intercept: vec![0.0; xi_grid.len()],
            slope: slopes,
            max_residual,
            condition_number: 1.0,
        },
        max_log_violation,
        multiplicative: max_log_violation <= MULTIPLIER_TOL,
        violating_pair,
        anchor: fam.anchor(),
        anchor_residual,
        anchor_pass: anchor_residual <= MULTIPLIER_TOL,
        slope_error,
    })
}

/// `ln m(α, ξ) / α`, the slope a single order near the upper end pins down.
pub fn single_order_slope(fam: &MultiplierFamily, alpha: f64, xi: &[f64]) -> f64 {
    fam.eval(alpha, xi).ln() / alpha
}
