//! Multidimensional Riemann–Liouville integrals as tensorized 1D sweeps, and
//! box-truncated convolutions.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{FracError, Result};
use crate::grid::{BoxGridND, SampledFunctionND};
use crate::rl::ProductWeights;

/// Per-axis orders; a zero component leaves that axis untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiOrder(Vec<f64>);

impl MultiOrder {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() || components.len() > BoxGridND::MAX_DIM {
            return Err(FracError::InvalidArgument(format!(
                "multi-order dimension must be 1..=3, got {}",
                components.len()
            )));
        }
        if let Some(&bad) = components.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
            return Err(FracError::InvalidOrder(bad));
        }
        Ok(Self(components))
    }

    /// The canonical vector `e_i` (zero-based axis).
    pub fn unit(dim: usize, axis: usize) -> Result<Self> {
        let mut c = vec![0.0; dim];
        if axis >= dim {
            return Err(FracError::InvalidArgument(format!("axis {axis} out of range")));
        }
        c[axis] = 1.0;
        Self::new(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(FracError::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Self::new(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// `J^α f`, sweeping axes in natural order.
pub fn rl_integral_nd(alpha: &MultiOrder, f: &SampledFunctionND) -> Result<SampledFunctionND> {
    let order: Vec<usize> = (0..alpha.dim()).collect();
    rl_integral_nd_axis_order(alpha, f, &order)
}

/// `J^α f` with an explicit axis application order (a permutation).
pub fn rl_integral_nd_axis_order(
    alpha: &MultiOrder,
    f: &SampledFunctionND,
    axis_order: &[usize],
) -> Result<SampledFunctionND> {
    let grid = f.grid();
    if alpha.dim() != grid.dim() {
        return Err(FracError::DimensionMismatch { expected: grid.dim(), found: alpha.dim() });
    }
    let mut seen = vec![false; grid.dim()];
    if axis_order.len() != grid.dim()
        || axis_order.iter().any(|&j| j >= grid.dim() || std::mem::replace(&mut seen[j], true))
    {
        return Err(FracError::InvalidArgument(format!("{axis_order:?} is not an axis permutation")));
    }
    let mut out = f.clone();
    for &axis in axis_order {
        let order = alpha.components()[axis];
        if order == 0.0 {
            continue;
        }
        sweep_axis(&mut out, axis, order)?;
    }
    Ok(out)
}

fn sweep_axis(f: &mut SampledFunctionND, axis: usize, order: f64) -> Result<()> {
    let grid = f.grid().clone();
    let weights = ProductWeights::new(order, grid.axis(axis))?;
    let stride = grid.strides()[axis];
    let len = grid.axis(axis).len();
    let starts = grid.pencil_starts(axis);
    let values = f.values();
    let swept: Vec<(usize, Vec<Complex64>)> = starts
        .par_iter()
        .map(|&s| {
            let pencil: Vec<Complex64> = (0..len).map(|i| values[s + i * stride]).collect();
            (s, weights.apply(&pencil))
        })
        .collect();
    let dst = f.values_mut();
    for (s, pencil) in swept {
        for (i, v) in pencil.into_iter().enumerate() {
            dst[s + i * stride] = v;
        }
    }
    Ok(())
}

// extents padded to three axes, with per-axis steps (padding axes have step 1)
fn padded(grid: &BoxGridND) -> ([usize; 3], [f64; 3], [bool; 3]) {
    let mut ext = [1usize; 3];
    let mut step = [1.0; 3];
    let mut real = [false; 3];
    for (j, g) in grid.axes().iter().enumerate() {
        ext[j] = g.len();
        step[j] = g.step();
        real[j] = true;
    }
    (ext, step, real)
}

/// `(R_h f)(t) = ∫_{[0,t]} h(s) f(t - s) ds` with tensor trapezoid weights.
pub fn truncated_convolution(
    h: &SampledFunctionND,
    f: &SampledFunctionND,
) -> Result<SampledFunctionND> {
    let grid = f.grid();
    if h.grid() != grid {
        return Err(FracError::GridMismatch("kernel and function grids differ".into()));
    }
    if let Some(g) = grid.axes().iter().find(|g| g.start() != 0.0) {
        return Err(FracError::InvalidGrid(format!(
            "truncated convolution needs left corner 0, found {}",
            g.start()
        )));
    }
    let (ext, step, real) = padded(grid);
    let hv = h.values();
    let fv = f.values();
    let at = |i: usize, j: usize, k: usize| (i * ext[1] + j) * ext[2] + k;
    // trapezoid weight of index `j` within [0, t_k] on one axis
    let weight = |axis: usize, j: usize, k: usize| -> f64 {
        if !real[axis] {
            1.0
        } else if j == 0 || j == k {
            0.5 * step[axis]
        } else {
            step[axis]
        }
    };
    let values: Vec<Complex64> = (0..grid.len())
        .into_par_iter()
        .map(|flat| {
            let k2 = flat % ext[2];
            let k1 = (flat / ext[2]) % ext[1];
            let k0 = flat / (ext[1] * ext[2]);
            if (real[0] && k0 == 0) || (real[1] && k1 == 0) || (real[2] && k2 == 0) {
                return Complex64::new(0.0, 0.0);
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for j0 in 0..=k0 {
                let w0 = weight(0, j0, k0);
                for j1 in 0..=k1 {
                    let w01 = w0 * weight(1, j1, k1);
                    for j2 in 0..=k2 {
                        let w = w01 * weight(2, j2, k2);
                        acc += hv[at(j0, j1, j2)] * fv[at(k0 - j0, k1 - j1, k2 - j2)] * w;
                    }
                }
            }
            acc
        })
        .collect();
    SampledFunctionND::from_values(grid.clone(), values)
}

/// L¹ distance between `J^α (h * f)` and `h * (J^α f)`.
pub fn commutation_residual(
    alpha: &MultiOrder,
    h: &SampledFunctionND,
    f: &SampledFunctionND,
) -> Result<f64> {
    let lhs = rl_integral_nd(alpha, &truncated_convolution(h, f)?)?;
    let rhs = truncated_convolution(h, &rl_integral_nd(alpha, f)?)?;
    lhs.l1_distance(&rhs)
}
