//! Least-squares fits of `ln R[α, x] = c(x) + d(x)·α`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};

use super::table::TransformTable;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// `c(x)` per transform point.
    pub intercept: Vec<f64>,
    /// `d(x)` per transform point; one component per order dimension.
    pub slope: Vec<Vec<f64>>,
    /// Largest `|ln R - c - d·α|` over the table.
    pub max_residual: f64,
    /// Condition number of the normal equations.
    pub condition_number: f64,
}

impl FitResult {
    /// Scalar slopes of a 1D fit.
    pub fn slopes_1d(&self) -> Vec<f64> {
        self.slope.iter().map(|d| d[0]).collect()
    }
}

/// 1D affine fit; needs at least two distinct orders.
pub fn fit_affine(table: &TransformTable) -> Result<FitResult> {
    if table.order_grid.dim() != 1 {
        return Err(FracError::DimensionMismatch { expected: 1, found: table.order_grid.dim() });
    }
    let orders: Vec<f64> = table.order_grid.points().into_iter().map(|p| p[0]).collect();
    let mut distinct = orders.clone();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(FracError::DegenerateOrders(format!(
            "{} distinct order(s); an affine fit needs two",
            distinct.len()
        )));
    }
    fit_design(table)
}

/// nD affine fit; the orders must span `R^n` affinely.
pub fn fit_affine_nd(table: &TransformTable) -> Result<FitResult> {
    fit_design(table)
}

fn fit_design(table: &TransformTable) -> Result<FitResult> {
    table.validate()?;
    let orders = table.order_grid.points();
    let dim = table.order_grid.dim();
    let rows = orders.len();
    let design = DMatrix::from_fn(rows, dim + 1, |i, j| if j == 0 { 1.0 } else { orders[i][j - 1] });

    let svd = design.clone().svd(false, false);
    let sigma_max = svd.singular_values.max();
    let rank = svd.singular_values.iter().filter(|s| **s > 1e-10 * sigma_max).count();
    if rank < dim + 1 {
        return Err(FracError::DegenerateOrders(format!(
            "design rank {rank}, need {} (orders must be affinely independent)",
            dim + 1
        )));
    }
    let sigma_min = svd.singular_values.min();
    let condition_number = (sigma_max / sigma_min).powi(2);

    let normal = design.transpose() * &design;
    let chol = normal
        .cholesky()
        .ok_or_else(|| FracError::DegenerateOrders("normal equations not positive definite".into()))?;

    let mut intercept = Vec::with_capacity(table.x_grid.len());
    let mut slope = Vec::with_capacity(table.x_grid.len());
    let mut max_residual: f64 = 0.0;
    for xj in 0..table.x_grid.len() {
        let logs = DVector::from_fn(rows, |i, _| table.entry(i, xj).ln());
        let coef = chol.solve(&(design.transpose() * &logs));
        let fitted = &design * &coef;
        let worst = (logs - fitted).amax();
        max_residual = max_residual.max(worst);
        intercept.push(coef[0]);
        slope.push(coef.iter().skip(1).copied().collect());
    }
    Ok(FitResult { intercept, slope, max_residual, condition_number })
}
