use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};
use crate::family::OperatorFamily;
use crate::grid::{BoxGridND, SampledFunction1D, SampledFunctionND, UniformGrid1D};
use crate::rl_nd::{rl_integral_nd, MultiOrder};

use super::laplace::{
    corrected_trapezoid, kernel_laplace_transform, laplace_transform, real_samples, GrowthBound,
};

/// Order or transform-point coordinates: scalars in 1D, tuples in nD.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridPoints {
    Scalars(Vec<f64>),
    Vectors(Vec<Vec<f64>>),
}

impl GridPoints {
    pub fn len(&self) -> usize {
        match self {
            GridPoints::Scalars(v) => v.len(),
            GridPoints::Vectors(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            GridPoints::Scalars(_) => 1,
            GridPoints::Vectors(v) => v.first().map_or(0, |p| p.len()),
        }
    }

    pub fn point(&self, i: usize) -> Vec<f64> {
        match self {
            GridPoints::Scalars(v) => vec![v[i]],
            GridPoints::Vectors(v) => v[i].clone(),
        }
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub t_big: f64,
    pub n: usize,
    pub source: String,
    /// Row-major like `entries`; `None` where no growth bound was available.
    pub tail_bounds: Vec<Option<f64>>,
}

/// `R[α, x]` on a grid of orders × transform points, stored row-major with
/// the order index outermost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformTable {
    pub order_grid: GridPoints,
    pub x_grid: GridPoints,
    pub entries: Vec<f64>,
    pub meta: TableMeta,
}

fn check_increasing_positive(label: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(FracError::InvalidArgument(format!("{label} grid is empty")));
    }
    if v.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
        return Err(FracError::InvalidArgument(format!("{label} grid must be positive")));
    }
    if v.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(FracError::InvalidArgument(format!("{label} grid must be strictly increasing")));
    }
    Ok(())
}

fn fmt_point(p: &[f64]) -> String {
    if p.len() == 1 {
        format!("{}", p[0])
    } else {
        format!("{p:?}")
    }
}

impl TransformTable {
    pub fn new(
        order_grid: GridPoints,
        x_grid: GridPoints,
        entries: Vec<f64>,
        meta: TableMeta,
    ) -> Result<Self> {
        let table = Self { order_grid, x_grid, entries, meta };
        table.validate()?;
        Ok(table)
    }

    pub fn validate(&self) -> Result<()> {
        if self.order_grid.is_empty() || self.x_grid.is_empty() {
            return Err(FracError::InvalidArgument("table grids must be nonempty".into()));
        }
        if let (GridPoints::Scalars(a), GridPoints::Scalars(x)) = (&self.order_grid, &self.x_grid) {
            check_increasing_positive("order", a)?;
            check_increasing_positive("x", x)?;
        }
        if let GridPoints::Vectors(xs) = &self.x_grid {
            if xs.iter().flatten().any(|c| !(*c > 0.0)) {
                return Err(FracError::InvalidArgument("x tuples must be positive".into()));
            }
        }
        if self.entries.len() != self.order_grid.len() * self.x_grid.len() {
            return Err(FracError::InvalidArgument(format!(
                "{} entries for a {}x{} table",
                self.entries.len(),
                self.order_grid.len(),
                self.x_grid.len()
            )));
        }
        for i in 0..self.order_grid.len() {
            for j in 0..self.x_grid.len() {
                let value = self.entry(i, j);
                if !(value > 0.0) || !value.is_finite() {
                    return Err(FracError::NonPositiveEntry {
                        alpha: fmt_point(&self.order_grid.point(i)),
                        x: fmt_point(&self.x_grid.point(j)),
                        value,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn entry(&self, order_index: usize, x_index: usize) -> f64 {
        self.entries[order_index * self.x_grid.len() + x_index]
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let table: Self = serde_json::from_str(text)?;
        table.validate()?;
        Ok(table)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

// p and c from two far nodes; exact when the samples are a pure power law
fn estimated_growth(values: &[f64], grid: &UniformGrid1D) -> Option<GrowthBound> {
    let n = grid.intervals();
    let (far, mid) = (values[n], values[n / 2]);
    if !(far > 0.0 && mid > 0.0) {
        return None;
    }
    let p = (far / mid).ln() / (grid.node(n) / grid.node(n / 2)).ln();
    let c = far / grid.end().powf(p);
    GrowthBound::new(c, p.max(0.0)).ok()
}

type TableCell = (f64, Option<f64>);

/// `R[α, x] = L[J^α 1](x)` for a 1D family on `[0, T_big]` with `n` cells.
pub fn semigroup_table(
    family: &dyn OperatorFamily,
    order_grid: &[f64],
    x_grid: &[f64],
    t_big: f64,
    n: usize,
) -> Result<TransformTable> {
    check_increasing_positive("order", order_grid)?;
    check_increasing_positive("x", x_grid)?;
    let grid = UniformGrid1D::new(0.0, t_big, n)?;
    let one = SampledFunction1D::constant(grid, 1.0);
    let rows: Vec<Result<Vec<TableCell>>> = order_grid
        .par_iter()
        .map(|&alpha| {
            let out = family.apply(alpha, &one)?;
            let growth = estimated_growth(&real_samples(&out)?, &grid);
            x_grid
                .iter()
                .map(|&x| {
                    let v = laplace_transform(&out, x, growth)?;
                    Ok((v.value, v.tail_bound))
                })
                .collect()
        })
        .collect();
    let mut entries = Vec::with_capacity(order_grid.len() * x_grid.len());
    let mut tail_bounds = Vec::with_capacity(entries.capacity());
    for row in rows {
        for (value, tail) in row? {
            entries.push(value);
            tail_bounds.push(tail);
        }
    }
    TransformTable::new(
        GridPoints::Scalars(order_grid.to_vec()),
        GridPoints::Scalars(x_grid.to_vec()),
        entries,
        TableMeta { t_big, n, source: format!("family:{}", family.name()), tail_bounds },
    )
}

/// `R[α, x] = L[K_α](x)` built on the kernels directly.
pub fn kernel_table(order_grid: &[f64], x_grid: &[f64], t_big: f64, n: usize) -> Result<TransformTable> {
    check_increasing_positive("order", order_grid)?;
    check_increasing_positive("x", x_grid)?;
    let mut entries = Vec::new();
    let mut tail_bounds = Vec::new();
    for &alpha in order_grid {
        for &x in x_grid {
            let v = kernel_laplace_transform(alpha, x, t_big, n)?;
            entries.push(v.value);
            tail_bounds.push(v.tail_bound);
        }
    }
    TransformTable::new(
        GridPoints::Scalars(order_grid.to_vec()),
        GridPoints::Scalars(x_grid.to_vec()),
        entries,
        TableMeta { t_big, n, source: "kernel".into(), tail_bounds },
    )
}

/// Transform of a sampled box function, one axis at a time.
pub fn laplace_transform_nd(f: &SampledFunctionND, x: &[f64]) -> Result<f64> {
    let grid = f.grid();
    if x.len() != grid.dim() {
        return Err(FracError::DimensionMismatch { expected: grid.dim(), found: x.len() });
    }
    if grid.axes().iter().any(|g| g.start() != 0.0) {
        return Err(FracError::InvalidGrid("Laplace samples must start at 0".into()));
    }
    if x.iter().any(|v| !(*v > 0.0)) {
        return Err(FracError::InvalidArgument("transform point must be positive".into()));
    }
    let mut data: Vec<f64> = f.values().iter().map(|v| v.re).collect();
    // reduce the last axis repeatedly
    for axis in (0..grid.dim()).rev() {
        let len = grid.axis(axis).len();
        let h = grid.axis(axis).step();
        data = data.chunks(len).map(|pencil| corrected_trapezoid(pencil, h, x[axis])).collect();
    }
    Ok(data[0])
}

/// nD table for `J^α 1 = rl_integral_nd(α, 1)` on `[0, T_big]^n`.
pub fn semigroup_table_nd(
    orders: &[MultiOrder],
    x_points: &[Vec<f64>],
    t_big: f64,
    n_per_axis: usize,
) -> Result<TransformTable> {
    let dim = orders.first().map(|o| o.dim()).ok_or_else(|| {
        FracError::InvalidArgument("order set is empty".into())
    })?;
    if orders.iter().any(|o| o.dim() != dim) || x_points.iter().any(|x| x.len() != dim) {
        return Err(FracError::InvalidArgument("mixed dimensions in nD table".into()));
    }
    let grid = BoxGridND::cube(dim, 0.0, t_big, n_per_axis)?;
    let one = SampledFunctionND::constant(grid, 1.0);
    let mut entries = Vec::new();
    for alpha in orders {
        let out = rl_integral_nd(alpha, &one)?;
        for x in x_points {
            entries.push(laplace_transform_nd(&out, x)?);
        }
    }
    let tail_bounds = vec![None; entries.len()];
    TransformTable::new(
        GridPoints::Vectors(orders.iter().map(|o| o.components().to_vec()).collect()),
        GridPoints::Vectors(x_points.to_vec()),
        entries,
        TableMeta { t_big, n: n_per_axis, source: "riemann_liouville_nd".into(), tail_bounds },
    )
}
