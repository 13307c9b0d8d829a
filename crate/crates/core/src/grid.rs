//! Uniform node-inclusive grids and the sampled functions that live on them.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};

/// Nodes `a + k h`, `k = 0..=n`, with `h = (end - a) / n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid1D {
    a: f64,
    end: f64,
    n: usize,
}

impl UniformGrid1D {
    pub fn new(a: f64, end: f64, n: usize) -> Result<Self> {
        if !a.is_finite() || !end.is_finite() {
            return Err(FracError::InvalidGrid(format!("non-finite endpoints [{a}, {end}]")));
        }
        if !(a < end) {
            return Err(FracError::InvalidGrid(format!("need a < T, got [{a}, {end}]")));
        }
        if n == 0 {
            return Err(FracError::InvalidGrid("subinterval count must be positive".into()));
        }
        let grid = Self { a, end, n };
        if !(grid.step() > 0.0) {
            return Err(FracError::InvalidGrid("step underflows to zero".into()));
        }
        Ok(grid)
    }

    pub fn start(&self) -> f64 {
        self.a
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    /// Number of subintervals.
    pub fn intervals(&self) -> usize {
        self.n
    }

    /// Number of nodes, `n + 1`.
    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.end - self.a) / self.n as f64
    }

    pub fn length(&self) -> f64 {
        self.end - self.a
    }

    pub fn node(&self, k: usize) -> f64 {
        if k == self.n {
            self.end
        } else {
            self.a + k as f64 * self.step()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(move |k| self.node(k))
    }

    /// The same subdivision translated so that it starts at `origin`.
    pub fn translated_to(&self, origin: f64) -> Result<Self> {
        Self::new(origin, origin + (self.end - self.a), self.n)
    }

    /// Composite trapezoid weights for the whole grid.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let h = self.step();
        let mut w = vec![h; self.len()];
        w[0] = 0.5 * h;
        w[self.n] = 0.5 * h;
        w
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(FracError::GridMismatch(format!(
                "[{}, {}]/{} vs [{}, {}]/{}",
                self.a, self.end, self.n, other.a, other.end, other.n
            )));
        }
        Ok(())
    }
}

/// Complex node values on a [`UniformGrid1D`]; real functions carry zero
/// imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction1D {
    grid: UniformGrid1D,
    values: Vec<Complex64>,
}

impl SampledFunction1D {
    /// Evaluates `f` at every node.
    pub fn sample(grid: UniformGrid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid
            .nodes()
            .enumerate()
            .map(|(index, t)| {
                let value = f(t);
                if value.is_finite() {
                    Ok(Complex64::new(value, 0.0))
                } else {
                    Err(FracError::NonFinite { index, value })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, values })
    }

    pub fn sample_complex(grid: UniformGrid1D, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid
            .nodes()
            .enumerate()
            .map(|(index, t)| {
                let value = f(t);
                if value.re.is_finite() && value.im.is_finite() {
                    Ok(value)
                } else {
                    Err(FracError::NonFinite { index, value: if value.re.is_finite() { value.im } else { value.re } })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, values })
    }

    pub fn from_values(grid: UniformGrid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(FracError::GridMismatch(format!(
                "{} values for {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some((index, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(FracError::NonFinite { index, value: if v.re.is_finite() { v.im } else { v.re } });
        }
        Ok(Self { grid, values })
    }

    pub fn from_real(grid: UniformGrid1D, values: Vec<f64>) -> Result<Self> {
        Self::from_values(grid, values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    pub fn constant(grid: UniformGrid1D, c: f64) -> Self {
        Self { grid, values: vec![Complex64::new(c, 0.0); grid.len()] }
    }

    pub fn zeros(grid: UniformGrid1D) -> Self {
        Self::constant(grid, 0.0)
    }

    pub(crate) fn from_parts_unchecked(grid: UniformGrid1D, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &UniformGrid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn value(&self, k: usize) -> Complex64 {
        self.values[k]
    }

    pub fn last(&self) -> Complex64 {
        self.values[self.values.len() - 1]
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    pub fn min_real(&self) -> f64 {
        self.values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min)
    }

    /// Same values on the same subdivision starting at `origin`.
    pub fn translated_to(&self, origin: f64) -> Result<Self> {
        Ok(Self { grid: self.grid.translated_to(origin)?, values: self.values.clone() })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    /// Piecewise-linear interpolation; `t` is clamped to the grid.
    pub fn interpolate(&self, t: f64) -> Complex64 {
        let h = self.grid.step();
        let x = ((t - self.grid.a) / h).clamp(0.0, self.grid.n as f64);
        let j = (x.floor() as usize).min(self.grid.n - 1);
        let frac = x - j as f64;
        if frac == 0.0 {
            return self.values[j];
        }
        self.values[j] * (1.0 - frac) + self.values[j + 1] * frac
    }

    /// Composite trapezoid rule on `|values|`.
    pub fn l1_norm(&self) -> f64 {
        let n = self.grid.n;
        let inner: f64 = self.values[1..n].iter().map(|v| v.norm()).sum();
        self.grid.step() * (0.5 * (self.values[0].norm() + self.values[n].norm()) + inner)
    }

    pub fn l1_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.l1_norm())
    }

    pub fn linf_distance(&self, other: &Self) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Cumulative composite trapezoid integral from the left endpoint.
    ///
    /// The per-node sum is accumulated left to right as
    /// `f_0 + 2 f_1 + ... + 2 f_{k-1} + f_k`, then scaled by `h / 2`.
    pub fn cumulative_trapezoid(&self) -> Self {
        let half_h = 0.5 * self.grid.step();
        let mut out = Vec::with_capacity(self.values.len());
        out.push(Complex64::new(0.0, 0.0));
        let mut acc = self.values[0];
        for k in 1..self.values.len() {
            out.push((acc + self.values[k]) * half_h);
            acc += self.values[k] * 2.0;
        }
        Self { grid: self.grid, values: out }
    }

    /// `t,re,im` rows with round-trip formatting.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "t,re,im")?;
        for (t, v) in self.grid.nodes().zip(&self.values) {
            writeln!(w, "{:?},{:?},{:?}", t, v.re, v.im)?;
        }
        Ok(())
    }
}

/// Free-function forms of the basic reductions.
pub fn l1_norm(f: &SampledFunction1D) -> f64 {
    f.l1_norm()
}

pub fn linf_distance(f: &SampledFunction1D, g: &SampledFunction1D) -> Result<f64> {
    f.linf_distance(g)
}

/// Product of per-axis grids (`1 <= n <= 3`), row-major with the last axis fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxGridND {
    axes: Vec<UniformGrid1D>,
}

impl BoxGridND {
    pub const MAX_DIM: usize = 3;

    pub fn new(axes: Vec<UniformGrid1D>) -> Result<Self> {
        if axes.is_empty() || axes.len() > Self::MAX_DIM {
            return Err(FracError::InvalidGrid(format!(
                "dimension must be 1..=3, got {}",
                axes.len()
            )));
        }
        Ok(Self { axes })
    }

    /// Same interval and resolution on every axis.
    pub fn cube(dim: usize, a: f64, end: f64, n: usize) -> Result<Self> {
        Self::new(vec![UniformGrid1D::new(a, end, n)?; dim])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[UniformGrid1D] {
        &self.axes
    }

    pub fn axis(&self, j: usize) -> &UniformGrid1D {
        &self.axes[j]
    }

    pub fn extents(&self) -> Vec<usize> {
        self.axes.iter().map(|g| g.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|g| g.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn strides(&self) -> Vec<usize> {
        let ext = self.extents();
        let mut strides = vec![1; ext.len()];
        for j in (0..ext.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * ext[j + 1];
        }
        strides
    }

    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        let ext = self.extents();
        let mut idx = vec![0; ext.len()];
        let mut rem = flat;
        for j in (0..ext.len()).rev() {
            idx[j] = rem % ext[j];
            rem /= ext[j];
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(self.strides()).map(|(i, s)| i * s).sum()
    }

    pub fn point(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter().zip(&self.axes).map(|(&k, g)| g.node(k)).collect()
    }

    /// Flat offsets of the first element of every pencil running along `axis`.
    pub fn pencil_starts(&self, axis: usize) -> Vec<usize> {
        let ext = self.extents();
        let stride = self.strides()[axis];
        (0..self.len())
            .filter(|&flat| (flat / stride).is_multiple_of(ext[axis]))
            .collect()
    }

    /// Tensor-product trapezoid weight at a multi-index.
    pub fn trapezoid_weight(&self, idx: &[usize]) -> f64 {
        idx.iter()
            .zip(&self.axes)
            .map(|(&k, g)| {
                let h = g.step();
                if k == 0 || k == g.intervals() {
                    0.5 * h
                } else {
                    h
                }
            })
            .product()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunctionND {
    grid: BoxGridND,
    values: Vec<Complex64>,
}

impl SampledFunctionND {
    pub fn sample(grid: BoxGridND, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let values = (0..grid.len())
            .map(|flat| {
                let p = grid.point(&grid.multi_index(flat));
                let value = f(&p);
                if value.is_finite() {
                    Ok(Complex64::new(value, 0.0))
                } else {
                    Err(FracError::NonFinite { index: flat, value })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, values })
    }

    pub fn from_values(grid: BoxGridND, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(FracError::GridMismatch(format!(
                "{} values for {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: BoxGridND, c: f64) -> Self {
        let len = grid.len();
        Self { grid, values: vec![Complex64::new(c, 0.0); len] }
    }

    pub fn grid(&self) -> &BoxGridND {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn at(&self, idx: &[usize]) -> Complex64 {
        self.values[self.grid.flat_index(idx)]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(FracError::GridMismatch("box grids differ".into()));
        }
        Ok(())
    }

    pub fn l1_norm(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(flat, v)| self.grid.trapezoid_weight(&self.grid.multi_index(flat)) * v.norm())
            .sum()
    }

    pub fn l1_distance(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(flat, (a, b))| {
                self.grid.trapezoid_weight(&self.grid.multi_index(flat)) * (a - b).norm()
            })
            .sum())
    }

    pub fn linf_distance(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Header `extents,<e_1>,...,<e_n>` followed by `t_1,...,t_n,re,im` rows in
    /// row-major order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let ext: Vec<String> = self.grid.extents().iter().map(|e| e.to_string()).collect();
        writeln!(w, "extents,{}", ext.join(","))?;
        let cols: Vec<String> = (1..=self.grid.dim()).map(|j| format!("t_{j}")).collect();
        writeln!(w, "{},re,im", cols.join(","))?;
        for (flat, v) in self.values.iter().enumerate() {
            let p = self.grid.point(&self.grid.multi_index(flat));
            let coords: Vec<String> = p.iter().map(|t| format!("{t:?}")).collect();
            writeln!(w, "{},{:?},{:?}", coords.join(","), v.re, v.im)?;
        }
        Ok(())
    }
}
