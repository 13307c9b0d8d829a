//! Additive functions on a rational grid of `(0, n)` and their doubling
//! extension to `(0, 2^m n)`.
//!
//! Grid points are `k q` with `q = num/den` kept as an integer pair, so sums of
//! grid points are exact index sums.

use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};

pub const ADDITIVITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditiveSamples {
    bound: f64,
    step_num: u64,
    step_den: u64,
    /// `values[k - 1] = h(k q)` for every `k >= 1` with `k q < bound`.
    values: Vec<f64>,
}

// number of k >= 1 with k * num / den < bound
fn count_below(bound: f64, num: u64, den: u64) -> usize {
    let ratio = bound * den as f64 / num as f64;
    let nearest = ratio.round();
    if (ratio - nearest).abs() <= 1e-9 * ratio.max(1.0) {
        (nearest as usize).saturating_sub(1)
    } else {
        ratio.floor() as usize
    }
}

impl AdditiveSamples {
    pub fn new(bound: f64, step_num: u64, step_den: u64, values: Vec<f64>) -> Result<Self> {
        if !(bound > 0.0) || !bound.is_finite() {
            return Err(FracError::InvalidArgument(format!("domain bound must be positive, got {bound}")));
        }
        if step_num == 0 || step_den == 0 {
            return Err(FracError::InvalidArgument("grid step must be a positive rational".into()));
        }
        let expected = count_below(bound, step_num, step_den);
        if values.len() != expected {
            return Err(FracError::InvalidArgument(format!(
                "{} samples supplied, {} grid points lie in (0, {bound})",
                values.len(),
                expected
            )));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(FracError::NonFinite { index: index + 1, value: values[index] });
        }
        let g = gcd(step_num, step_den);
        Ok(Self { bound, step_num: step_num / g, step_den: step_den / g, values })
    }

    pub fn from_fn(bound: f64, step_num: u64, step_den: u64, h: impl Fn(f64) -> f64) -> Result<Self> {
        let count = count_below(bound, step_num, step_den);
        let values = (1..=count).map(|k| h(k as f64 * step_num as f64 / step_den as f64)).collect();
        Self::new(bound, step_num, step_den, values)
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn step(&self) -> (u64, u64) {
        (self.step_num, self.step_den)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn point(&self, k: usize) -> f64 {
        k as f64 * self.step_num as f64 / self.step_den as f64
    }

    fn label(&self, k: usize) -> String {
        let (num, den) = (k as u64 * self.step_num, self.step_den);
        let g = gcd(num, den);
        if den / g == 1 {
            format!("{}", num / g)
        } else {
            format!("{}/{}", num / g, den / g)
        }
    }

    /// `h(k q)` for `1 <= k <= len()`.
    pub fn value(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Every `(i, j)` with `i + j` on the grid satisfies `h(i+j) = h(i) + h(j)`.
    pub fn check_additive(&self, tol: f64) -> Result<()> {
        let count = self.len();
        for i in 1..=count / 2 {
            for j in i..=count - i {
                let sum = self.value(i + j);
                let parts = self.value(i) + self.value(j);
                if (sum - parts).abs() > tol {
                    return Err(FracError::NotAdditive {
                        x: self.label(i),
                        y: self.label(j),
                        sum: self.label(i + j),
                        h_sum: sum,
                        h_parts: parts,
                    });
                }
            }
        }
        Ok(())
    }

    /// Least-squares slope through the origin and the largest deviation from it.
    pub fn linear_fit(&self) -> (f64, f64) {
        let (mut sxy, mut sxx) = (0.0, 0.0);
        for k in 1..=self.len() {
            let x = self.point(k);
            sxy += x * self.value(k);
            sxx += x * x;
        }
        let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        let dev = (1..=self.len())
            .map(|k| (self.value(k) - slope * self.point(k)).abs())
            .fold(0.0, f64::max);
        (slope, dev)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

// up to three distinct splits k = i + (k - i), preferring summands from the
// pre-doubling domain
fn decompositions(k: usize, original: usize) -> Vec<usize> {
    let half = k / 2;
    let lo = k.saturating_sub(original).max(1);
    let mut picks = Vec::new();
    if lo <= half {
        let span = half - lo;
        for c in [lo, lo + span / 2, half] {
            if !picks.contains(&c) {
                picks.push(c);
            }
        }
    }
    let mut extra = 1;
    while picks.len() < 3 && extra <= half {
        if !picks.contains(&extra) {
            picks.push(extra);
        }
        extra += 1;
    }
    picks
}

/// Extends `h` from `(0, n)` to `(0, 2^doublings n)` by `h(η) = h(α) + h(β)`.
pub fn extend_additive(h: &AdditiveSamples, doublings: u32) -> Result<AdditiveSamples> {
    if doublings == 0 {
        return Err(FracError::InvalidArgument("doublings must be positive".into()));
    }
    h.check_additive(ADDITIVITY_TOL)?;
    let mut current = h.clone();
    for _ in 0..doublings {
        let bound = 2.0 * current.bound;
        let target = count_below(bound, current.step_num, current.step_den);
        let original = current.len();
        let mut values = current.values.clone();
        for k in original + 1..=target {
            let estimates: Vec<f64> = decompositions(k, original)
                .into_iter()
                .map(|i| values[i - 1] + values[k - i - 1])
                .collect();
            let hi = estimates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = estimates.iter().copied().fold(f64::INFINITY, f64::min);
            if hi - lo > ADDITIVITY_TOL {
                return Err(FracError::IllPosedExtension { point: current.label(k), spread: hi - lo });
            }
            values.push(estimates[0]);
        }
        current = AdditiveSamples::new(bound, current.step_num, current.step_den, values)?;
    }
    Ok(current)
}
