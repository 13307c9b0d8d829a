//! Riemann–Liouville integrals with respect to strictly increasing,
//! possibly discontinuous integrators `φ`, by direct quadrature on the image
//! of `φ` and by conjugating the ordinary integral with composition operators.
//!
//! Measures are pushforwards of Lebesgue measure, so jump points carry no
//! mass. At a jump the integrator takes its right limit.

use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};
use crate::family::{AxiomProfile, OperatorFamily};
use crate::grid::{SampledFunction1D, UniformGrid1D};
use crate::rl::{rl_integral_shifted, FractionalOrder};
use crate::special::gamma;

const MONOTONICITY_SAMPLES: usize = 4096;
const JUMP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentKind {
    /// `Σ c_i s^i`.
    Poly,
    /// `c_0 + c_1 e^{c_2 s}`.
    Exp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentSpec {
    pub interval: [f64; 2],
    pub kind: SegmentKind,
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpSpec {
    pub at: f64,
    pub size: f64,
}

/// The JSON form of an integrator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegratorSpec {
    pub domain: [f64; 2],
    pub segments: Vec<SegmentSpec>,
    #[serde(default)]
    pub jumps: Vec<JumpSpec>,
}

#[derive(Debug, Clone, PartialEq)]
struct Piece {
    lo: f64,
    hi: f64,
    kind: SegmentKind,
    coefficients: Vec<f64>,
    image_lo: f64,
    image_hi: f64,
}

impl Piece {
    fn eval(&self, s: f64) -> f64 {
        let c = &self.coefficients;
        match self.kind {
            SegmentKind::Poly => c.iter().rev().fold(0.0, |acc, &ci| acc * s + ci),
            SegmentKind::Exp => c[0] + c[1] * (c[2] * s).exp(),
        }
    }

    fn derivative(&self, s: f64) -> f64 {
        let c = &self.coefficients;
        match self.kind {
            SegmentKind::Poly => c
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (i, &ci)| acc * s + i as f64 * ci),
            SegmentKind::Exp => c[1] * c[2] * (c[2] * s).exp(),
        }
    }

    fn inverse(&self, u: f64) -> f64 {
        if u <= self.image_lo {
            return self.lo;
        }
        if u >= self.image_hi {
            return self.hi;
        }
        let c = &self.coefficients;
        if self.kind == SegmentKind::Exp {
            let s = ((u - c[0]) / c[1]).ln() / c[2];
            return s.clamp(self.lo, self.hi);
        }
        let (mut lo, mut hi) = (self.lo, self.hi);
        let mut s = lo + (hi - lo) * (u - self.image_lo) / (self.image_hi - self.image_lo);
        for _ in 0..200 {
            let r = self.eval(s) - u;
            if r == 0.0 {
                return s;
            }
            if r < 0.0 {
                lo = s;
            } else {
                hi = s;
            }
            let d = self.derivative(s);
            let newton = s - r / d;
            s = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if hi - lo <= f64::EPSILON * hi.abs().max(lo.abs()).max(1.0) {
                break;
            }
        }
        s
    }
}

/// Finite union of disjoint closed intervals, in increasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageSet {
    pub intervals: Vec<[f64; 2]>,
}

impl ImageSet {
    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|[l, r]| r - l).sum()
    }

    pub fn contains(&self, u: f64) -> bool {
        self.intervals.iter().any(|[l, r]| *l <= u && u <= *r)
    }
}

/// A strictly increasing, piecewise-smooth function on `[a, T]` with finitely
/// many positive jumps.
#[derive(Debug, Clone, PartialEq)]
pub struct Integrator {
    a: f64,
    end: f64,
    pieces: Vec<Piece>,
    jumps: Vec<JumpSpec>,
}

impl Integrator {
    pub fn from_spec(spec: &IntegratorSpec) -> Result<Self> {
        let bad = |msg: String| FracError::InvalidIntegrator(msg);
        let [a, end] = spec.domain;
        if !(a.is_finite() && end.is_finite() && a < end) {
            return Err(bad(format!("domain [{a}, {end}] is not a proper interval")));
        }
        if spec.segments.is_empty() {
            return Err(bad("no segments".into()));
        }
        let scale = (end - a).max(a.abs()).max(end.abs());
        let mut pieces: Vec<Piece> = Vec::with_capacity(spec.segments.len());
        for (i, seg) in spec.segments.iter().enumerate() {
            let [lo, hi] = seg.interval;
            if !(lo < hi) {
                return Err(bad(format!("segment {i} has empty interval [{lo}, {hi}]")));
            }
            let expected_lo = pieces.last().map_or(a, |p| p.hi);
            if lo != expected_lo {
                return Err(bad(format!("segment {i} starts at {lo}, expected {expected_lo}")));
            }
            match seg.kind {
                SegmentKind::Poly if seg.coefficients.is_empty() => {
                    return Err(bad(format!("segment {i}: polynomial without coefficients")));
                }
                SegmentKind::Exp if seg.coefficients.len() != 3 => {
                    return Err(bad(format!("segment {i}: exponential pieces take 3 coefficients")));
                }
                _ => {}
            }
            if seg.coefficients.iter().any(|c| !c.is_finite()) {
                return Err(bad(format!("segment {i}: non-finite coefficient")));
            }
            let mut piece = Piece {
                lo,
                hi,
                kind: seg.kind,
                coefficients: seg.coefficients.clone(),
                image_lo: 0.0,
                image_hi: 0.0,
            };
            piece.image_lo = piece.eval(lo);
            piece.image_hi = piece.eval(hi);
            check_increasing(&piece).map_err(|m| bad(format!("segment {i}: {m}")))?;
            pieces.push(piece);
        }
        let last = pieces.last().map(|p| p.hi).unwrap_or(a);
        if last != end {
            return Err(bad(format!("segments end at {last}, domain ends at {end}")));
        }

        let mut jumps = spec.jumps.clone();
        jumps.sort_by(|x, y| x.at.total_cmp(&y.at));
        for j in &jumps {
            if !(j.at > a && j.at < end) {
                return Err(bad(format!("jump at {} is not interior to the domain", j.at)));
            }
            if !(j.size > 0.0) || !j.size.is_finite() {
                return Err(bad(format!("jump at {} has nonpositive size {}", j.at, j.size)));
            }
            if !pieces.iter().skip(1).any(|p| p.lo == j.at) {
                return Err(bad(format!("jump at {} is not a segment boundary", j.at)));
            }
        }
        for w in pieces.windows(2) {
            let (left, right) = (&w[0], &w[1]);
            let gap = right.image_lo - left.image_hi;
            let tol = JUMP_TOL * scale.max(left.image_hi.abs()).max(1.0);
            match jumps.iter().find(|j| j.at == right.lo) {
                Some(j) if (gap - j.size).abs() > tol => {
                    return Err(bad(format!(
                        "jump at {} declared with size {} but the segments differ by {gap}",
                        j.at, j.size
                    )));
                }
                None if gap.abs() > tol => {
                    return Err(bad(format!("undeclared discontinuity of size {gap} at {}", right.lo)));
                }
                _ => {}
            }
        }
        Ok(Self { a, end, pieces, jumps })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: IntegratorSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_spec(&self) -> IntegratorSpec {
        IntegratorSpec {
            domain: [self.a, self.end],
            segments: self
                .pieces
                .iter()
                .map(|p| SegmentSpec { interval: [p.lo, p.hi], kind: p.kind, coefficients: p.coefficients.clone() })
                .collect(),
            jumps: self.jumps.clone(),
        }
    }

    /// `φ(s) = s` on `[a, T]`.
    pub fn identity(a: f64, end: f64) -> Result<Self> {
        Self::linear(a, end, 1.0)
    }

    /// `φ(s) = c s`.
    pub fn linear(a: f64, end: f64, slope: f64) -> Result<Self> {
        Self::from_spec(&IntegratorSpec {
            domain: [a, end],
            segments: vec![SegmentSpec { interval: [a, end], kind: SegmentKind::Poly, coefficients: vec![0.0, slope] }],
            jumps: vec![],
        })
    }

    /// `φ(s) = s` below `1/2`, `s + 1` from `1/2` on, over `[0, 1]`.
    pub fn unit_jump() -> Self {
        Self::from_spec(&IntegratorSpec {
            domain: [0.0, 1.0],
            segments: vec![
                SegmentSpec { interval: [0.0, 0.5], kind: SegmentKind::Poly, coefficients: vec![0.0, 1.0] },
                SegmentSpec { interval: [0.5, 1.0], kind: SegmentKind::Poly, coefficients: vec![1.0, 1.0] },
            ],
            jumps: vec![JumpSpec { at: 0.5, size: 1.0 }],
        })
        .expect("unit jump integrator is valid")
    }

    /// `φ(s) = e^s - 1` on `[0, 1]`.
    pub fn exponential() -> Self {
        Self::from_spec(&IntegratorSpec {
            domain: [0.0, 1.0],
            segments: vec![SegmentSpec { interval: [0.0, 1.0], kind: SegmentKind::Exp, coefficients: vec![-1.0, 1.0, 1.0] }],
            jumps: vec![],
        })
        .expect("exponential integrator is valid")
    }

    /// Integrators on `[0, 1]` used by the invariant tests and the transmuted harness.
    pub fn catalog() -> Vec<(&'static str, Integrator)> {
        vec![
            ("identity", Self::identity(0.0, 1.0).expect("valid")),
            ("doubling", Self::linear(0.0, 1.0, 2.0).expect("valid")),
            ("exponential", Self::exponential()),
            ("unit_jump", Self::unit_jump()),
        ]
    }

    pub fn start(&self) -> f64 {
        self.a
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn jumps(&self) -> &[JumpSpec] {
        &self.jumps
    }

    fn piece_index(&self, s: f64) -> usize {
        self.pieces.partition_point(|p| p.hi <= s).min(self.pieces.len() - 1)
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        if !(s >= self.a && s <= self.end) {
            return Err(FracError::OutOfDomain(s));
        }
        Ok(self.pieces[self.piece_index(s)].eval(s))
    }

    /// `φ(a)` and `φ(T)`.
    pub fn image_bounds(&self) -> (f64, f64) {
        (self.pieces[0].image_lo, self.pieces[self.pieces.len() - 1].image_hi)
    }

    /// `φ^{-1}(u)`, or `None` when `u` falls in a gap left by a jump.
    pub fn inverse(&self, u: f64) -> Option<f64> {
        self.pieces
            .iter()
            .find(|p| p.image_lo <= u && u <= p.image_hi)
            .map(|p| p.inverse(u))
    }

    /// Closure of `φ([u, v])`.
    pub fn image_set(&self, u: f64, v: f64) -> Result<ImageSet> {
        self.check_interval(u, v)?;
        let mut intervals: Vec<[f64; 2]> = Vec::new();
        for p in &self.pieces {
            let lo = p.lo.max(u);
            let hi = p.hi.min(v);
            if lo >= hi {
                continue;
            }
            let (l, r) = (p.eval(lo), p.eval(hi));
            match intervals.last_mut() {
                Some(prev) if prev[1] >= l => prev[1] = r,
                _ => intervals.push([l, r]),
            }
        }
        Ok(ImageSet { intervals })
    }

    fn check_interval(&self, u: f64, v: f64) -> Result<()> {
        if !(u >= self.a && u <= self.end) {
            return Err(FracError::OutOfDomain(u));
        }
        if !(v >= u && v <= self.end) {
            return Err(FracError::OutOfDomain(v));
        }
        Ok(())
    }

    fn check_grid(&self, grid: &UniformGrid1D) -> Result<()> {
        let tol = 1e-12 * (self.end - self.a).max(1.0);
        if (grid.start() - self.a).abs() > tol || (grid.end() - self.end).abs() > tol {
            return Err(FracError::GridMismatch(format!(
                "samples live on [{}, {}], integrator on [{}, {}]",
                grid.start(),
                grid.end(),
                self.a,
                self.end
            )));
        }
        Ok(())
    }
}

fn check_increasing(p: &Piece) -> std::result::Result<(), String> {
    if !(p.image_hi > p.image_lo) {
        return Err("not strictly increasing".into());
    }
    if p.kind == SegmentKind::Exp {
        let c = &p.coefficients;
        return if c[1] * c[2] > 0.0 { Ok(()) } else { Err("exponential piece is not increasing".into()) };
    }
    let h = (p.hi - p.lo) / MONOTONICITY_SAMPLES as f64;
    let mut prev = p.image_lo;
    for i in 1..=MONOTONICITY_SAMPLES {
        let s = if i == MONOTONICITY_SAMPLES { p.hi } else { p.lo + i as f64 * h };
        let v = p.eval(s);
        if !(v > prev) || p.derivative(s) < 0.0 {
            return Err(format!("not strictly increasing near s = {s}"));
        }
        prev = v;
    }
    Ok(())
}

/// `(μ∘φ)([u, v])`: Lebesgue measure of `φ([u, v])`.
pub fn pushforward_measure(phi: &Integrator, u: f64, v: f64) -> Result<f64> {
    Ok(phi.image_set(u, v)?.total_length())
}

/// `Q_φ f`: node values `f(φ(t_k))` on `grid`.
pub fn compose_q(phi: &Integrator, grid: UniformGrid1D, f: impl Fn(f64) -> f64) -> Result<SampledFunction1D> {
    phi.check_grid(&grid)?;
    let values = grid
        .nodes()
        .enumerate()
        .map(|(k, t)| {
            let value = f(phi.eval(t)?);
            if value.is_finite() {
                Ok(Complex64::new(value, 0.0))
            } else {
                Err(FracError::NonFinite { index: k, value })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SampledFunction1D::from_values(grid, values)
}

/// `Q_φ` applied to samples that live on a grid covering `[φ(a), φ(T)]`.
pub fn compose_q_sampled(phi: &Integrator, grid: UniformGrid1D, f: &SampledFunction1D) -> Result<SampledFunction1D> {
    phi.check_grid(&grid)?;
    let (lo, hi) = (f.grid().start(), f.grid().end());
    let tol = 1e-12 * (hi - lo).max(1.0);
    let values = grid
        .nodes()
        .map(|t| {
            let u = phi.eval(t)?;
            if u < lo - tol || u > hi + tol {
                return Err(FracError::OutOfDomain(u));
            }
            Ok(f.interpolate(u))
        })
        .collect::<Result<Vec<_>>>()?;
    SampledFunction1D::from_values(grid, values)
}

/// `Q_{φ^{-1}} g` on a uniform grid of `[φ(a), φ(T)]` with `m` intervals,
/// extended by zero on the gaps.
pub fn pull_back(phi: &Integrator, g: &SampledFunction1D, m: usize) -> Result<SampledFunction1D> {
    phi.check_grid(g.grid())?;
    let (lo, hi) = phi.image_bounds();
    let image_grid = UniformGrid1D::new(lo, hi, m)?;
    let values = image_grid
        .nodes()
        .map(|u| phi.inverse(u).map_or(Complex64::new(0.0, 0.0), |s| g.interpolate(s)))
        .collect();
    SampledFunction1D::from_values(image_grid, values)
}

/// One linear cell of the image of the sampled function.
#[derive(Debug, Clone, Copy)]
struct Cell {
    u_l: f64,
    u_r: f64,
    g_l: Complex64,
    g_r: Complex64,
}

/// Image cells of `g ∘ φ^{-1}` in increasing order, plus for every node the
/// number of cells lying in `φ([a, t_k])`.
fn image_cells(phi: &Integrator, g: &SampledFunction1D) -> (Vec<Cell>, Vec<usize>) {
    let grid = g.grid();
    let n = grid.intervals();
    let h = grid.step();
    let snap = 1e-12 * grid.length().max(1.0);
    let mut cells = Vec::with_capacity(n + 2 * phi.pieces.len());
    let mut ends = vec![0usize; n + 1];
    let mut filled = vec![false; n + 1];
    filled[0] = true;
    for p in &phi.pieces {
        let mut points: Vec<(f64, Option<usize>)> = Vec::new();
        let node_at = |s: f64| {
            let j = ((s - grid.start()) / h).round().clamp(0.0, n as f64) as usize;
            ((grid.node(j) - s).abs() <= snap).then_some(j)
        };
        points.push((p.lo, node_at(p.lo)));
        let first = ((p.lo - grid.start()) / h).floor().max(0.0) as usize;
        for j in first..=n {
            let t = grid.node(j);
            if t >= p.hi {
                break;
            }
            if t > p.lo && node_at(p.lo) != Some(j) {
                points.push((t, Some(j)));
            }
        }
        let hi_node = node_at(p.hi);
        if hi_node.is_some() && points.len() > 1 && points.last().map(|pt| pt.1) == Some(hi_node) {
            points.pop();
        }
        points.push((p.hi, hi_node));
        let mut prev: Option<(f64, Complex64)> = None;
        for (t, node) in points {
            let u = p.eval(t);
            let gv = node.map_or_else(|| g.interpolate(t), |j| g.value(j));
            if let Some((u_prev, g_prev)) = prev {
                if u > u_prev {
                    cells.push(Cell { u_l: u_prev, u_r: u, g_l: g_prev, g_r: gv });
                }
            }
            if let Some(j) = node {
                if !filled[j] {
                    ends[j] = cells.len();
                    filled[j] = true;
                }
            }
            prev = Some((u, gv));
        }
    }
    (cells, ends)
}

/// Weights of `G_l` and `G_r` in `∫_{u_l}^{u_r} (x - u)^{α-1} G(u) du` for
/// linear `G`, without the `1/Γ(α)` factor.
fn cell_weights(alpha: f64, x: f64, u_l: f64, u_r: f64) -> (f64, f64) {
    let width = u_r - u_l;
    let big = x - u_l;
    let small = (x - u_r).max(0.0);
    let log_ratio = (-width / big).ln_1p();
    let pow_a = big.powf(alpha);
    let d_a = -pow_a * (alpha * log_ratio).exp_m1();
    let d_a1 = -pow_a * big * ((alpha + 1.0) * log_ratio).exp_m1();
    let m1 = d_a1 / (alpha + 1.0);
    let w_l = (m1 - small * d_a / alpha) / width;
    let w_r = (big * d_a / alpha - m1) / width;
    (w_l.max(0.0), w_r.max(0.0))
}

/// `I_{a,φ}^α g` by product integration over the image of `φ`.
pub fn rl_wrt_phi_direct(alpha: f64, phi: &Integrator, g: &SampledFunction1D) -> Result<SampledFunction1D> {
    let alpha = FractionalOrder::new(alpha)?.get();
    phi.check_grid(g.grid())?;
    let (cells, ends) = image_cells(phi, g);
    let norm = 1.0 / gamma(alpha);
    let grid = *g.grid();
    let values: Vec<Complex64> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            if ends[k] == 0 {
                return Complex64::new(0.0, 0.0);
            }
            let x = phi.pieces[phi.piece_index(grid.node(k))].eval(grid.node(k));
            let mut acc = Complex64::new(0.0, 0.0);
            for c in &cells[..ends[k]] {
                let (w_l, w_r) = cell_weights(alpha, x, c.u_l, c.u_r);
                acc += c.g_l * w_l + c.g_r * w_r;
            }
            acc * norm
        })
        .collect();
    SampledFunction1D::from_values(grid, values)
}

/// `Q_φ ∘ I_{φ(a)}^α ∘ Q_{φ^{-1}}` with the image resampled at `m` intervals.
pub fn rl_wrt_phi_transmuted_with(
    alpha: f64,
    phi: &Integrator,
    g: &SampledFunction1D,
    m: usize,
) -> Result<SampledFunction1D> {
    FractionalOrder::new(alpha)?;
    let pulled = pull_back(phi, g, m)?;
    let integrated = rl_integral_shifted(alpha, &pulled)?;
    compose_q_sampled(phi, *g.grid(), &integrated)
}

/// Transmuted path with as many image intervals as `g` has.
pub fn rl_wrt_phi_transmuted(alpha: f64, phi: &Integrator, g: &SampledFunction1D) -> Result<SampledFunction1D> {
    rl_wrt_phi_transmuted_with(alpha, phi, g, g.grid().intervals())
}

/// L¹ distance between the direct and transmuted paths for `g` sampled at `n`.
pub fn transmutation_residual(alpha: f64, phi: &Integrator, g: impl Fn(f64) -> f64, n: usize) -> Result<f64> {
    let grid = UniformGrid1D::new(phi.start(), phi.end(), n)?;
    let samples = SampledFunction1D::sample(grid, g)?;
    let direct = rl_wrt_phi_direct(alpha, phi, &samples)?;
    let transmuted = rl_wrt_phi_transmuted(alpha, phi, &samples)?;
    direct.l1_distance(&transmuted)
}

/// `∫ |g| d(μ∘φ)` by the trapezoid rule on the image cells.
pub fn pushforward_l1_norm(phi: &Integrator, g: &SampledFunction1D) -> Result<f64> {
    phi.check_grid(g.grid())?;
    let (cells, _) = image_cells(phi, g);
    Ok(cells.iter().map(|c| 0.5 * (c.g_l.norm() + c.g_r.norm()) * (c.u_r - c.u_l)).sum())
}

/// `∫_0^L τ^{α-1}/Γ(α) dτ` with `L = φ(T) - φ(a)`.
pub fn kernel_l1_norm(alpha: f64, phi: &Integrator) -> Result<f64> {
    let alpha = FractionalOrder::new(alpha)?.get();
    let (lo, hi) = phi.image_bounds();
    Ok((hi - lo).powf(alpha) / gamma(alpha + 1.0))
}

/// The family `α ↦ I_{a,φ}^α`.
#[derive(Debug, Clone)]
pub struct PhiFamily {
    name: String,
    phi: Integrator,
}

impl PhiFamily {
    pub fn new(label: &str, phi: Integrator) -> Self {
        Self { name: format!("rl_wrt_phi[{label}]"), phi }
    }

    pub fn integrator(&self) -> &Integrator {
        &self.phi
    }
}

impl OperatorFamily for PhiFamily {
    fn name(&self) -> &str {
        &self.name
    }

    fn apply(&self, alpha: f64, f: &SampledFunction1D) -> Result<SampledFunction1D> {
        rl_wrt_phi_direct(alpha, &self.phi, f)
    }

    fn expected_profile(&self) -> AxiomProfile {
        AxiomProfile::ALL
    }

    /// `∫_{φ([a,t])} g∘φ^{-1} du` by the trapezoid rule on the image cells.
    fn order_one_integral(&self, f: &SampledFunction1D) -> Result<SampledFunction1D> {
        self.phi.check_grid(f.grid())?;
        let (cells, ends) = image_cells(&self.phi, f);
        let mut prefix = Vec::with_capacity(cells.len() + 1);
        let mut acc = Complex64::new(0.0, 0.0);
        prefix.push(acc);
        for c in &cells {
            acc += (c.g_l + c.g_r) * (0.5 * (c.u_r - c.u_l));
            prefix.push(acc);
        }
        let values = ends.iter().map(|&e| prefix[e]).collect();
        SampledFunction1D::from_values(*f.grid(), values)
    }
}
