//! Axiom checks for operator families and the report records the CLI emits.
//!
//! A family passes the harness when each of its verdicts agrees with its
//! expected profile; for the catalog that means every counterexample fails
//! exactly the axiom it was built to break.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};
use crate::family::{AxiomProfile, CatalogFamily, OperatorFamily};
use crate::grid::{BoxGridND, SampledFunction1D, SampledFunctionND, UniformGrid1D};
use crate::rl::rl_integral;
use crate::rl_nd::truncated_convolution;
use crate::transforms::laplace_transform;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TestFunction {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "t")]
    Identity,
    #[serde(rename = "cos t")]
    Cos,
    #[serde(rename = "exp(-t)")]
    DecayingExp,
    #[serde(rename = "max(0, t-0.3)")]
    Ramp,
}

impl TestFunction {
    pub const DEFAULT: [TestFunction; 5] =
        [TestFunction::One, TestFunction::Identity, TestFunction::Cos, TestFunction::DecayingExp, TestFunction::Ramp];

    pub fn eval(self, t: f64) -> f64 {
        match self {
            TestFunction::One => 1.0,
            TestFunction::Identity => t,
            TestFunction::Cos => t.cos(),
            TestFunction::DecayingExp => (-t).exp(),
            TestFunction::Ramp => (t - 0.3).max(0.0),
        }
    }

    pub fn sample(self, grid: UniformGrid1D) -> Result<SampledFunction1D> {
        SampledFunction1D::sample(grid, |t| self.eval(t))
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TestFunction::One => "1",
            TestFunction::Identity => "t",
            TestFunction::Cos => "cos t",
            TestFunction::DecayingExp => "exp(-t)",
            TestFunction::Ramp => "max(0, t-0.3)",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub identity: f64,
    pub index_law: f64,
    pub continuity: f64,
    pub positivity: f64,
    pub convolutionization: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { identity: 1e-6, index_law: 5e-3, continuity: 1e-2, positivity: 1e-10, convolutionization: 1e-3 }
    }
}

/// How continuity in the order is measured.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum ContinuityMode {
    /// `‖J^{α₀+δ} 1 - J^{α₀} 1‖₁` on the run grid.
    Norm,
    /// `max_x |R_{α₀+δ}(x) - R_{α₀}(x)|` on `[0, t_big]` with `n` cells.
    Transform { x_grid: Vec<f64>, t_big: f64, n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub grid_n: usize,
    pub interval: [f64; 2],
    pub index_pairs: Vec<[f64; 2]>,
    pub continuity_alpha0: f64,
    pub continuity_deltas: Vec<f64>,
    pub continuity_mode: ContinuityMode,
    pub positivity_alphas: Vec<f64>,
    pub convolution_alpha: f64,
    pub tolerances: Tolerances,
    pub test_functions: Vec<TestFunction>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid_n: 2048,
            interval: [0.0, 1.0],
            index_pairs: vec![[0.5, 0.5], [0.25, 0.25]],
            continuity_alpha0: 0.7,
            continuity_deltas: vec![0.1, 0.01, 0.001],
            continuity_mode: ContinuityMode::Norm,
            positivity_alphas: vec![0.25, 0.5, 0.75, 1.0, 1.5],
            convolution_alpha: 0.5,
            tolerances: Tolerances::default(),
            test_functions: TestFunction::DEFAULT.to_vec(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(FracError::InvalidArgument(m.to_string()));
        let t = &self.tolerances;
        if ![t.identity, t.index_law, t.continuity, t.positivity, t.convolutionization]
            .iter()
            .all(|v| *v > 0.0 && v.is_finite())
        {
            return bad("tolerances must be positive");
        }
        if self.test_functions.is_empty() {
            return bad("test-function set is empty");
        }
        if self.index_pairs.is_empty() || self.positivity_alphas.is_empty() || self.continuity_deltas.is_empty() {
            return bad("order grids must be nonempty");
        }
        if self.index_pairs.iter().flatten().chain(&self.positivity_alphas).any(|a| !(*a > 0.0)) {
            return bad("orders must be positive");
        }
        if self.continuity_deltas.windows(2).any(|w| !(w[1] < w[0])) || self.continuity_deltas.iter().any(|d| !(*d > 0.0)) {
            return bad("continuity deltas must be positive and strictly decreasing");
        }
        if !(self.continuity_alpha0 > 0.0) || !(self.convolution_alpha > 0.0) {
            return bad("orders must be positive");
        }
        self.grid().map(|_| ())
    }

    pub fn grid(&self) -> Result<UniformGrid1D> {
        UniformGrid1D::new(self.interval[0], self.interval[1], self.grid_n)
    }

    fn samples(&self) -> Result<Vec<SampledFunction1D>> {
        let grid = self.grid()?;
        self.test_functions.iter().map(|f| f.sample(grid)).collect()
    }
}

/// `max_f ‖J¹ f - I¹ f‖₁`.
pub fn check_identity(family: &dyn OperatorFamily, f_set: &[SampledFunction1D]) -> Result<f64> {
    if f_set.is_empty() {
        return Err(FracError::InvalidArgument("empty test-function set".into()));
    }
    f_set.iter().try_fold(0.0f64, |acc, f| {
        Ok(acc.max(family.apply(1.0, f)?.l1_distance(&family.order_one_integral(f)?)?))
    })
}

/// `max ‖J^α J^β f - J^{α+β} f‖₁` over pairs and functions.
pub fn check_index_law(family: &dyn OperatorFamily, pairs: &[[f64; 2]], f_set: &[SampledFunction1D]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &[alpha, beta] in pairs {
        for f in f_set {
            let twice = family.apply(alpha, &family.apply(beta, f)?)?;
            let once = family.apply(alpha + beta, f)?;
            worst = worst.max(twice.l1_distance(&once)?);
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuityOutcome {
    pub residuals: Vec<f64>,
    pub pass: bool,
}

/// Residuals `r_i` between orders `α₀ + δ_i` and `α₀` on `f ≡ 1`.
pub fn check_continuity(
    family: &dyn OperatorFamily,
    grid: UniformGrid1D,
    alpha0: f64,
    deltas: &[f64],
    mode: &ContinuityMode,
    tol: f64,
) -> Result<ContinuityOutcome> {
    let residuals = match mode {
        ContinuityMode::Norm => {
            let one = SampledFunction1D::constant(grid, 1.0);
            let base = family.apply(alpha0, &one)?;
            deltas
                .iter()
                .map(|&d| family.apply(alpha0 + d, &one)?.l1_distance(&base))
                .collect::<Result<Vec<_>>>()?
        }
        ContinuityMode::Transform { x_grid, t_big, n } => {
            let one = SampledFunction1D::constant(UniformGrid1D::new(0.0, *t_big, *n)?, 1.0);
            let transform = |alpha: f64| -> Result<Vec<f64>> {
                let out = family.apply(alpha, &one)?;
                x_grid.iter().map(|&x| Ok(laplace_transform(&out, x, None)?.value)).collect()
            };
            let base = transform(alpha0)?;
            deltas
                .iter()
                .map(|&d| {
                    Ok(transform(alpha0 + d)?
                        .iter()
                        .zip(&base)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max))
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    let decreasing = residuals.windows(2).all(|w| w[1] < w[0]);
    let pass = decreasing && residuals.last().is_some_and(|r| *r < tol);
    Ok(ContinuityOutcome { residuals, pass })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositivityOutcome {
    pub min_real: f64,
    pub max_imag: f64,
    pub pass: bool,
}

/// Smallest real part and largest imaginary part of `J^α f` over nonnegative `f`.
pub fn check_positivity(
    family: &dyn OperatorFamily,
    f_set: &[SampledFunction1D],
    alphas: &[f64],
    tol: f64,
) -> Result<PositivityOutcome> {
    for f in f_set {
        if let Some((index, v)) = f.values().iter().enumerate().find(|(_, v)| v.re < 0.0 || v.im != 0.0) {
            return Err(FracError::InvalidArgument(format!(
                "positivity test function has value {v} at node {index}"
            )));
        }
    }
    let mut min_real = f64::INFINITY;
    let mut max_imag: f64 = 0.0;
    for &alpha in alphas {
        for f in f_set {
            let out = family.apply(alpha, f)?;
            min_real = min_real.min(out.min_real());
            max_imag = max_imag.max(out.max_imag());
        }
    }
    Ok(PositivityOutcome { min_real, max_imag, pass: min_real >= -tol && max_imag <= tol })
}

fn as_nd(f: &SampledFunction1D) -> Result<SampledFunctionND> {
    let grid = BoxGridND::new(vec![f.grid().translated_to(0.0)?])?;
    SampledFunctionND::from_values(grid, f.values().to_vec())
}

/// `‖I¹ J^α f - (J^α 1) * f‖₁`, computed after moving the left endpoint to 0.
pub fn check_convolutionization(family: &dyn OperatorFamily, alpha: f64, f: &SampledFunction1D) -> Result<f64> {
    let lhs = rl_integral(1.0, &family.apply(alpha, f)?)?;
    let kernel = family.apply(alpha, &SampledFunction1D::constant(*f.grid(), 1.0))?;
    let rhs = truncated_convolution(&as_nd(&kernel)?, &as_nd(f)?)?;
    let rhs = SampledFunction1D::from_values(*f.grid(), rhs.values().to_vec())?;
    lhs.l1_distance(&rhs)
}

/// `‖J^α(f₁ + f₂) - J^α f₁ - J^α f₂‖₁`.
pub fn linearity_residual(
    family: &dyn OperatorFamily,
    alpha: f64,
    f1: &SampledFunction1D,
    f2: &SampledFunction1D,
) -> Result<f64> {
    let sum = family.apply(alpha, &f1.add(f2)?)?;
    let parts = family.apply(alpha, f1)?.add(&family.apply(alpha, f2)?)?;
    sum.l1_distance(&parts)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualVerdict {
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomVerdicts {
    pub identity: ResidualVerdict,
    pub index_law: ResidualVerdict,
    pub continuity: ContinuityOutcome,
    pub positivity: PositivityOutcome,
    pub convolutionization: ResidualVerdict,
}

impl AxiomVerdicts {
    pub fn profile(&self) -> AxiomProfile {
        AxiomProfile {
            identity: self.identity.pass,
            index_law: self.index_law.pass,
            continuity: self.continuity.pass,
            positivity: self.positivity.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub family: String,
    pub axioms: AxiomVerdicts,
    pub expected_profile: AxiomProfile,
    #[serde(rename = "match")]
    pub matches: bool,
    pub config_echo: RunConfig,
}

impl AxiomReport {
    /// Axioms whose verdict differs from the expected profile.
    pub fn mismatched_axioms(&self) -> Vec<&'static str> {
        let got = self.axioms.profile();
        let want = self.expected_profile;
        [
            ("identity", got.identity == want.identity),
            ("index_law", got.index_law == want.index_law),
            ("continuity", got.continuity == want.continuity),
            ("positivity", got.positivity == want.positivity),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

/// All checks for one family.
pub fn run_family(family: &dyn OperatorFamily, config: &RunConfig) -> Result<AxiomReport> {
    config.validate()?;
    let tol = config.tolerances;
    let samples = config.samples()?;
    let nonnegative: Vec<SampledFunction1D> = samples
        .iter()
        .filter(|f| f.values().iter().all(|v| v.re >= 0.0 && v.im == 0.0))
        .cloned()
        .collect();

    let identity = check_identity(family, &samples)?;
    let index_law = check_index_law(family, &config.index_pairs, &samples)?;
    let continuity = check_continuity(
        family,
        config.grid()?,
        config.continuity_alpha0,
        &config.continuity_deltas,
        &config.continuity_mode,
        tol.continuity,
    )?;
    let positivity = check_positivity(family, &nonnegative, &config.positivity_alphas, tol.positivity)?;
    let convolutionization = samples.iter().try_fold(0.0f64, |acc, f| {
        Ok::<_, FracError>(acc.max(check_convolutionization(family, config.convolution_alpha, f)?))
    })?;

    let axioms = AxiomVerdicts {
        identity: ResidualVerdict { residual: identity, pass: identity < tol.identity },
        index_law: ResidualVerdict { residual: index_law, pass: index_law < tol.index_law },
        continuity,
        positivity,
        convolutionization: ResidualVerdict {
            residual: convolutionization,
            pass: convolutionization < tol.convolutionization,
        },
    };
    let expected_profile = family.expected_profile();
    Ok(AxiomReport {
        family: family.name().to_string(),
        matches: axioms.profile() == expected_profile,
        axioms,
        expected_profile,
        config_echo: config.clone(),
    })
}

/// Runs `families` in parallel and returns the reports ordered by family name.
pub fn run_families(families: &[&dyn OperatorFamily], config: &RunConfig) -> Result<Vec<AxiomReport>> {
    config.validate()?;
    let mut reports = families
        .par_iter()
        .map(|f| run_family(*f, config))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.family.cmp(&b.family));
    Ok(reports)
}

/// The violation matrix over the whole catalog.
pub fn run_matrix(config: &RunConfig) -> Result<Vec<AxiomReport>> {
    let families: Vec<&dyn OperatorFamily> =
        CatalogFamily::ALL.iter().map(|f| f as &dyn OperatorFamily).collect();
    run_families(&families, config)
}

/// `(family, axiom)` for every verdict that disagrees with its profile.
pub fn mismatches(reports: &[AxiomReport]) -> Vec<(String, &'static str)> {
    reports
        .iter()
        .flat_map(|r| r.mismatched_axioms().into_iter().map(|a| (r.family.clone(), a)))
        .collect()
}

pub fn reports_to_json(reports: &[AxiomReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}
