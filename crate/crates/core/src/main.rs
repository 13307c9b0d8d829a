use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use fracops_core::harness::{mismatches, run_families, RunConfig, TestFunction, Tolerances};
use fracops_core::riesz::{
    multiplier_family_check, riesz_potential, MultiplierCheck, MultiplierFamily, PeriodicGridND, PeriodicSamples,
};
use fracops_core::transforms::{fit_affine, semigroup_table, FitResult, TransformTable};
use fracops_core::transmute::{
    pushforward_measure, rl_wrt_phi_direct, rl_wrt_phi_transmuted, ImageSet, Integrator, IntegratorSpec,
};
use fracops_core::{make_family, CatalogFamily, FracError, OperatorFamily, SampledFunction1D, UniformGrid1D};

#[derive(Parser)]
#[command(name = "fracops", version, about = "Fractional integrals and axiom checks for operator families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom checks on one catalog family or all of them.
    Axioms {
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 2048)]
        grid_n: usize,
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        interval: String,
        #[arg(long, default_value_t = 1e-6)]
        tol_identity: f64,
        #[arg(long, default_value_t = 5e-3)]
        tol_index: f64,
        #[arg(long, default_value_t = 1e-2)]
        tol_continuity: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol_positivity: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit ln R[α, x] = c(x) + d(x) α on a family's semigroup table.
    LaplaceFit {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "0.25,0.5,0.75,1,1.25,1.5,1.75,2")]
        alpha_grid: String,
        #[arg(long, default_value = "1,2,4,8")]
        x_grid: String,
        #[arg(long, default_value_t = 40.0)]
        t_big: f64,
        #[arg(long, default_value_t = 16384)]
        grid_n: usize,
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check Riesz potentials and candidate multiplier families on a periodic grid.
    RieszCheck {
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 256)]
        modes: usize,
        #[arg(long)]
        alpha_grid: String,
        #[arg(long)]
        anchor: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the direct and transmuted integrals with respect to an integrator.
    TransmuteCheck {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 4096)]
        grid_n: usize,
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Mismatch(String),
    Config(String),
}

impl From<FracError> for Failure {
    fn from(e: FracError) -> Self {
        match e {
            FracError::NonPositiveEntry { .. } | FracError::NotReal(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn parse_list(name: &str, text: &str) -> std::result::Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Config(format!("--{name}: cannot parse `{s}` as a number")))
        })
        .collect()
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Config(e.to_string()))?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn axioms(
    family: &str,
    grid_n: usize,
    interval: &str,
    tolerances: Tolerances,
    out: Option<&Path>,
) -> Outcome {
    let bounds = parse_list("interval", interval)?;
    let [a, end] = bounds[..] else {
        return Err(Failure::Config(format!("--interval expects a,T, got `{interval}`")));
    };
    let config = RunConfig { grid_n, interval: [a, end], tolerances, ..RunConfig::default() };
    let families: Vec<CatalogFamily> =
        if family == "all" { CatalogFamily::ALL.to_vec() } else { vec![make_family(family)?] };
    let refs: Vec<&dyn OperatorFamily> = families.iter().map(|f| f as &dyn OperatorFamily).collect();
    let reports = run_families(&refs, &config)?;
    emit(&reports, out)?;
    let bad = mismatches(&reports);
    for (family, axiom) in &bad {
        let report = reports.iter().find(|r| &r.family == family).expect("report exists");
        let expected = if axiom_expected(report.expected_profile, axiom) { "pass" } else { "fail" };
        eprintln!("mismatch: family {family}, axiom {axiom} (expected {expected})");
    }
    Ok(bad.is_empty())
}

fn axiom_expected(profile: fracops_core::AxiomProfile, axiom: &str) -> bool {
    match axiom {
        "identity" => profile.identity,
        "index_law" => profile.index_law,
        "continuity" => profile.continuity,
        _ => profile.positivity,
    }
}

#[derive(Serialize)]
struct LaplaceFitReport {
    family: String,
    table: TransformTable,
    fit: FitResult,
    slope_errors: Vec<f64>,
    intercept_errors: Vec<f64>,
    tolerance: f64,
    #[serde(rename = "match")]
    matches: bool,
}

fn laplace_fit(
    family: &str,
    alpha_grid: &str,
    x_grid: &str,
    t_big: f64,
    grid_n: usize,
    tol: f64,
    out: Option<&Path>,
) -> Outcome {
    let fam = make_family(family)?;
    let alphas = parse_list("alpha-grid", alpha_grid)?;
    let xs = parse_list("x-grid", x_grid)?;
    let table = semigroup_table(&fam, &alphas, &xs, t_big, grid_n)?;
    let fit = fit_affine(&table)?;
    let slope_errors: Vec<f64> = fit.slopes_1d().iter().zip(&xs).map(|(d, x)| (d + x.ln()).abs()).collect();
    let intercept_errors: Vec<f64> = fit.intercept.iter().zip(&xs).map(|(c, x)| (c + x.ln()).abs()).collect();
    let matches = slope_errors.iter().chain(&intercept_errors).all(|e| *e <= tol) && fit.max_residual < 1e-3;
    let report = LaplaceFitReport {
        family: fam.as_str().to_string(),
        table,
        fit,
        slope_errors,
        intercept_errors,
        tolerance: tol,
        matches,
    };
    emit(&report, out)?;
    if !matches {
        eprintln!("mismatch: family {fam} does not have the exponential transform form of the Riemann–Liouville table");
    }
    Ok(matches)
}

#[derive(Serialize)]
struct FamilyVerdict {
    check: MultiplierCheck,
    expected_multiplicative: bool,
    expected_anchor: bool,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct RieszReport {
    dim: usize,
    modes: usize,
    alpha_grid: Vec<f64>,
    semigroup_residual: f64,
    semigroup_pass: bool,
    families: Vec<FamilyVerdict>,
    #[serde(rename = "match")]
    matches: bool,
}

const RIESZ_TOL: f64 = 1e-12;

fn riesz_check(dim: usize, modes: usize, alpha_grid: &str, anchor: Option<f64>, out: Option<&Path>) -> Outcome {
    use std::f64::consts::PI;
    let alphas = parse_list("alpha-grid", alpha_grid)?;
    let grid = PeriodicGridND::cube(dim, modes)?;
    let f = PeriodicSamples::sample(grid.clone(), |p| {
        p.iter().map(|x| (2.0 * PI * x).sin()).sum::<f64>() + 0.5 * (6.0 * PI * p[0]).cos()
    })?;
    let mut semigroup_residual: f64 = 0.0;
    for (i, &a) in alphas.iter().enumerate() {
        for &b in &alphas[i..] {
            if a + b >= dim as f64 {
                continue;
            }
            let twice = riesz_potential(a, &riesz_potential(b, &f)?)?;
            let once = riesz_potential(a + b, &f)?;
            let scale = once.values().iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
            semigroup_residual = semigroup_residual.max(twice.linf_distance(&once)? / scale);
        }
    }
    let anchor = match anchor {
        Some(a) => a,
        None => *alphas
            .iter()
            .min_by(|x, y| (*x - dim as f64 / 2.0).abs().total_cmp(&(*y - dim as f64 / 2.0).abs()))
            .ok_or_else(|| Failure::Config("--alpha-grid is empty".into()))?,
    };
    let limit = (modes / 2).min(8) as i64;
    let xi_grid: Vec<Vec<f64>> = (1..grid.len())
        .filter(|&flat| grid.wave_numbers(flat).iter().all(|k| k.abs() <= limit))
        .map(|flat| grid.wave_numbers(flat).iter().map(|&k| 2.0 * PI * k as f64).collect())
        .collect();
    let candidates = [
        (MultiplierFamily::exact(dim, anchor)?, true, true),
        (MultiplierFamily::scaled(2.0, dim, anchor)?, true, false),
        (MultiplierFamily::squared_order(dim, anchor)?, false, anchor == 1.0),
    ];
    let mut families = Vec::new();
    for (fam, expected_multiplicative, expected_anchor) in candidates {
        let check = multiplier_family_check(&fam, &alphas, &xi_grid)?;
        let matches = check.multiplicative == expected_multiplicative && check.anchor_pass == expected_anchor;
        if !matches {
            eprintln!("mismatch: multiplier family {}", fam.name());
        }
        families.push(FamilyVerdict { check, expected_multiplicative, expected_anchor, matches });
    }
    let semigroup_pass = semigroup_residual < RIESZ_TOL;
    if !semigroup_pass {
        eprintln!("mismatch: Riesz semigroup residual {semigroup_residual:e}");
    }
    let matches = semigroup_pass && families.iter().all(|f| f.matches);
    let report =
        RieszReport { dim, modes, alpha_grid: alphas, semigroup_residual, semigroup_pass, families, matches };
    emit(&report, out)?;
    Ok(matches)
}

#[derive(Serialize)]
struct FunctionResidual {
    function: String,
    direct_at_end: f64,
    transmuted_at_end: f64,
    residual: f64,
}

#[derive(Serialize)]
struct TransmuteReport {
    phi: IntegratorSpec,
    alpha: f64,
    grid_n: usize,
    pushforward_measure: f64,
    image_set: ImageSet,
    functions: Vec<FunctionResidual>,
    max_residual: f64,
    tolerance: f64,
    pass: bool,
}

fn transmute_check(phi_path: &Path, alpha: f64, grid_n: usize, tol: f64, out: Option<&Path>) -> Outcome {
    let phi = Integrator::load(phi_path)?;
    let grid = UniformGrid1D::new(phi.start(), phi.end(), grid_n)?;
    let mut functions = Vec::new();
    for tf in TestFunction::DEFAULT {
        let g: SampledFunction1D = tf.sample(grid)?;
        let direct = rl_wrt_phi_direct(alpha, &phi, &g)?;
        let transmuted = rl_wrt_phi_transmuted(alpha, &phi, &g)?;
        functions.push(FunctionResidual {
            function: tf.to_string(),
            direct_at_end: direct.last().re,
            transmuted_at_end: transmuted.last().re,
            residual: direct.l1_distance(&transmuted)?,
        });
    }
    let max_residual = functions.iter().map(|f| f.residual).fold(0.0, f64::max);
    let pass = max_residual < tol;
    let report = TransmuteReport {
        phi: phi.to_spec(),
        alpha,
        grid_n,
        pushforward_measure: pushforward_measure(&phi, phi.start(), phi.end())?,
        image_set: phi.image_set(phi.start(), phi.end())?,
        functions,
        max_residual,
        tolerance: tol,
        pass,
    };
    emit(&report, out)?;
    if !pass {
        eprintln!("mismatch: transmutation residual {max_residual:e} exceeds {tol:e}");
    }
    Ok(pass)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Axioms {
            family,
            grid_n,
            interval,
            tol_identity,
            tol_index,
            tol_continuity,
            tol_positivity,
            out,
        } => {
            let tolerances = Tolerances {
                identity: tol_identity,
                index_law: tol_index,
                continuity: tol_continuity,
                positivity: tol_positivity,
                ..Tolerances::default()
            };
            axioms(&family, grid_n, &interval, tolerances, out.as_deref())
        }
        Command::LaplaceFit { family, alpha_grid, x_grid, t_big, grid_n, tol, out } => {
            laplace_fit(&family, &alpha_grid, &x_grid, t_big, grid_n, tol, out.as_deref())
        }
        Command::RieszCheck { dim, modes, alpha_grid, anchor, out } => {
            riesz_check(dim, modes, &alpha_grid, anchor, out.as_deref())
        }
        Command::TransmuteCheck { phi, alpha, grid_n, tol, out } => {
            transmute_check(&phi, alpha, grid_n, tol, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
