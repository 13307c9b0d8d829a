use fracops_core::*;
use fracops_core::riesz::*;
use std::f64::consts::PI;

fn line(m: usize) -> PeriodicGridND {
    PeriodicGridND::cube(1, m).unwrap()
}

#[test]
fn grid_validation() {
    assert!(PeriodicGridND::new(vec![6]).is_ok());
    assert!(PeriodicGridND::new(vec![5]).is_err());
    assert!(PeriodicGridND::new(vec![2]).is_err());
    assert!(PeriodicGridND::new(vec![]).is_err());
    let g = line(8);
    assert_eq!(g.wave_numbers(3), vec![3]);
    assert_eq!(g.wave_numbers(4), vec![-4]);
    assert_eq!(g.wave_numbers(7), vec![-1]);
}

#[test]
fn single_mode_scales() {
    let f = PeriodicSamples::sample(line(64), |t| (2.0 * PI * t[0]).cos()).unwrap();
    for &alpha in &[0.1, 0.5, 0.9] {
        let out = riesz_potential(alpha, &f).unwrap();
        let factor = (2.0 * PI).powf(-alpha);
        for (flat, v) in out.values().iter().enumerate() {
            let t = f.grid().point(flat)[0];
            assert!((v.re - factor * (2.0 * PI * t).cos()).abs() < 1e-12);
        }
    }
}

#[test]
fn zero_in_zero_out() {
    let f = PeriodicSamples::sample(line(16), |_| 0.0).unwrap();
    let out = riesz_potential(0.5, &f).unwrap();
    assert!(out.values().iter().all(|v| v.norm() == 0.0));
}

#[test]
fn rejects_bad_order_and_mean() {
    let f = PeriodicSamples::sample(line(16), |t| 1.0 + (2.0 * PI * t[0]).sin()).unwrap();
    match riesz_potential(0.5, &f) {
        Err(FracError::NonZeroMean(m)) => assert!((m - 1.0).abs() < 1e-12),
        other => panic!("unexpected {other:?}"),
    }
    let g = PeriodicSamples::sample(line(16), |t| (2.0 * PI * t[0]).sin()).unwrap();
    assert!(riesz_potential(1.0, &g).is_err());
    assert!(riesz_potential(0.0, &g).is_err());
}

#[test]
fn semigroup_is_exact_in_2d() {
    let grid = PeriodicGridND::cube(2, 32).unwrap();
    let f = PeriodicSamples::sample(grid, |p| {
        (2.0 * PI * (p[0] + 2.0 * p[1])).sin() + 0.3 * (2.0 * PI * 3.0 * p[0]).cos()
    })
    .unwrap();
    for &(a, b) in &[(0.3, 0.4), (0.5, 1.2), (1.0, 0.9)] {
        let twice = riesz_potential(a, &riesz_potential(b, &f).unwrap()).unwrap();
        let once = riesz_potential(a + b, &f).unwrap();
        let scale = once.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(twice.linf_distance(&once).unwrap() < 1e-12 * scale.max(1.0));
        assert!(once.max_imag() < 1e-12);
    }
}

#[test]
fn parseval_consistency() {
    let grid = PeriodicGridND::cube(2, 16).unwrap();
    let f = PeriodicSamples::sample(grid, |p| {
        (2.0 * PI * p[0]).sin() * (2.0 * PI * 2.0 * p[1]).cos() + 0.2 * (2.0 * PI * 5.0 * p[1]).sin()
    })
    .unwrap();
    let out = riesz_potential(0.8, &f).unwrap();
    let expected = weighted_spectral_norm(0.8, &f).unwrap();
    assert!((out.l2_norm() - expected).abs() < 1e-12 * expected);
}

#[test]
fn spectrum_csv_lists_nonzero_modes() {
    let f = PeriodicSamples::sample(PeriodicGridND::cube(2, 4).unwrap(), |p| (2.0 * PI * p[1]).cos()).unwrap();
    let mut buf = Vec::new();
    f.write_spectrum_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k_1,k_2,re,im"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 15);
    let hit = rows.iter().find(|r| r.starts_with("0,1,")).unwrap();
    let re: f64 = hit.split(',').nth(2).unwrap().parse().unwrap();
    assert!((re - 0.5).abs() < 1e-15);
}

fn xi_grid() -> Vec<Vec<f64>> {
    line(16).nonzero_frequencies()
}

#[test]
fn exact_family_passes() {
    let fam = MultiplierFamily::exact(1, 0.5).unwrap();
    let check = multiplier_family_check(&fam, &[0.1, 0.2, 0.3, 0.5, 0.7, 0.9], &xi_grid()).unwrap();
    assert!(check.fit.max_residual < 1e-12);
    assert!(check.multiplicative && check.anchor_pass);
    assert!(check.slope_error < 1e-12);
}

#[test]
fn scaled_family_fails_only_the_anchor() {
    let fam = MultiplierFamily::scaled(2.0, 1, 0.5).unwrap();
    let check = multiplier_family_check(&fam, &[0.1, 0.2, 0.3, 0.5, 0.7, 0.9], &xi_grid()).unwrap();
    assert!(check.multiplicative);
    assert!(!check.anchor_pass);
    assert!((check.anchor_residual - (2f64.sqrt() - 1.0)).abs() < 1e-12);
}

#[test]
fn squared_order_family_reports_a_violation() {
    let fam = MultiplierFamily::squared_order(1, 0.5).unwrap();
    let check = multiplier_family_check(&fam, &[0.1, 0.2, 0.3, 0.5, 0.7, 0.9], &xi_grid()).unwrap();
    assert!(!check.multiplicative);
    let pair = check.violating_pair.unwrap();
    // |ln m(α+β) - ln m(α) - ln m(β)| = 2αβ ln|ξ|
    let expected = 2.0 * pair.alpha * pair.beta * pair.xi_norm.ln();
    assert!((pair.log_violation - expected).abs() < 1e-12);
    assert!(pair.alpha + pair.beta < 1.0);
}

#[test]
fn check_argument_errors() {
    let fam = MultiplierFamily::exact(1, 0.5).unwrap();
    assert!(multiplier_family_check(&fam, &[0.5, 0.6], &xi_grid()).is_err());
    assert!(multiplier_family_check(&fam, &[0.2, 0.3, 0.4], &xi_grid()).is_err());
    assert!(multiplier_family_check(&fam, &[0.5, 0.6, 0.7], &xi_grid()).is_err());
    assert!(multiplier_family_check(&fam, &[0.5, 0.6, 1.2], &xi_grid()).is_err());
    let neg = MultiplierFamily::new("neg", 1, 0.5, |_, _| -1.0).unwrap();
    assert!(matches!(
        multiplier_family_check(&neg, &[0.1, 0.3, 0.5], &xi_grid()),
        Err(FracError::NonPositive { .. })
    ));
}

#[test]
fn limit_anchor_slopes() {
    let fam = MultiplierFamily::exact(2, 1.0).unwrap();
    let xi = [2.0 * PI, 4.0 * PI];
    for alpha in [1.9, 1.99] {
        assert!((single_order_slope(&fam, alpha, &xi) + xi.iter().map(|x| x * x).sum::<f64>().sqrt().ln()).abs() < 1e-12);
    }
}
