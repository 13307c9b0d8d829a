use std::f64::consts::PI;
use fracops_core::special::*;

// Stirling series with upward recurrence; independent of the Lanczos path.
fn stirling_gamma(x: f64) -> f64 {
    let mut shift = 1.0;
    let mut z = x;
    while z < 20.0 {
        shift *= z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0))));
    let ln = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series;
    ln.exp() / shift
}

#[test]
fn half_is_sqrt_pi() {
    let g = gamma(0.5);
    assert!((g - PI.sqrt()).abs() < 1e-14);
    assert!((g - stirling_gamma(0.5)).abs() / g < 1e-12);
}

#[test]
fn integers_are_exact() {
    assert_eq!(gamma(1.0), 1.0);
    assert_eq!(gamma(2.0), 1.0);
    assert_eq!(gamma(3.0), 2.0);
    assert_eq!(gamma(6.0), 120.0);
}

#[test]
fn lanczos_matches_stirling_on_unit_to_thirty() {
    let mut x = 0.05;
    while x <= 30.0 {
        let a = gamma(x);
        let b = stirling_gamma(x);
        assert!((a - b).abs() / b < 1e-12, "x = {x}: {a} vs {b}");
        assert!((ln_gamma(x) - b.ln()).abs() < 1e-12 * b.ln().abs().max(1.0));
        x += 0.173;
    }
}

#[test]
fn incomplete_gamma_integer_closed_form() {
    // Γ(n, x) = (n-1)! e^{-x} Σ_{k<n} x^k / k!
    for n in 1..6 {
        for &x in &[0.3, 1.0, 2.5, 7.0, 40.0, 80.0] {
            let mut sum = 0.0;
            let mut term = 1.0;
            for k in 0..n {
                if k > 0 {
                    term *= x / k as f64;
                }
                sum += term;
            }
            let exact = gamma(n as f64) * (-x).exp() * sum;
            let got = upper_incomplete_gamma(n as f64, x);
            assert!((got - exact).abs() <= 1e-12 * exact, "n={n} x={x}");
        }
    }
}

#[test]
fn incomplete_gamma_half_order_by_quadrature() {
    // Γ(1.5, x) against a fine midpoint rule on u^{0.5} e^{-u}
    for &x in &[0.5, 2.0, 6.0] {
        let upper = x + 60.0;
        let n = 200_000;
        let h = (upper - x) / n as f64;
        let quad: f64 = (0..n)
            .map(|i| {
                let u = x + (i as f64 + 0.5) * h;
                u.sqrt() * (-u).exp()
            })
            .sum::<f64>()
            * h;
        let got = upper_incomplete_gamma(1.5, x);
        assert!((got - quad).abs() < 1e-9, "x={x}: {got} vs {quad}");
    }
}
