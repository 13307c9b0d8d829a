use num_complex::Complex64;
use fracops_core::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn unit(n: usize) -> UniformGrid1D {
    UniformGrid1D::new(0.0, 1.0, n).unwrap()
}

#[test]
fn kernel_examples() {
    assert_eq!(rl_kernel(1.0, 0.37).unwrap(), 1.0);
    assert!((rl_kernel(2.0, 3.0).unwrap() - 3.0).abs() < 1e-15);
    assert!((rl_kernel(0.5, 1.0).unwrap() - 1.0 / PI.sqrt()).abs() < 1e-15);
    assert!(matches!(rl_kernel(0.5, 0.0), Err(FracError::KernelDomain(_))));
    assert!(matches!(rl_kernel(-1.0, 1.0), Err(FracError::InvalidOrder(_))));
}

#[test]
fn order_one_of_one_is_cumulative() {
    let g = unit(64);
    let out = rl_integral(1.0, &SampledFunction1D::constant(g, 1.0)).unwrap();
    for (k, t) in g.nodes().enumerate() {
        assert!((out.value(k).re - t).abs() < 1e-14);
    }
}

#[test]
fn half_order_of_one_at_one() {
    let out = rl_integral(0.5, &SampledFunction1D::constant(unit(4096), 1.0)).unwrap();
    assert!((out.last().re - 2.0 / PI.sqrt()).abs() < 1e-4);
    assert_eq!(out.value(0).re, 0.0);
}

#[test]
fn half_twice_is_one_on_cosine() {
    let f = SampledFunction1D::sample(unit(2048), f64::cos).unwrap();
    let twice = rl_integral(0.5, &rl_integral(0.5, &f).unwrap()).unwrap();
    let once = rl_integral(1.0, &f).unwrap();
    assert!(twice.l1_distance(&once).unwrap() < 5e-4);
}

#[test]
fn shifted_examples() {
    let g = UniformGrid1D::new(2.0, 3.0, 8).unwrap();
    let out = rl_integral_shifted(1.0, &SampledFunction1D::constant(g, 1.0)).unwrap();
    for (k, t) in g.nodes().enumerate() {
        assert!((out.value(k).re - (t - 2.0)).abs() < 1e-14);
    }
    let g = UniformGrid1D::new(-1.0, 0.0, 4096).unwrap();
    let out = rl_integral_shifted(0.5, &SampledFunction1D::constant(g, 1.0)).unwrap();
    assert!((out.last().re - 2.0 / PI.sqrt()).abs() < 1e-4);
    let f = SampledFunction1D::sample(unit(100), |t| t.exp()).unwrap();
    assert_eq!(rl_integral_shifted(0.7, &f).unwrap(), rl_integral(0.7, &f).unwrap());
}

#[test]
fn order_one_is_bitwise_trapezoid() {
    let f = SampledFunction1D::sample(unit(333), |t| (3.0 * t).sin() + t * t).unwrap();
    assert_eq!(rl_integral(1.0, &f).unwrap(), f.cumulative_trapezoid());
    let z = f.scale(Complex64::new(0.3, -1.7));
    assert_eq!(rl_integral(1.0, &z).unwrap(), z.cumulative_trapezoid());
}

#[test]
fn rejects_nonpositive_order() {
    let f = SampledFunction1D::constant(unit(4), 1.0);
    assert!(rl_integral(0.0, &f).is_err());
    assert!(rl_integral(f64::NAN, &f).is_err());
}

#[test]
fn estimate_order_examples() {
    let one = SampledFunction1D::constant(unit(512), 1.0);
    let half = rl_integral(0.5, &one).unwrap();
    assert!((estimate_order(&half).unwrap() - 0.5).abs() < 1e-3);
    let first = rl_integral(1.0, &one).unwrap();
    assert!((estimate_order(&first).unwrap() - 1.0).abs() < 1e-3);
    let shifted = SampledFunction1D::constant(UniformGrid1D::new(3.0, 5.0, 256).unwrap(), 1.0);
    let g = rl_integral(1.7, &shifted).unwrap();
    assert!((estimate_order(&g).unwrap() - 1.7).abs() < 1e-3);
}

#[test]
fn estimate_order_rejects_nonpositive() {
    let f = SampledFunction1D::sample(unit(16), |t| t - 0.5).unwrap();
    assert!(matches!(estimate_order(&f), Err(FracError::NonPositive { index: 1, .. })));
}

#[test]
fn continuity_in_order() {
    let one = SampledFunction1D::constant(unit(256), 1.0);
    let base = rl_integral(0.6, &one).unwrap();
    let gaps: Vec<f64> = [0.1, 0.01, 0.001]
        .iter()
        .map(|d| rl_integral(0.6 + d, &one).unwrap().linf_distance(&base).unwrap())
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 1e-3);
}

#[test]
fn index_law_converges_under_refinement() {
    let residual = |n: usize| {
        let f = SampledFunction1D::sample(unit(n), f64::cos).unwrap();
        let lhs = rl_integral(0.5, &rl_integral(0.5, &f).unwrap()).unwrap();
        lhs.l1_distance(&rl_integral(1.0, &f).unwrap()).unwrap()
    };
    let coarse = residual(512);
    let fine = residual(4096);
    let order = (coarse / fine).log2() / 3.0;
    assert!(order >= 1.4, "order {order}, residuals {coarse} {fine}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn linear_in_function(a in proptest::collection::vec(-5.0f64..5.0, 33),
                          b in proptest::collection::vec(-5.0f64..5.0, 33),
                          c1 in -3.0f64..3.0, c2 in -3.0f64..3.0,
                          alpha in 0.05f64..4.0) {
        let f1 = SampledFunction1D::from_real(unit(32), a).unwrap();
        let f2 = SampledFunction1D::from_real(unit(32), b).unwrap();
        let combo = f1.scale_real(c1).add(&f2.scale_real(c2)).unwrap();
        let lhs = rl_integral(alpha, &combo).unwrap();
        let rhs = rl_integral(alpha, &f1).unwrap().scale_real(c1)
            .add(&rl_integral(alpha, &f2).unwrap().scale_real(c2)).unwrap();
        prop_assert!(lhs.linf_distance(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn nonnegative_in_nonnegative_out(vals in proptest::collection::vec(0.0f64..5.0, 65),
                                      alpha in 0.05f64..5.0) {
        let f = SampledFunction1D::from_real(unit(64), vals).unwrap();
        let out = rl_integral(alpha, &f).unwrap();
        prop_assert!(out.min_real() >= 0.0);
    }
}
