use fracops_core::*;
use fracops_core::rl_nd::*;
use fracops_core::grid::{SampledFunction1D, UniformGrid1D};
use fracops_core::rl::rl_integral;

fn square(n: usize) -> BoxGridND {
    BoxGridND::cube(2, 0.0, 1.0, n).unwrap()
}

fn line(n: usize) -> BoxGridND {
    BoxGridND::cube(1, 0.0, 1.0, n).unwrap()
}

#[test]
fn iterated_integral_of_one() {
    let g = square(16);
    let one = SampledFunctionND::constant(g.clone(), 1.0);
    let out = rl_integral_nd(&MultiOrder::new(vec![1.0, 1.0]).unwrap(), &one).unwrap();
    for flat in 0..g.len() {
        let p = g.point(&g.multi_index(flat));
        assert!((out.values()[flat].re - p[0] * p[1]).abs() < 1e-14);
    }
    let e1 = rl_integral_nd(&MultiOrder::unit(2, 0).unwrap(), &one).unwrap();
    for flat in 0..g.len() {
        let p = g.point(&g.multi_index(flat));
        assert!((e1.values()[flat].re - p[0]).abs() < 1e-14);
    }
}

#[test]
fn zero_order_is_bitwise_identity() {
    let f = SampledFunctionND::sample(square(9), |p| (p[0] - 2.0 * p[1]).exp()).unwrap();
    let out = rl_integral_nd(&MultiOrder::new(vec![0.0, 0.0]).unwrap(), &f).unwrap();
    assert_eq!(out, f);
}

#[test]
fn axis_order_independent() {
    let g = BoxGridND::new(vec![
        UniformGrid1D::new(0.0, 1.0, 20).unwrap(),
        UniformGrid1D::new(0.0, 2.0, 13).unwrap(),
        UniformGrid1D::new(0.0, 0.5, 7).unwrap(),
    ])
    .unwrap();
    let f = SampledFunctionND::sample(g, |p| (p[0] + p[1] * p[2]).cos()).unwrap();
    let alpha = MultiOrder::new(vec![0.3, 1.2, 0.7]).unwrap();
    let a = rl_integral_nd_axis_order(&alpha, &f, &[0, 1, 2]).unwrap();
    let b = rl_integral_nd_axis_order(&alpha, &f, &[2, 0, 1]).unwrap();
    let scale = a.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    assert!(a.linf_distance(&b).unwrap() < 1e-12 * scale);
    assert!(rl_integral_nd_axis_order(&alpha, &f, &[0, 0, 1]).is_err());
}

#[test]
fn one_dimensional_sweep_matches_rl_core() {
    let g1 = UniformGrid1D::new(0.0, 1.0, 64).unwrap();
    let f1 = SampledFunction1D::sample(g1, |t| t.sin()).unwrap();
    let fnd = SampledFunctionND::sample(line(64), |p| p[0].sin()).unwrap();
    let a = rl_integral(0.4, &f1).unwrap();
    let b = rl_integral_nd(&MultiOrder::new(vec![0.4]).unwrap(), &fnd).unwrap();
    for (x, y) in a.values().iter().zip(b.values()) {
        assert!((x - y).norm() < 1e-15);
    }
}

#[test]
fn dimension_mismatch_rejected() {
    let f = SampledFunctionND::constant(square(4), 1.0);
    assert!(matches!(
        rl_integral_nd(&MultiOrder::new(vec![1.0]).unwrap(), &f),
        Err(FracError::DimensionMismatch { .. })
    ));
}

#[test]
fn index_law_2d_on_cosine() {
    let f = SampledFunctionND::sample(square(256), |p| (p[0] + p[1]).cos()).unwrap();
    let half = MultiOrder::new(vec![0.5, 0.5]).unwrap();
    let twice = rl_integral_nd(&half, &rl_integral_nd(&half, &f).unwrap()).unwrap();
    let once = rl_integral_nd(&MultiOrder::new(vec![1.0, 1.0]).unwrap(), &f).unwrap();
    assert!(twice.l1_distance(&once).unwrap() < 5e-3);
}

#[test]
fn convolution_examples() {
    let g = line(64);
    let one = SampledFunctionND::constant(g.clone(), 1.0);
    let c = truncated_convolution(&one, &one).unwrap();
    for flat in 0..g.len() {
        assert!((c.values()[flat].re - g.point(&[flat])[0]).abs() < 1e-14);
    }
    let f = SampledFunctionND::sample(g.clone(), |p| (3.0 * p[0]).exp()).unwrap();
    let c = truncated_convolution(&one, &f).unwrap();
    let g1 = UniformGrid1D::new(0.0, 1.0, 64).unwrap();
    let i1 = rl_integral(1.0, &SampledFunction1D::sample(g1, |t| (3.0 * t).exp()).unwrap()).unwrap();
    for (x, y) in c.values().iter().zip(i1.values()) {
        assert!((x - y).norm() < 1e-12 * y.norm().max(1.0));
    }
    let s = SampledFunctionND::sample(line(1000), |p| p[0]).unwrap();
    let c = truncated_convolution(&s, &SampledFunctionND::constant(line(1000), 1.0)).unwrap();
    assert!((c.values()[1000].re - 0.5).abs() < 1e-6);
}

#[test]
fn convolution_needs_zero_corner() {
    let g = BoxGridND::cube(1, 1.0, 2.0, 8).unwrap();
    let one = SampledFunctionND::constant(g, 1.0);
    assert!(matches!(truncated_convolution(&one, &one), Err(FracError::InvalidGrid(_))));
    let other = SampledFunctionND::constant(line(8), 1.0);
    assert!(truncated_convolution(&one, &other).is_err());
}

#[test]
fn commutation_examples() {
    let one = SampledFunctionND::constant(line(1024), 1.0);
    let r = commutation_residual(&MultiOrder::new(vec![1.0]).unwrap(), &one, &one).unwrap();
    assert!(r < 1e-6);

    let g = square(128);
    let one = SampledFunctionND::constant(g, 1.0);
    let r = commutation_residual(&MultiOrder::new(vec![0.5, 0.5]).unwrap(), &one, &one).unwrap();
    assert!(r < 5e-3, "{r}");
}

#[test]
fn commutation_shrinks_for_polynomial_kernel() {
    let residual = |n: usize| {
        let h = SampledFunctionND::sample(line(n), |p| p[0] * p[0] - p[0]).unwrap();
        let f = SampledFunctionND::sample(line(n), |p| (2.0 * p[0]).cos()).unwrap();
        commutation_residual(&MultiOrder::new(vec![0.7]).unwrap(), &h, &f).unwrap()
    };
    let (a, b) = (residual(256), residual(512));
    assert!(b < a, "{a} {b}");
}
