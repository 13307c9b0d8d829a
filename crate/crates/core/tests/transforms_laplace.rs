use fracops_core::*;
use fracops_core::transforms::*;
use fracops_core::special::gamma;
use fracops_core::grid::UniformGrid1D;
use fracops_core::rl::rl_integral;

#[test]
fn transform_of_one() {
    let grid = UniformGrid1D::new(0.0, 40.0, 16384).unwrap();
    let one = SampledFunction1D::constant(grid, 1.0);
    let v = laplace_transform(&one, 2.0, Some(GrowthBound::new(1.0, 0.0).unwrap())).unwrap();
    assert!((v.value - 0.5).abs() < 1e-8, "{}", v.value);
    let tail = v.tail_bound.unwrap();
    assert!((tail - (-80f64).exp() / 2.0).abs() < 1e-12 * tail);
}

#[test]
fn transform_of_half_integral_of_one() {
    let grid = UniformGrid1D::new(0.0, 40.0, 16384).unwrap();
    let f = rl_integral(0.5, &SampledFunction1D::constant(grid, 1.0)).unwrap();
    let v = laplace_transform(&f, 1.0, None).unwrap();
    assert!((v.value - 1.0).abs() < 1e-4);
}

#[test]
fn tail_bound_soundness() {
    let grid = UniformGrid1D::new(0.0, 10.0, 4096).unwrap();
    for &alpha in &[0.25, 0.5, 1.5] {
        let f = rl_integral(alpha, &SampledFunction1D::constant(grid, 1.0)).unwrap();
        let growth = GrowthBound::new(1.0 / gamma(alpha + 1.0), alpha).unwrap();
        for &x in &[1.0, 2.0, 4.0] {
            let v = laplace_transform(&f, x, Some(growth)).unwrap();
            let exact = x.powf(-1.0 - alpha);
            let budget = v.quadrature_error.unwrap() + v.tail_bound.unwrap();
            assert!((v.value - exact).abs() < budget, "alpha={alpha} x={x}");
        }
    }
}

#[test]
fn kernel_transform() {
    let v = kernel_laplace_transform(0.5, 4.0, 40.0, 16384).unwrap();
    assert!((v.value - 0.5).abs() < 1e-3);
    for &alpha in &[0.25, 1.0, 1.75, 3.0] {
        for &x in &[1.0, 3.0, 10.0] {
            let v = kernel_laplace_transform(alpha, x, 40.0, 16384).unwrap();
            let exact = x.powf(-alpha);
            assert!((v.value - exact).abs() < 1e-3 * exact, "alpha={alpha} x={x}: {}", v.value);
        }
    }
}

#[test]
fn argument_errors() {
    let grid = UniformGrid1D::new(0.0, 1.0, 8).unwrap();
    let one = SampledFunction1D::constant(grid, 1.0);
    assert!(laplace_transform(&one, 0.0, None).is_err());
    assert!(GrowthBound::new(-1.0, 0.0).is_err());
    assert!(GrowthBound::new(1.0, -0.5).is_err());
    let shifted = SampledFunction1D::constant(UniformGrid1D::new(1.0, 2.0, 8).unwrap(), 1.0);
    assert!(laplace_transform(&shifted, 1.0, None).is_err());
}
