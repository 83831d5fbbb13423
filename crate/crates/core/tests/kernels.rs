use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use vacuum_kinetics::detector_kernels::{self, KernelSpec, Worldline};
use vacuum_kinetics::trajectory::{AcceleratedTrajectory, InertialTrajectory};
use vacuum_kinetics::{Tolerances, UnitSystem};

fn accelerated(alpha: f64, eps: f64) -> KernelSpec {
    KernelSpec::new(Worldline::Accelerated(AcceleratedTrajectory::new(alpha, 0.0).unwrap()), eps).unwrap()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a.re - b.re).abs() <= tol * b.re.abs() && (a.im - b.im).abs() <= tol * b.norm()
}

#[test]
fn closed_forms_match_mode_integrals() {
    let tol = Tolerances::default();
    let eps = 0.01;
    let cases = [
        (Worldline::Inertial(InertialTrajectory::new(0.0, 0.0).unwrap()), 1.0, 0.0, detector_kernels::inertial_closed_form(1.0, eps)),
        (Worldline::Inertial(InertialTrajectory::new(-0.4, 2.0).unwrap()), 1.5, 0.5, detector_kernels::inertial_closed_form(1.0, eps)),
        (
            Worldline::Accelerated(AcceleratedTrajectory::new(1.0, 0.0).unwrap()),
            1.0,
            0.0,
            detector_kernels::accelerated_closed_form(1.0, 1.0, eps),
        ),
        (
            Worldline::Accelerated(AcceleratedTrajectory::new(2.0, 0.3).unwrap()),
            0.2,
            0.7,
            detector_kernels::accelerated_closed_form(2.0, -0.5, eps),
        ),
    ];
    for (w, t1, t2, closed) in cases {
        let brute = detector_kernels::mode_integral_two_point(&w, t1, t2, eps, &tol).unwrap();
        assert!(close(brute, closed, 1e-10), "{brute} vs {closed}");
    }
}

#[test]
fn thermal_closed_form_matches_bose_mode_sum() {
    let tol = Tolerances::default();
    for (rate, delta) in [(1.0 / (2.0 * std::f64::consts::PI), 1.0), (0.5, 0.7), (2.0, 0.3)] {
        let brute = detector_kernels::thermal_mode_integral(rate, delta, 0.01, &tol).unwrap();
        let closed = detector_kernels::thermal_closed_form(rate, delta, 0.01);
        assert!(close(brute, closed, 1e-9), "rate {rate}: {brute} vs {closed}");
    }
}

#[test]
fn thermal_kernel_is_periodic_in_imaginary_time() {
    let rate = 0.8;
    for delta in [0.4, 1.0, 2.5] {
        let a = detector_kernels::thermal_closed_form(rate, delta, 0.05);
        let b = detector_kernels::thermal_closed_form(rate, delta, 0.05 + 1.0 / rate);
        assert!((a - b).norm() <= 1e-12 * a.norm());
    }
}

#[test]
fn inertial_noise_reference_value() {
    let n = detector_kernels::noise_kernel(
        &KernelSpec::new(Worldline::Inertial(InertialTrajectory::new(0.0, 0.0).unwrap()), 0.01).unwrap(),
        1.0,
        0.0,
    )
    .unwrap();
    assert_relative_eq!(n, -0.159_107_204_565_600_98, max_relative = 1e-14);
}

#[test]
fn smeared_noise_fixture() {
    let tol = Tolerances::default();
    let spec = accelerated(1.0, 0.02);
    let plain = detector_kernels::extrapolated_kernel(&spec, 1.0, 0.0, &tol).unwrap().noise.value.re;
    let smeared = detector_kernels::extrapolated_kernel(&spec.with_smearing(0.1).unwrap(), 1.0, 0.0, &tol)
        .unwrap()
        .noise
        .value
        .re;
    assert!(smeared.is_finite());
    assert!((smeared / plain - 1.0).abs() < 0.1);
    assert_relative_eq!(smeared, -0.151_640_089_415_344_7, max_relative = 1e-8);
}

#[test]
fn unruh_temperature_scaling() {
    let u = UnitSystem::NATURAL;
    let tol = Tolerances::default();
    let alpha = 2.5;
    let spec = accelerated(alpha, 0.02 / alpha);
    let acc = detector_kernels::extrapolated_kernel(&spec, 0.8 / alpha, 0.0, &tol).unwrap();
    let th = detector_kernels::extrapolated_thermal(u.unruh_temperature(alpha), 0.8 / alpha, spec.epsilon, &u, &tol).unwrap();
    assert_relative_eq!(acc.noise.value.re, th.noise.value.re, max_relative = 1e-6);
    let hotter = detector_kernels::extrapolated_thermal(u.unruh_temperature(2.0 * alpha), 0.8 / alpha, spec.epsilon, &u, &tol).unwrap();
    assert!((hotter.noise.value.re - acc.noise.value.re).abs() > 1e-3 * acc.noise.value.re.abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn noise_symmetric_dissipation_antisymmetric(alpha in 0.2f64..5.0, t1 in -3.0f64..3.0, t2 in -3.0f64..3.0) {
        let spec = accelerated(alpha, 0.05 / alpha);
        let (a, b) = (t1 / alpha, t2 / alpha);
        let x = detector_kernels::sample(&spec, a, b).unwrap();
        let y = detector_kernels::sample(&spec, b, a).unwrap();
        let scale = x.noise.abs().max(x.dissipation.abs());
        prop_assert!((x.noise - y.noise).abs() <= 1e-12 * scale);
        prop_assert!((x.dissipation + y.dissipation).abs() <= 1e-12 * scale);
    }

    #[test]
    fn accelerated_kernels_are_stationary(alpha in 0.2f64..5.0, t1 in -3.0f64..3.0, d in 0.1f64..3.0, s in -2.0f64..2.0) {
        let spec = accelerated(alpha, 0.01 / alpha);
        let (a, b) = (t1 / alpha, (t1 + d) / alpha);
        let x = detector_kernels::sample(&spec, a, b).unwrap();
        let y = detector_kernels::sample(&spec, a + s / alpha, b + s / alpha).unwrap();
        prop_assert!((x.noise - y.noise).abs() <= 1e-8 * x.noise.abs());
        prop_assert!((x.dissipation - y.dissipation).abs() <= 1e-8 * x.dissipation.abs());
    }
}
