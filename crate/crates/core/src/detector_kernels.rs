//! Noise and dissipation kernels of a derivative-coupled detector on a
//! massless scalar field in 1+1 dimensions.
//!
//! The Wightman function of `d phi/d tau` along a worldline is
//!
//! ```text
//! G(tau1, tau2) = -(1/4 pi) [ u'(tau1) u'(tau2) / (u(tau1) - u(tau2))^2
//!                           + v'(tau1) v'(tau2) / (v(tau1) - v(tau2))^2 ]
//! ```
//!
//! in light-cone coordinates, evaluated with `tau1 -> tau1 - i eps`.
//! `N = Re G` and `D = -Im G`. Kernels are reported without the coupling
//! factor; consumers multiply by `lambda^2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::domain::{Tolerances, UnitSystem};
use crate::error::{Error, Result};
use crate::quadrature::{self, Extrapolated};
use crate::trajectory::{AcceleratedTrajectory, InertialTrajectory};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Worldline {
    Accelerated(AcceleratedTrajectory),
    Inertial(InertialTrajectory),
}

impl Worldline {
    fn light_cone(&self, tau: Complex64) -> (Complex64, Complex64) {
        match self {
            Worldline::Accelerated(t) => t.light_cone(tau),
            Worldline::Inertial(t) => t.light_cone(tau),
        }
    }

    fn light_cone_rate(&self, tau: Complex64) -> (Complex64, Complex64) {
        match self {
            Worldline::Accelerated(t) => t.light_cone_rate(tau),
            Worldline::Inertial(t) => t.light_cone_rate(tau),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub trajectory: Worldline,
    pub coupling_lambda: f64,
    /// Imaginary proper-time shift, same units as `tau`.
    pub epsilon: f64,
    /// Width of the Gaussian smearing profile `exp(-d^2/sigma^2)`.
    pub smearing_sigma: Option<f64>,
}

impl KernelSpec {
    pub fn new(trajectory: Worldline, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::domain(format!(
                "epsilon must be positive (the kernels are distributions at epsilon = 0), got {epsilon}"
            )));
        }
        Ok(KernelSpec {
            trajectory,
            coupling_lambda: 1.0,
            epsilon,
            smearing_sigma: None,
        })
    }

    pub fn with_smearing(mut self, sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::domain(format!("smearing sigma must be non-negative, got {sigma}")));
        }
        self.smearing_sigma = Some(sigma);
        Ok(self)
    }

    pub fn with_epsilon(self, epsilon: f64) -> Result<Self> {
        let mut s = KernelSpec::new(self.trajectory, epsilon)?;
        s.coupling_lambda = self.coupling_lambda;
        s.smearing_sigma = self.smearing_sigma;
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub tau1: f64,
    pub tau2: f64,
    pub noise: f64,
    pub dissipation: f64,
}

fn light_cone_pair(w1: &Worldline, w2: &Worldline, tau1: Complex64, tau2: Complex64) -> Complex64 {
    let (u1, v1) = w1.light_cone(tau1);
    let (u2, v2) = w2.light_cone(tau2);
    let (du1, dv1) = w1.light_cone_rate(tau1);
    let (du2, dv2) = w2.light_cone_rate(tau2);
    -(du1 * du2 / (u1 - u2).powi(2) + dv1 * dv2 / (v1 - v2).powi(2)) / (4.0 * PI)
}

/// `<(d phi/d tau)(tau1) (d phi/d tau)(tau2)>` in the Minkowski vacuum.
pub fn two_point_derivative(spec: &KernelSpec, tau1: f64, tau2: f64) -> Result<Complex64> {
    if !(spec.epsilon > 0.0) {
        return Err(Error::domain("epsilon must be positive"));
    }
    let t1 = Complex64::new(tau1, -spec.epsilon);
    let t2 = Complex64::new(tau2, 0.0);
    Ok(light_cone_pair(&spec.trajectory, &spec.trajectory, t1, t2))
}

pub fn noise_kernel(spec: &KernelSpec, tau1: f64, tau2: f64) -> Result<f64> {
    Ok(two_point_derivative(spec, tau1, tau2)?.re)
}

pub fn dissipation_kernel(spec: &KernelSpec, tau1: f64, tau2: f64) -> Result<f64> {
    Ok(-two_point_derivative(spec, tau1, tau2)?.im)
}

pub fn sample(spec: &KernelSpec, tau1: f64, tau2: f64) -> Result<KernelSample> {
    let g = if spec.smearing_sigma.is_some_and(|s| s > 0.0) {
        smeared_two_point(spec, tau1, tau2)?
    } else {
        two_point_derivative(spec, tau1, tau2)?
    };
    Ok(KernelSample {
        tau1,
        tau2,
        noise: g.re,
        dissipation: -g.im,
    })
}

/// Closed form for a detector at rest: `-(1/2 pi) / (delta - i eps)^2`.
pub fn inertial_closed_form(delta: f64, epsilon: f64) -> Complex64 {
    let z = Complex64::new(delta, -epsilon);
    -1.0 / (2.0 * PI * z * z)
}

/// Closed form on the hyperbola: `-(alpha^2/8 pi) / sinh^2(alpha (delta - i eps)/2)`.
pub fn accelerated_closed_form(alpha: f64, delta: f64, epsilon: f64) -> Complex64 {
    let z = Complex64::new(delta, -epsilon) * (0.5 * alpha);
    -alpha * alpha / (8.0 * PI * z.sinh().powi(2))
}

/// Detector at rest in a thermal state; `rate = k_B T / hbar`.
pub fn thermal_closed_form(rate: f64, delta: f64, epsilon: f64) -> Complex64 {
    let a = PI * rate;
    let z = Complex64::new(delta, -epsilon) * a;
    -a * a / (2.0 * PI * z.sinh().powi(2))
}

/// Noise kernel of a static detector in a thermal field state.
pub fn thermal_inertial_noise(temperature: f64, tau1: f64, tau2: f64, epsilon: f64, units: &UnitSystem) -> Result<f64> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::domain(format!("temperature must be positive, got {temperature}")));
    }
    if !(epsilon > 0.0) {
        return Err(Error::domain("epsilon must be positive"));
    }
    let rate = units.kb * temperature / units.hbar;
    Ok(thermal_closed_form(rate, tau1 - tau2, epsilon).re)
}

/// `int_0^inf dk k exp(-i k z)` for `Im z < 0`, by direct quadrature.
fn mode_sum(z: Complex64, tol: &Tolerances) -> Result<Complex64> {
    if !(z.im < 0.0) {
        return Err(Error::domain("mode sum needs a damped phase"));
    }
    let r = quadrature::integrate_oscillatory_regulated(
        |k| Complex64::from_polar(k, -k * z.re),
        0.0,
        -z.re,
        -z.im,
        tol,
    )?;
    Ok(r.value)
}

/// The vacuum Wightman function of `d phi/d tau` built directly from the
/// plane-wave mode sum `(1/4 pi) int dk k [u'u' exp(-ik du) + v'v' exp(-ik dv)]`,
/// with `tau1 -> tau1 - i eps` along the worldline. Independent of the
/// light-cone closed forms; used to validate them.
pub fn mode_integral_two_point(w: &Worldline, tau1: f64, tau2: f64, epsilon: f64, tol: &Tolerances) -> Result<Complex64> {
    let t1 = Complex64::new(tau1, -epsilon);
    let t2 = Complex64::new(tau2, 0.0);
    let (u1, v1) = w.light_cone(t1);
    let (u2, v2) = w.light_cone(t2);
    let (du1, dv1) = w.light_cone_rate(t1);
    let (du2, dv2) = w.light_cone_rate(t2);
    let su = mode_sum(u1 - u2, tol)?;
    let sv = mode_sum(v1 - v2, tol)?;
    Ok((du1 * du2 * su + dv1 * dv2 * sv) / (4.0 * PI))
}

/// Thermal counterpart of [`mode_integral_two_point`] for a static detector:
/// `(1/2 pi) int dk k [(1 + n(k)) exp(-ikz) + n(k) exp(ikz)]`, `z = delta - i eps`,
/// with Bose occupation `n(k) = 1/(exp(k/rate) - 1)`. Needs `eps < 1/rate`.
pub fn thermal_mode_integral(rate: f64, delta: f64, epsilon: f64, tol: &Tolerances) -> Result<Complex64> {
    if !(epsilon > 0.0 && epsilon * rate < 1.0) {
        return Err(Error::domain("thermal mode sum needs 0 < eps < hbar/(k_B T)"));
    }
    let occupation = |k: f64| 1.0 / (k / rate).exp_m1();
    let emission = quadrature::integrate_oscillatory_regulated(
        |k| {
            let weight = if k == 0.0 { rate } else { k * (1.0 + occupation(k)) };
            Complex64::from_polar(weight, -k * delta)
        },
        0.0,
        -delta,
        epsilon,
        tol,
    )?;
    let absorption = quadrature::integrate_semi_infinite(
        |k| {
            let weight = if k == 0.0 { rate } else { k * occupation(k) };
            Complex64::from_polar(weight * (k * epsilon).exp(), k * delta)
        },
        1.0 / rate - epsilon,
        tol,
    )?;
    Ok((emission.value + absorption.value) / (2.0 * PI))
}

/// Noise and dissipation after extrapolation to `eps = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapolatedKernel {
    pub noise: Extrapolated,
    pub dissipation: Extrapolated,
}

/// Evaluates `g` on the ladder `eps0 / 2^k` and extrapolates in `eps^2`
/// (the real part of a real-analytic function of `delta - i eps` is even in eps).
fn extrapolate_eps<F: Fn(f64) -> Result<Complex64>>(g: F, eps0: f64, tol: &Tolerances) -> Result<ExtrapolatedKernel> {
    let mut noise = Vec::with_capacity(tol.richardson_levels);
    let mut diss = Vec::with_capacity(tol.richardson_levels);
    for k in 0..tol.richardson_levels {
        let eps = eps0 / f64::powi(2.0, k as i32);
        let v = g(eps)?;
        noise.push((eps * eps, Complex64::new(v.re, 0.0)));
        diss.push((eps, Complex64::new(-v.im, 0.0)));
    }
    Ok(ExtrapolatedKernel {
        noise: quadrature::extrapolate_regulator(&noise)?,
        dissipation: quadrature::extrapolate_regulator(&diss)?,
    })
}

/// Kernels at `(tau1, tau2)` extrapolated from `spec.epsilon` downward.
pub fn extrapolated_kernel(spec: &KernelSpec, tau1: f64, tau2: f64, tol: &Tolerances) -> Result<ExtrapolatedKernel> {
    tol.validate()?;
    extrapolate_eps(
        |eps| {
            let s = spec.with_epsilon(eps)?;
            let k = sample(&s, tau1, tau2)?;
            Ok(Complex64::new(k.noise, -k.dissipation))
        },
        spec.epsilon,
        tol,
    )
}

pub fn extrapolated_thermal(temperature: f64, delta: f64, eps0: f64, units: &UnitSystem, tol: &Tolerances) -> Result<ExtrapolatedKernel> {
    if !(temperature > 0.0) {
        return Err(Error::domain(format!("temperature must be positive, got {temperature}")));
    }
    let rate = units.kb * temperature / units.hbar;
    extrapolate_eps(|eps| Ok(thermal_closed_form(rate, delta, eps)), eps0, tol)
}

/// Comparison of accelerated and inertial-vacuum dissipation kernels.
///
/// Off the light cone both kernels vanish as `eps -> 0`, so a plain relative
/// deviation is meaningless. Two measures are reported: the pointwise
/// difference of the extrapolated kernels relative to the local noise kernel,
/// and the relative difference of their pairings with the odd test function
/// `delta exp(-delta^2 / 2 w^2)`, `w = 1/alpha`, which probes the distributional
/// limit `D -> -(1/2) delta'`.
#[derive(Debug, Clone, PartialEq)]
pub struct DissipationReport {
    pub alpha: f64,
    /// `(delta, D_accelerated, D_inertial, |N_inertial|)` after extrapolation.
    pub points: Vec<(f64, f64, f64, f64)>,
    pub max_pointwise: f64,
    pub distributional: f64,
}

pub fn dissipation_equivalence_check(alpha: f64, grid: &[f64], eps0: f64, tol: &Tolerances) -> Result<DissipationReport> {
    let traj = AcceleratedTrajectory::new(alpha, 0.0)?;
    let acc = KernelSpec::new(Worldline::Accelerated(traj), eps0)?;
    let inertial = KernelSpec::new(Worldline::Inertial(InertialTrajectory::new(0.0, 0.0)?), eps0)?;
    let mut points = Vec::with_capacity(grid.len());
    let mut max_pointwise: f64 = 0.0;
    for &delta in grid {
        if delta == 0.0 {
            return Err(Error::domain("the dissipation comparison needs delta != 0"));
        }
        let a = extrapolated_kernel(&acc, delta, 0.0, tol)?;
        let i = extrapolated_kernel(&inertial, delta, 0.0, tol)?;
        let scale = i.noise.value.re.abs();
        let dev = (a.dissipation.value.re - i.dissipation.value.re).abs() / scale;
        max_pointwise = max_pointwise.max(dev);
        points.push((delta, a.dissipation.value.re, i.dissipation.value.re, scale));
    }
    let width = 1.0 / alpha;
    let pairing = |spec: &KernelSpec, eps: f64| -> Result<Complex64> {
        let s = spec.with_epsilon(eps)?;
        let f = |d: f64| Complex64::new(dissipation_kernel(&s, d, 0.0).unwrap_or(f64::NAN) * d * (-d * d / (2.0 * width * width)).exp(), 0.0);
        let edge = 12.0 * width;
        let breaks = [-edge, -10.0 * eps, -eps, 0.0, eps, 10.0 * eps, edge];
        let r = quadrature::integrate_with_breaks(f, &breaks, tol)?;
        if !r.value.is_finite() {
            return Err(Error::domain("non-finite dissipation kernel"));
        }
        Ok(r.value)
    };
    let limit = |spec: &KernelSpec| -> Result<Complex64> {
        let samples = (0..tol.richardson_levels)
            .map(|k| {
                let eps = eps0 / f64::powi(2.0, k as i32);
                pairing(spec, eps).map(|v| (eps, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(quadrature::extrapolate_regulator(&samples)?.value)
    };
    let (pa, pi) = (limit(&acc)?, limit(&inertial)?);
    let distributional = ((pa - pi) / pi).norm();
    Ok(DissipationReport {
        alpha,
        points,
        max_pointwise,
        distributional,
    })
}

/// Gaussian-smeared two-point function: the detector is spread over the
/// worldlines at proper distance `d` with weight `exp(-d^2/sigma^2)`,
/// normalized on the region `1 + alpha d/c > 0`.
fn smeared_two_point(spec: &KernelSpec, tau1: f64, tau2: f64) -> Result<Complex64> {
    let sigma = spec.smearing_sigma.unwrap_or(0.0);
    let traj = match spec.trajectory {
        Worldline::Accelerated(t) => t,
        Worldline::Inertial(_) => {
            // Rigid translation leaves an inertial worldline's correlator unchanged.
            return two_point_derivative(spec, tau1, tau2);
        }
    };
    if sigma == 0.0 {
        return two_point_derivative(spec, tau1, tau2);
    }
    let horizon = -traj.c / traj.alpha * traj.scale;
    let lo = (-8.0 * sigma).max(horizon * (1.0 - 1e-9));
    let hi = 8.0 * sigma;
    let (x, w) = quadrature::gauss_legendre(64);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let nodes: Vec<(f64, f64)> = x
        .iter()
        .zip(&w)
        .map(|(&x, &w)| {
            let d = mid + half * x;
            (d, w * half * (-(d / sigma).powi(2)).exp())
        })
        .collect();
    let norm: f64 = nodes.iter().map(|n| n.1).sum();
    let worldlines: Vec<Worldline> = nodes
        .iter()
        .map(|(d, _)| traj.smear(*d).map(Worldline::Accelerated))
        .collect::<Result<_>>()?;
    let t1 = Complex64::new(tau1, -spec.epsilon);
    let t2 = Complex64::new(tau2, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for (a, (_, wa)) in worldlines.iter().zip(&nodes) {
        for (b, (_, wb)) in worldlines.iter().zip(&nodes) {
            total += light_cone_pair(a, b, t1, t2) * (wa * wb);
        }
    }
    let g = total / (norm * norm);
    if !g.is_finite() {
        return Err(Error::NonConvergence {
            value: g.re,
            error_estimate: f64::INFINITY,
            evaluations: nodes.len() * nodes.len(),
        });
    }
    Ok(g)
}

/// Smeared kernels; requires `spec.smearing_sigma > 0`.
pub fn smeared_kernel(spec: &KernelSpec, tau1: f64, tau2: f64) -> Result<KernelSample> {
    match spec.smearing_sigma {
        Some(s) if s > 0.0 => sample(spec, tau1, tau2),
        _ => Err(Error::domain("smeared_kernel needs a positive smearing sigma")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accelerated(alpha: f64, eps: f64) -> KernelSpec {
        KernelSpec::new(Worldline::Accelerated(AcceleratedTrajectory::new(alpha, 0.0).unwrap()), eps).unwrap()
    }

    fn at_rest(eps: f64) -> KernelSpec {
        KernelSpec::new(Worldline::Inertial(InertialTrajectory::new(0.0, 0.0).unwrap()), eps).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn static_detector_closed_form() {
        let g = two_point_derivative(&at_rest(0.01), 1.0, 0.0).unwrap();
        assert!(rel(g, inertial_closed_form(1.0, 0.01)) < 1e-14);
        // Real part at delta = 1, eps = 0.01.
        assert!((g.re + 0.159_107_204_565_600_98).abs() < 1e-15);
        assert!(matches!(KernelSpec::new(at_rest(0.1).trajectory, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn moving_inertial_detector_sees_the_same_vacuum() {
        let moving = KernelSpec::new(Worldline::Inertial(InertialTrajectory::new(0.7, 3.0).unwrap()), 0.05).unwrap();
        for (t1, t2) in [(1.0, 0.0), (0.3, 2.0)] {
            let g = two_point_derivative(&moving, t1, t2).unwrap();
            assert!(rel(g, inertial_closed_form(t1 - t2, 0.05)) < 1e-12);
        }
    }

    #[test]
    fn accelerated_light_cone_route_matches_closed_form() {
        for alpha in [0.5, 1.0, 3.0] {
            let spec = accelerated(alpha, 0.02 / alpha);
            for (t1, t2) in [(0.5, 0.0), (-1.0, 1.2), (2.0, 2.5), (3.0, -0.5)] {
                let g = two_point_derivative(&spec, t1 / alpha, t2 / alpha).unwrap();
                let c = accelerated_closed_form(alpha, (t1 - t2) / alpha, spec.epsilon);
                assert!(rel(g, c) < 1e-10, "alpha={alpha} ({t1},{t2})");
            }
        }
    }

    #[test]
    fn symmetry_of_noise_and_dissipation() {
        let spec = accelerated(1.3, 0.05);
        let grid: Vec<f64> = (0..10).map(|k| -2.0 + 0.45 * k as f64).collect();
        for &a in &grid {
            for &b in &grid {
                let n1 = noise_kernel(&spec, a, b).unwrap();
                let n2 = noise_kernel(&spec, b, a).unwrap();
                let d1 = dissipation_kernel(&spec, a, b).unwrap();
                let d2 = dissipation_kernel(&spec, b, a).unwrap();
                let scale = n1.abs().max(d1.abs());
                assert!((n1 - n2).abs() <= 1e-12 * scale);
                assert!((d1 + d2).abs() <= 1e-12 * scale);
            }
            assert!(dissipation_kernel(&spec, a, a).unwrap().abs() <= 1e-12 * noise_kernel(&spec, a, a).unwrap().abs());
        }
    }

    #[test]
    fn stationarity() {
        let alpha = 1.0;
        let spec = accelerated(alpha, 0.01);
        for (t1, t2) in [(0.0, 0.5), (1.0, -1.0), (-0.8, 0.3), (2.0, 2.2)] {
            let base = two_point_derivative(&spec, t1, t2).unwrap();
            for s in [0.3, 0.7, 1.3] {
                let shifted = two_point_derivative(&spec, t1 + s / alpha, t2 + s / alpha).unwrap();
                assert!((shifted.re - base.re).abs() <= 1e-8 * base.re.abs());
                assert!((shifted.im - base.im).abs() <= 1e-8 * base.im.abs());
            }
        }
    }

    #[test]
    fn thermal_form_depends_on_sinh_squared_only() {
        // sinh^2(z) is invariant under z -> -z and z -> z + i pi.
        let alpha = 2.0;
        for delta in [0.3, 1.1] {
            let a = accelerated_closed_form(alpha, delta, 0.0);
            let b = accelerated_closed_form(alpha, -delta, 0.0);
            let c = accelerated_closed_form(alpha, delta, -2.0 * PI / alpha);
            assert!(rel(a, b) < 1e-14 && rel(a, c) < 1e-12);
        }
    }

    #[test]
    fn thermal_vacuum_limit() {
        let u = UnitSystem::NATURAL;
        for t in [1e-4, 1e-5] {
            let n = thermal_inertial_noise(t, 1.0, 0.0, 0.01, &u).unwrap();
            let v = inertial_closed_form(1.0, 0.01).re;
            assert!(((n - v) / v).abs() < 1e-6);
        }
        assert!(thermal_inertial_noise(0.0, 1.0, 0.0, 0.01, &u).is_err());
    }

    #[test]
    fn unruh_equivalence() {
        let u = UnitSystem::NATURAL;
        let tol = Tolerances::default();
        for alpha in [1.0, 4.0] {
            let t_u = u.unruh_temperature(alpha);
            let spec = accelerated(alpha, 0.02 / alpha);
            for d in [0.5, 1.0, 2.0] {
                let delta = d / alpha;
                let acc = extrapolated_kernel(&spec, delta, 0.0, &tol).unwrap();
                let th = extrapolated_thermal(t_u, delta, spec.epsilon, &u, &tol).unwrap();
                assert!(rel(acc.noise.value, th.noise.value) < 1e-6);
            }
        }
    }

    #[test]
    fn dissipation_equivalence() {
        let tol = Tolerances::default();
        for alpha in [1.0, 10.0] {
            let grid: Vec<f64> = [0.5, 1.0, 2.0].iter().map(|d| d / alpha).collect();
            let r = dissipation_equivalence_check(alpha, &grid, 0.02 / alpha, &tol).unwrap();
            assert!(r.max_pointwise < 1e-6, "{r:?}");
            assert!(r.distributional < 1e-6, "{r:?}");
        }
    }

    #[test]
    fn flat_limit() {
        let tol = Tolerances::default();
        let acc = extrapolated_kernel(&accelerated(1e-3, 0.01), 1.0, 0.0, &tol).unwrap();
        let flat = extrapolated_kernel(&at_rest(0.01), 1.0, 0.0, &tol).unwrap();
        assert!(rel(acc.noise.value, flat.noise.value) < 1e-6);
        assert!((acc.dissipation.value - flat.dissipation.value).norm() < 1e-6 * flat.noise.value.norm());
    }

    #[test]
    fn smearing_limits() {
        let base = accelerated(1.0, 0.05);
        let plain = sample(&base, 1.0, 0.0).unwrap();
        let thin = smeared_kernel(&base.with_smearing(1e-3).unwrap(), 1.0, 0.0).unwrap();
        assert!(((thin.noise - plain.noise) / plain.noise).abs() < 0.01);
        let wide = base.with_smearing(0.1).unwrap();
        let diag = smeared_kernel(&wide, 0.7, 0.7).unwrap();
        assert!(diag.dissipation.abs() <= 1e-12 * diag.noise.abs());
        assert!(smeared_kernel(&base, 1.0, 0.0).is_err());
        assert!(base.with_smearing(-1.0).is_err());
    }
}
