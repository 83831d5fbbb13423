//! The acceptance suite: one check per published limit or property, each
//! with a pinned tolerance and a runtime budget.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::casimir_polder::{CasimirPolder, ForceParts, WallScenario};
use crate::cavity_scheme::{self, AmplitudeMode, CavitySpec};
use crate::detector_kernels::{self, KernelSpec, Worldline};
use crate::domain::{AtomSpec, Tolerances, UnitSystem};
use crate::error::Result;
use crate::master_equation::{self, ChainRates, PhotonDistribution};
use crate::quadrature;
use crate::trajectory::{AcceleratedTrajectory, InertialTrajectory};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Measured quantities behind the verdict.
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.2} s of {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

type Check = fn() -> Result<(bool, String)>;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub budget_secs: u64,
    check: Check,
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let verdict = (self.check)();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(self.budget_secs);
        let (ok, mut detail) = match verdict {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if elapsed > budget {
            detail.push_str("; over the runtime budget");
        }
        Outcome {
            id: self.id,
            name: self.name,
            passed: ok && elapsed <= budget,
            detail,
            elapsed,
            budget,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "Casimir-Polder near limit", budget_secs: 5, check: near_limit },
        Criterion { id: 2, name: "Casimir-Polder far limit", budget_secs: 5, check: far_limit },
        Criterion { id: 3, name: "transient relaxation", budget_secs: 60, check: transient_relaxation },
        Criterion { id: 4, name: "moving atom", budget_secs: 30, check: moving_atom },
        Criterion { id: 5, name: "kernel stationarity", budget_secs: 10, check: kernel_stationarity },
        Criterion { id: 6, name: "Unruh thermality", budget_secs: 30, check: unruh_thermality },
        Criterion { id: 7, name: "adiabatic Boltzmann ratio", budget_secs: 60, check: adiabatic_ratio },
        Criterion { id: 8, name: "sudden-switch enhancement", budget_secs: 120, check: sudden_switch },
        Criterion { id: 9, name: "master equation", budget_secs: 10, check: master_equation_check },
        Criterion { id: 10, name: "constant-velocity formula", budget_secs: 5, check: constant_velocity },
        Criterion { id: 11, name: "oracle agreement", budget_secs: 60, check: oracle_agreement },
    ]
}

pub fn run_all() -> Vec<Outcome> {
    criteria().iter().map(Criterion::run).collect()
}

fn wall() -> Result<CasimirPolder> {
    Ok(CasimirPolder::new(AtomSpec::new(1.0, 1.0)?, UnitSystem::NATURAL))
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn near_limit() -> Result<(bool, String)> {
    let cp = wall()?;
    let r = 1e-3;
    let ratio = cp.stationary_potential(r)?.value / cp.asymptote_near(r)?;
    Ok(((0.99..=1.01).contains(&ratio), format!("U/U_near = {ratio:.6} at R = 1e-3")))
}

fn far_limit() -> Result<(bool, String)> {
    let cp = wall()?;
    let r = 1e3;
    let ratio = cp.stationary_potential(r)?.value / cp.asymptote_far(r)?;
    Ok(((0.99..=1.01).contains(&ratio), format!("U/U_far = {ratio:.6} at R = 1e3")))
}

fn transient_relaxation() -> Result<(bool, String)> {
    let cp = wall()?;
    let r = 1.0;
    let round_trip = 2.0 * r;
    let stationary = cp.stationary_force(r)?.force_z;
    let mut worst: f64 = 0.0;
    for multiple in [20.0, 25.0, 40.0, 80.0] {
        let f = cp.transient_force(&WallScenario::switched_on(r, 0.0, multiple * round_trip))?;
        worst = worst.max(rel(f.force_z, stationary));
    }
    Ok((worst <= 0.01, format!("max |F/F_sa - 1| = {worst:.3e} for t/(2R/c) in [20, 80]")))
}

fn moving_atom() -> Result<(bool, String)> {
    let cp = wall()?;
    let residual = |r: f64, r0: f64| -> Result<(f64, f64)> {
        let f = cp.moving_force(r, r0)?;
        match f.parts {
            ForceParts::Moving { stationary_part, residual_part } => Ok((stationary_part, residual_part)),
            _ => unreachable!("moving_force reports moving parts"),
        }
    };
    let mut at_release: f64 = 0.0;
    for r0 in [0.3, 1.0, 4.0] {
        let (s, res) = residual(r0, r0)?;
        at_release = at_release.max((res / s).abs());
    }
    let (_, closer) = residual(0.5, 1.0)?;
    let (_, farther) = residual(2.0, 1.0)?;
    let toward = closer > 0.0 && farther < 0.0;
    let mut gradient: f64 = 0.0;
    for (r, r0) in [(0.5, 1.0), (2.0, 1.0), (3.0, 1.5)] {
        let du = quadrature::derivative_n(|x| cp.moving_potential(x, r0).map(|u| u.value).unwrap_or(f64::NAN), r, 1, 0.05 * r)?;
        gradient = gradient.max(rel(-du, cp.moving_force(r, r0)?.force_z));
    }
    let ok = at_release <= 1e-10 && toward && gradient <= 1e-6;
    Ok((
        ok,
        format!(
            "residual at release {at_release:.1e}; residual at R = 0.5 R0 {closer:+.3e}, at 2 R0 {farther:+.3e}; gradient mismatch {gradient:.1e}"
        ),
    ))
}

fn accelerated(alpha: f64, eps: f64) -> Result<KernelSpec> {
    KernelSpec::new(Worldline::Accelerated(AcceleratedTrajectory::new(alpha, 0.0)?), eps)
}

fn kernel_stationarity() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for alpha in [1.0, 2.5] {
        let spec = accelerated(alpha, 0.01 / alpha)?;
        for (t1, t2) in [(0.0, 0.5), (1.0, -1.0), (-0.8, 0.3), (2.0, 2.2)] {
            let (t1, t2) = (t1 / alpha, t2 / alpha);
            let base = detector_kernels::sample(&spec, t1, t2)?;
            for s in [0.3, 0.7, 1.3] {
                let shifted = detector_kernels::sample(&spec, t1 + s / alpha, t2 + s / alpha)?;
                worst = worst.max(rel(shifted.noise, base.noise));
                worst = worst.max(rel(shifted.dissipation, base.dissipation));
            }
        }
    }
    Ok((worst <= 1e-8, format!("max relative shift deviation {worst:.1e}")))
}

fn unruh_thermality() -> Result<(bool, String)> {
    let units = UnitSystem::NATURAL;
    let tol = Tolerances::default();
    let mut noise: f64 = 0.0;
    let mut pointwise: f64 = 0.0;
    let mut distributional: f64 = 0.0;
    for alpha in [1.0, 4.0] {
        let spec = accelerated(alpha, 0.02 / alpha)?;
        let t_u = units.unruh_temperature(alpha);
        let grid: Vec<f64> = [0.5, 1.0, 2.0].iter().map(|d| d / alpha).collect();
        for &delta in &grid {
            let acc = detector_kernels::extrapolated_kernel(&spec, delta, 0.0, &tol)?;
            let th = detector_kernels::extrapolated_thermal(t_u, delta, spec.epsilon, &units, &tol)?;
            noise = noise.max(rel(acc.noise.value.re, th.noise.value.re));
        }
        let report = detector_kernels::dissipation_equivalence_check(alpha, &grid, spec.epsilon, &tol)?;
        pointwise = pointwise.max(report.max_pointwise);
        distributional = distributional.max(report.distributional);
    }
    let ok = noise <= 1e-6 && pointwise <= 1e-6 && distributional <= 1e-6;
    Ok((
        ok,
        format!("noise vs thermal {noise:.1e}; dissipation pointwise {pointwise:.1e}, paired {distributional:.1e}"),
    ))
}

fn adiabatic_ratio() -> Result<(bool, String)> {
    let tol = Tolerances::default();
    let mut worst: f64 = 0.0;
    for b in [0.5, 1.0, 2.0] {
        let spec = CavitySpec::accelerated(10.0, b, 1.0, 40.0)?;
        let i1 = cavity_scheme::amplitude_i1(&spec, AmplitudeMode::AdiabaticPastOnly, &tol)?;
        let i2 = cavity_scheme::amplitude_i2(&spec, AmplitudeMode::AdiabaticPastOnly, &tol)?;
        let ratio = i2.value.norm_sqr() / i1.value.norm_sqr();
        worst = worst.max(rel(ratio, cavity_scheme::ratio_adiabatic(b, 1.0)?));
    }
    Ok((worst <= 1e-4, format!("max relative deviation from exp(-2 pi omega/alpha) {worst:.1e}")))
}

fn sudden_switch() -> Result<(bool, String)> {
    let tol = Tolerances::default();
    let omega = 100.0;
    let nu = 100.0 * omega;
    let alpha_t = 35.0;
    let spec = CavitySpec::accelerated(nu, omega, 1.0, alpha_t)?;
    let rates = cavity_scheme::rates(&spec, &tol)?;
    let asymptote = cavity_scheme::ratio_sudden_asymptotic(omega, 1.0)?.value;
    let ratio_dev = rel(rates.ratio(), asymptote);
    let emission = cavity_scheme::emission_rate_sudden(&spec, &tol)?;
    let doubled = CavitySpec::accelerated(nu, omega, 2.0, alpha_t / 2.0)?;
    let emission_2 = cavity_scheme::emission_rate_sudden(&doubled, &tol)?;
    let emission_dev = rel(emission.numerical, emission.asymptote);
    let change = rel(emission_2.numerical, emission.numerical);
    let ok = ratio_dev <= 0.15 && emission_dev <= 0.10 && change < 0.05;
    Ok((
        ok,
        format!(
            "R2/R1 vs alpha/(2 pi omega) {:.2}%; emission vs lambda^2/nu^2 {:.2}%; change under alpha -> 2 alpha {:.2}%",
            100.0 * ratio_dev,
            100.0 * emission_dev,
            100.0 * change
        ),
    ))
}

fn master_equation_check() -> Result<(bool, String)> {
    let rates = ChainRates::new(1.0, 0.5)?;
    let steady = master_equation::steady_state(rates, 200)?;
    let drift = master_equation::drift(&steady, rates);
    let drift_max = drift.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let p = steady.probabilities();
    let geometric = p.windows(2).fold(0.0f64, |m, w| m.max((w[1] - 0.5 * w[0]).abs()));
    let t_final = 50.0 / (rates.r1 - rates.r2);
    let ev = master_equation::evolve(&PhotonDistribution::vacuum(master_equation::DEFAULT_N_MAX), rates, t_final, 10.0)?;
    let mean_dev = (ev.last().mean - master_equation::mean_photon_number(rates)?).abs();
    let units = UnitSystem::NATURAL;
    let mut boltzmann: f64 = 0.0;
    for (q, nu) in [(0.5, 1.0), (0.1, 2.0), ((-2.0 * PI).exp(), 1.0)] {
        let r = ChainRates::new(1.0, q)?;
        let t = master_equation::cavity_temperature(r, nu, &units)?;
        boltzmann = boltzmann.max(rel((-units.hbar * nu / (units.kb * t.value)).exp(), q));
    }
    let ok = ev.max_trace_error <= 1e-12 && drift_max <= 1e-12 && geometric <= 1e-12 && mean_dev <= 1e-6 && boltzmann <= 1e-12;
    Ok((
        ok,
        format!(
            "trace error {:.1e}; steady drift {drift_max:.1e}, geometric {geometric:.1e}; mean photon number error {mean_dev:.1e}; Boltzmann consistency {boltzmann:.1e}",
            ev.max_trace_error
        ),
    ))
}

fn constant_velocity() -> Result<(bool, String)> {
    let zero = cavity_scheme::ratio_constant_velocity(3.0, 1.0, 0.0, PI / 2.0, true)?;
    let short = cavity_scheme::ratio_constant_velocity(3.0, 1.0, 0.0, 2.5e-4, true)?;
    let moving = cavity_scheme::ratio_constant_velocity(2.0, 0.7, 0.6, 1.3, true)?;
    let shifted = cavity_scheme::ratio_constant_velocity(1.0, 0.7, 0.0, 1.3, true)?;
    let doppler = rel(moving, shifted);
    let ok = zero < 1e-10 && (short - 1.0).abs() <= 1e-3 && doppler <= 1e-12;
    Ok((
        ok,
        format!("zero numerator {zero:.1e}; T -> 0 ratio {short:.6}; Doppler identity {doppler:.1e}"),
    ))
}

fn oracle_agreement() -> Result<(bool, String)> {
    let tol = Tolerances::default();
    let eps = 0.01;
    let delta = 1.0;
    let mut kernel: f64 = 0.0;
    let worldlines = [
        (Worldline::Inertial(InertialTrajectory::new(0.0, 0.0)?), detector_kernels::inertial_closed_form(delta, eps)),
        (
            Worldline::Accelerated(AcceleratedTrajectory::new(1.0, 0.0)?),
            detector_kernels::accelerated_closed_form(1.0, delta, eps),
        ),
    ];
    for (w, closed) in worldlines {
        let brute = detector_kernels::mode_integral_two_point(&w, delta, 0.0, eps, &tol)?;
        kernel = kernel.max((brute.re - closed.re).abs() / closed.re.abs());
        kernel = kernel.max((brute.im - closed.im).abs() / closed.norm());
    }
    let mut cavity: f64 = 0.0;
    for (nu, w, alpha, t) in [(10.0, 1.0, 1.0, 2.0), (5.0, -2.0, 1.0, 0.5), (30.0, 0.5, 2.0, 1.0)] {
        let spec = CavitySpec::accelerated(nu, f64::abs(w), alpha, t)?;
        let regulated = cavity_scheme::amplitude_i1_at(&spec, w, AmplitudeMode::AdiabaticPastOnly, &tol)?;
        let rotated: Complex64 = cavity_scheme::past_amplitude_rotated(nu, w, alpha, (-alpha * t).exp(), &tol)?;
        cavity = cavity.max((regulated.value - rotated).norm() / rotated.norm());
    }
    Ok((
        kernel <= 1e-10 && cavity <= 1e-8,
        format!("kernels vs mode integrals {kernel:.1e}; regulated vs rotated-contour I1 {cavity:.1e}"),
    ))
}
