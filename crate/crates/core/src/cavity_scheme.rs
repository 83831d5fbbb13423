//! Transition amplitudes for a two-level atom crossing a single-mode cavity.
//!
//! For an accelerated atom with coupling `lambda exp(-alpha tau)`, the
//! absorption amplitude over the transit `[0, T]` is
//!
//! ```text
//! I1(omega) = int_0^T exp(i (nu/alpha) e^{-alpha tau} + i omega tau - alpha tau) dtau
//! ```
//!
//! and the emission amplitude is `I2(omega) = I1(-omega)`. With
//! `u = exp(-alpha tau)` the same integral reads
//! `(1/alpha) int u^{-i omega/alpha} e^{i nu u/alpha} du`, which makes the
//! contribution of a switch-on in the remote past (`u -> inf`) explicit.
//! An inertial atom (`alpha = 0`) has closed-form amplitudes.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::domain::Tolerances;
use crate::error::{Error, Result};
use crate::quadrature::{self, Extrapolated};
use crate::trajectory::doppler_frequency;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavitySpec {
    /// Cavity mode angular frequency.
    pub nu: f64,
    /// Atomic transition angular frequency.
    pub omega: f64,
    /// Proper acceleration over `c`; zero selects the constant-velocity case.
    pub alpha: f64,
    pub lambda: f64,
    /// Proper transit time `T`.
    pub transit_time: f64,
    /// Atoms injected per unit time.
    pub injection_rate: f64,
    /// Velocity of an inertial atom, in units of `c`.
    pub velocity: f64,
    pub copropagating: bool,
}

impl CavitySpec {
    pub fn accelerated(nu: f64, omega: f64, alpha: f64, transit_time: f64) -> Result<Self> {
        let s = CavitySpec {
            nu,
            omega,
            alpha,
            lambda: 1.0,
            transit_time,
            injection_rate: 1.0,
            velocity: 0.0,
            copropagating: true,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn inertial(nu: f64, omega: f64, velocity: f64, transit_time: f64, copropagating: bool) -> Result<Self> {
        let s = CavitySpec {
            alpha: 0.0,
            velocity,
            copropagating,
            ..CavitySpec::accelerated(nu, omega, 1.0, transit_time)?
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_coupling(mut self, lambda: f64, injection_rate: f64) -> Result<Self> {
        self.lambda = lambda;
        self.injection_rate = injection_rate;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::domain(format!("nu must be positive, got {}", self.nu)));
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::domain(format!("omega must be positive, got {}", self.omega)));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::domain(format!("alpha must be non-negative, got {}", self.alpha)));
        }
        if !(self.transit_time > 0.0 && self.transit_time.is_finite()) {
            return Err(Error::domain(format!("transit time must be positive, got {}", self.transit_time)));
        }
        if !(self.injection_rate > 0.0 && self.injection_rate.is_finite()) {
            return Err(Error::domain(format!("injection rate must be positive, got {}", self.injection_rate)));
        }
        if !self.lambda.is_finite() {
            return Err(Error::domain("coupling must be finite"));
        }
        if !(self.velocity.abs() < 1.0) {
            return Err(Error::domain(format!("|v|/c must be below 1, got {}", self.velocity)));
        }
        if self.alpha > 0.0 && !self.copropagating {
            return Err(Error::domain("accelerated atoms are modelled with the co-propagating mode only"));
        }
        Ok(())
    }

    /// The cavity is many wavelengths long and the atom leaves the
    /// strongly coupled region: `nu >= 10 alpha` and `exp(-alpha T) <= 0.1`.
    pub fn cavity_size_ok(&self) -> bool {
        self.alpha == 0.0 || (self.nu >= 10.0 * self.alpha && (-self.alpha * self.transit_time).exp() <= 0.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplitudeMode {
    /// Interaction switched on at injection: `int_0^T`.
    FullSudden,
    /// Interaction present since the remote past: `int_{-inf}^T`.
    AdiabaticPastOnly,
    /// `past(T) - past(0)`, which must reproduce [`AmplitudeMode::FullSudden`].
    WindowOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Amplitude {
    pub value: Complex64,
    pub error_estimate: f64,
    /// Regulator ladder of the remote-past contribution, when one was needed.
    pub regulator: Option<Extrapolated>,
}

const MAX_PANELS: usize = 2_000_000;

/// Breakpoints on `[lo, hi]` about half a period apart, for a local angular
/// frequency bounded by `rate(x)`.
fn graded_breaks<F: Fn(f64) -> f64>(lo: f64, hi: f64, rate: F) -> Result<Vec<f64>> {
    let mut points = vec![lo];
    let mut x = lo;
    while x < hi {
        let step = PI / rate(x).max(1e-300);
        x = (x + step).min(hi);
        if points.len() > MAX_PANELS {
            return Err(Error::domain("integrand oscillates too fast for the panel budget"));
        }
        // Merge a sliver at the end into the last panel.
        if hi - x < 1e-3 * step {
            x = hi;
        }
        points.push(x);
    }
    Ok(points)
}

fn estimate(r: quadrature::IntegrationResult) -> (Complex64, f64) {
    (r.value, r.error_estimate)
}

/// Cancellation between panels cannot be resolved below the rounding level of
/// the integrand's L1 norm.
fn rounding_floor(tol: &Tolerances, l1: f64) -> Tolerances {
    Tolerances {
        abs_tol: tol.abs_tol.max(1e-13 * l1),
        ..*tol
    }
}

/// `int_0^T exp(i a e^{-alpha tau} + i w tau - alpha tau) dtau` with
/// `a = nu/alpha`, directly in proper time.
fn window_in_proper_time(nu: f64, w: f64, alpha: f64, t: f64, tol: &Tolerances) -> Result<(Complex64, f64)> {
    let a = nu / alpha;
    let breaks = graded_breaks(0.0, t, |tau| w.abs() + nu * (-alpha * tau).exp())?;
    let i = Complex64::i();
    let r = quadrature::integrate_with_breaks(
        |tau| (i * (a * (-alpha * tau).exp() + w * tau) - alpha * tau).exp(),
        &breaks,
        &rounding_floor(tol, (1.0 - (-alpha * t).exp()) / alpha),
    )?;
    Ok(estimate(r))
}

/// `(1/alpha) int_{u0}^{1} u^{-ib} e^{iau} du` with `b = w/alpha`.
fn window_in_u(nu: f64, w: f64, alpha: f64, u0: f64, tol: &Tolerances) -> Result<(Complex64, f64)> {
    if u0 >= 1.0 {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let (a, b) = (nu / alpha, w / alpha);
    let breaks = graded_breaks(u0, 1.0, |u| a + b.abs() / u)?;
    let i = Complex64::i();
    let r = quadrature::integrate_with_breaks(
        |u| (i * (a * u - b * u.ln())).exp(),
        &breaks,
        &rounding_floor(tol, 1.0 - u0),
    )?;
    Ok((r.value / alpha, r.error_estimate / alpha))
}

/// `(1/alpha) int_1^inf u^{-ib} e^{iau} du`: damped by `exp(-eps u)` and
/// extrapolated to `eps = 0`.
fn remote_past_regulated(nu: f64, w: f64, alpha: f64, tol: &Tolerances) -> Result<Extrapolated> {
    let (a, b) = (nu / alpha, w / alpha);
    let i = Complex64::i();
    // The regulated tail is analytic in eps out to |eps| = a; a shorter
    // starting step and a longer ladder keep Neville truncation near 1e-14.
    let ladder = Tolerances {
        epsilon_regulator: tol.epsilon_regulator.min(0.1),
        richardson_levels: tol.richardson_levels.max(8),
        ..*tol
    };
    let mut ex = quadrature::regulated_limit(|u| (i * (a * u - b * u.ln())).exp(), 1.0, a, &ladder)?;
    ex.value /= alpha;
    ex.error_estimate /= alpha;
    for s in ex.samples.iter_mut() {
        s.1 /= alpha;
    }
    Ok(ex)
}

/// `(1/alpha) int_{u0}^{inf} u^{-ib} e^{iau} du` evaluated on the ray
/// `u = u0 + i s`, where the integrand decays like `exp(-a s)`. Independent of
/// the regulator; reliable while `exp(pi |b| / 2)` is moderate.
pub fn past_amplitude_rotated(nu: f64, w: f64, alpha: f64, u0: f64, tol: &Tolerances) -> Result<Complex64> {
    if !(alpha > 0.0 && u0 > 0.0) {
        return Err(Error::domain("rotated contour needs alpha > 0 and u0 > 0"));
    }
    let (a, b) = (nu / alpha, w / alpha);
    let i = Complex64::i();
    let f = |s: f64| {
        let u = Complex64::new(u0, s);
        (i * a * u - i * b * u.ln()).exp()
    };
    // Near s = 0 the phase winds on the scale u0; integrate that stretch in log s.
    let knee = u0.min(1.0);
    let near = quadrature::integrate(|x: f64| f(x) * 1.0, 0.0, knee * 1e-3, tol)?;
    let mid = quadrature::integrate(
        |w: f64| {
            let s = w.exp();
            f(s) * s
        },
        (knee * 1e-3).ln(),
        (knee.max(1.0 / a)).ln().max((knee * 1e-3).ln() + 1e-12),
        tol,
    )?;
    let far_start = knee.max(1.0 / a);
    let far = quadrature::integrate_semi_infinite_from(f, far_start, a, tol)?;
    Ok((near.value + mid.value + far.value) * i / alpha)
}

/// `I1` at transition frequency `w` (use `-omega` for the emission amplitude).
pub fn amplitude_i1_at(spec: &CavitySpec, w: f64, mode: AmplitudeMode, tol: &Tolerances) -> Result<Amplitude> {
    spec.validate()?;
    if spec.alpha == 0.0 {
        let value = inertial_amplitude(spec, w)?;
        return Ok(Amplitude {
            value,
            error_estimate: 0.0,
            regulator: None,
        });
    }
    let (nu, alpha, t) = (spec.nu, spec.alpha, spec.transit_time);
    match mode {
        AmplitudeMode::FullSudden => {
            let (v, e) = window_in_proper_time(nu, w, alpha, t, tol)?;
            Ok(Amplitude {
                value: v,
                error_estimate: e,
                regulator: None,
            })
        }
        AmplitudeMode::AdiabaticPastOnly => {
            let (v, e) = window_in_u(nu, w, alpha, (-alpha * t).exp(), tol)?;
            let past = remote_past_regulated(nu, w, alpha, tol)?;
            Ok(Amplitude {
                value: v + past.value,
                error_estimate: e + past.error_estimate,
                regulator: Some(past),
            })
        }
        AmplitudeMode::WindowOnly => {
            let later = amplitude_i1_at(spec, w, AmplitudeMode::AdiabaticPastOnly, tol)?;
            let past = later.regulator.clone().expect("past-only amplitude carries its regulator");
            Ok(Amplitude {
                value: later.value - past.value,
                error_estimate: later.error_estimate + past.error_estimate,
                regulator: later.regulator,
            })
        }
    }
}

pub fn amplitude_i1(spec: &CavitySpec, mode: AmplitudeMode, tol: &Tolerances) -> Result<Amplitude> {
    amplitude_i1_at(spec, spec.omega, mode, tol)
}

pub fn amplitude_i2(spec: &CavitySpec, mode: AmplitudeMode, tol: &Tolerances) -> Result<Amplitude> {
    amplitude_i1_at(spec, -spec.omega, mode, tol)
}

/// `int_0^T exp(i (w - nu') tau) dtau` for an atom at constant velocity.
fn inertial_amplitude(spec: &CavitySpec, w: f64) -> Result<Complex64> {
    let nu_seen = doppler_frequency(spec.nu, spec.velocity, 1.0, spec.copropagating)?;
    let x = (w - nu_seen) * spec.transit_time;
    // T exp(ix/2) sinc(x/2)
    let half = 0.5 * x;
    let sinc = if half.abs() < 1e-8 { 1.0 - half * half / 6.0 } else { half.sin() / half };
    Ok(Complex64::from_polar(spec.transit_time * sinc, half))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeFlags {
    pub cavity_size_ok: bool,
    /// `nu >= 10 omega >= 100 alpha`, where the sudden-switch asymptotics apply.
    pub sudden_regime: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionRates {
    pub r1: f64,
    pub r2: f64,
    pub i1: Complex64,
    pub i2: Complex64,
    pub error_estimate: f64,
    pub flags: RegimeFlags,
}

impl TransitionRates {
    pub fn ratio(&self) -> f64 {
        self.r2 / self.r1
    }
}

pub fn regime_flags(spec: &CavitySpec) -> RegimeFlags {
    RegimeFlags {
        cavity_size_ok: spec.cavity_size_ok(),
        sudden_regime: spec.alpha > 0.0 && spec.nu >= 10.0 * spec.omega && spec.omega >= 10.0 * spec.alpha,
    }
}

/// `R_{1,2} = r lambda^2 |I_{1,2}|^2` with the physical (sudden) amplitudes.
pub fn rates(spec: &CavitySpec, tol: &Tolerances) -> Result<TransitionRates> {
    let a1 = amplitude_i1(spec, AmplitudeMode::FullSudden, tol)?;
    let a2 = amplitude_i2(spec, AmplitudeMode::FullSudden, tol)?;
    let k = spec.injection_rate * spec.lambda * spec.lambda;
    let r1 = k * a1.value.norm_sqr();
    let r2 = k * a2.value.norm_sqr();
    let error_estimate = 2.0 * k * (a1.value.norm() * a1.error_estimate + a2.value.norm() * a2.error_estimate);
    Ok(TransitionRates {
        r1,
        r2,
        i1: a1.value,
        i2: a2.value,
        error_estimate,
        flags: regime_flags(spec),
    })
}

/// Boltzmann factor of an interaction present since the remote past.
pub fn ratio_adiabatic(omega: f64, alpha: f64) -> Result<f64> {
    if !(omega > 0.0 && alpha > 0.0) {
        return Err(Error::domain("omega and alpha must be positive"));
    }
    Ok((-2.0 * PI * omega / alpha).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuddenRatio {
    pub value: f64,
    /// False when `omega < 10 alpha`, outside the regime of the asymptote.
    pub in_regime: bool,
}

/// Large-`nu` asymptote of `R2/R1` for a sudden switch-on: `alpha/(2 pi omega)`.
pub fn ratio_sudden_asymptotic(omega: f64, alpha: f64) -> Result<SuddenRatio> {
    if !(omega > 0.0 && alpha > 0.0) {
        return Err(Error::domain("omega and alpha must be positive"));
    }
    Ok(SuddenRatio {
        value: alpha / (2.0 * PI * omega),
        in_regime: omega >= 10.0 * alpha,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionRate {
    /// `lambda^2 |I2|^2`.
    pub numerical: f64,
    /// `lambda^2 / nu^2`.
    pub asymptote: f64,
    pub ratio: f64,
}

pub fn emission_rate_sudden(spec: &CavitySpec, tol: &Tolerances) -> Result<EmissionRate> {
    let a2 = amplitude_i2(spec, AmplitudeMode::FullSudden, tol)?;
    let numerical = spec.lambda * spec.lambda * a2.value.norm_sqr();
    let asymptote = spec.lambda * spec.lambda / (spec.nu * spec.nu);
    Ok(EmissionRate {
        numerical,
        asymptote,
        ratio: numerical / asymptote,
    })
}

/// `R2/R1` for an atom crossing the cavity at constant velocity:
/// `|sin((nu' + omega) T/2) / (nu' + omega)|^2 / |sin((nu' - omega) T/2) / (nu' - omega)|^2`,
/// with `nu'` the Doppler-shifted mode frequency. The exact resonance
/// `nu' = omega` is a removable singularity; the other zeros of the
/// denominator are genuine poles and are reported as divergences.
pub fn ratio_constant_velocity(nu: f64, omega: f64, v: f64, transit_time: f64, copropagating: bool) -> Result<f64> {
    if !(nu > 0.0 && omega > 0.0 && transit_time > 0.0) {
        return Err(Error::domain("nu, omega and T must be positive"));
    }
    let nu_seen = doppler_frequency(nu, v, 1.0, copropagating)?;
    let window = |x: f64| -> f64 {
        let half = 0.5 * x * transit_time;
        if half.abs() < 1e-8 {
            0.5 * transit_time * (1.0 - half * half / 6.0)
        } else {
            half.sin() / x
        }
    };
    let den = window(nu_seen - omega);
    if (den / (0.5 * transit_time)).abs() < 1e-12 {
        return Err(Error::Divergence(format!(
            "(nu' - omega) T = {} is a non-zero multiple of 2 pi",
            (nu_seen - omega) * transit_time
        )));
    }
    Ok((window(nu_seen + omega) / den).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn reference_ratios() {
        assert!((ratio_adiabatic(1.0, 1.0).unwrap() - 1.867_442_731_707_989_3e-3).abs() < 1e-17);
        assert!((ratio_adiabatic(2.0, 1.0).unwrap() - 3.487_342_356_208_997e-6).abs() < 1e-18);
        assert!((ratio_adiabatic(1e-9, 1.0).unwrap() - 1.0).abs() < 1e-8);
        let s = ratio_sudden_asymptotic(100.0, 1.0).unwrap();
        assert!((s.value - 1.0 / (200.0 * PI)).abs() < 1e-18 && s.in_regime);
        assert!(!ratio_sudden_asymptotic(5.0, 1.0).unwrap().in_regime);
        assert!(ratio_sudden_asymptotic(50.0, 1.0).unwrap().value > s.value);
    }

    #[test]
    fn sudden_window_matches_both_routes() {
        let spec = CavitySpec::accelerated(20.0, 3.0, 1.0, 4.0).unwrap();
        for w in [3.0, -3.0] {
            let full = amplitude_i1_at(&spec, w, AmplitudeMode::FullSudden, &tol()).unwrap();
            let window = amplitude_i1_at(&spec, w, AmplitudeMode::WindowOnly, &tol()).unwrap();
            assert!((full.value - window.value).norm() < 1e-8 * full.value.norm(), "{} vs {}", full.value, window.value);
        }
    }

    #[test]
    fn rotated_contour_agrees_with_regulator() {
        for (nu, w, alpha, t) in [(10.0f64, 1.0f64, 1.0, 2.0), (5.0, -2.0, 1.0, 0.5), (30.0, 0.5, 2.0, 1.0)] {
            let spec = CavitySpec::accelerated(nu, w.abs(), alpha, t).unwrap();
            let past = amplitude_i1_at(&spec, w, AmplitudeMode::AdiabaticPastOnly, &tol()).unwrap();
            let oracle = past_amplitude_rotated(nu, w, alpha, (-alpha * t).exp(), &tol()).unwrap();
            assert!((past.value - oracle).norm() < 1e-8 * oracle.norm(), "{} vs {}", past.value, oracle);
        }
    }

    #[test]
    fn sudden_amplitudes_match_incomplete_gamma() {
        let spec = CavitySpec::accelerated(200.0, 10.0, 1.0, 20.0).unwrap();
        let i1 = amplitude_i1(&spec, AmplitudeMode::FullSudden, &tol()).unwrap().value;
        let i2 = amplitude_i2(&spec, AmplitudeMode::FullSudden, &tol()).unwrap().value;
        let e1 = Complex64::new(-0.044_071_117_279_121_322, 0.000_985_401_112_611_429_27);
        let e2 = Complex64::new(-0.004_158_041_080_581_088_5, -0.002_320_888_754_363_162_1);
        assert!((i1 - e1).norm() < 1e-10 * e1.norm(), "{i1}");
        assert!((i2 - e2).norm() < 1e-10 * e2.norm(), "{i2}");
    }

    #[test]
    fn sudden_ratio_stays_in_band() {
        // Interference between the switch-on edge and the resonance point makes
        // R2/R1 oscillate about the asymptote instead of settling onto it.
        let omega = 100.0;
        let asym = ratio_sudden_asymptotic(omega, 1.0).unwrap().value;
        let band = 0.15;
        for k in [30.0, 100.0, 300.0] {
            let spec = CavitySpec::accelerated(k * omega, omega, 1.0, 35.0).unwrap();
            let r = rates(&spec, &tol()).unwrap();
            assert!(r.flags.sudden_regime && r.flags.cavity_size_ok);
            assert!((r.ratio() / asym - 1.0).abs() < band, "nu/omega {k}: {}", r.ratio() / asym);
        }
    }

    #[test]
    fn inertial_amplitudes() {
        let spec = CavitySpec::inertial(3.0, 1.0, 0.0, 2.0, true).unwrap();
        let a = amplitude_i1(&spec, AmplitudeMode::FullSudden, &tol()).unwrap().value;
        let i = Complex64::i();
        let exact = ((i * (1.0 - 3.0) * 2.0).exp() - 1.0) / (i * (1.0 - 3.0));
        assert!((a - exact).norm() < 1e-14);
        let r = rates(&spec, &tol()).unwrap();
        let ratio = ratio_constant_velocity(3.0, 1.0, 0.0, 2.0, true).unwrap();
        assert!((r.ratio() - ratio).abs() < 1e-12 * ratio);
    }

    #[test]
    fn coupling_scaling() {
        let base = CavitySpec::accelerated(20.0, 2.0, 1.0, 5.0).unwrap();
        let r = rates(&base, &tol()).unwrap();
        let scaled = rates(&base.with_coupling(3.0, 2.0).unwrap(), &tol()).unwrap();
        assert!((scaled.r1 / r.r1 - 18.0).abs() < 1e-12 && (scaled.r2 / r.r2 - 18.0).abs() < 1e-12);
        let off = rates(&base.with_coupling(0.0, 2.0).unwrap(), &tol()).unwrap();
        assert_eq!((off.r1, off.r2), (0.0, 0.0));
    }

    #[test]
    fn constant_velocity_ratio() {
        // (nu + omega) T = 2 pi and (nu - omega) T = pi.
        let zero = ratio_constant_velocity(3.0, 1.0, 0.0, PI / 2.0, true).unwrap();
        assert!(zero < 1e-10);
        let small_t = 1e-3 / 4.0;
        assert!((ratio_constant_velocity(3.0, 1.0, 0.0, small_t, true).unwrap() - 1.0).abs() < 1e-3);
        let moving = ratio_constant_velocity(2.0, 0.7, 0.6, 1.3, true).unwrap();
        let shifted = ratio_constant_velocity(1.0, 0.7, 0.0, 1.3, true).unwrap();
        assert!((moving - shifted).abs() < 1e-12 * shifted);
        let flipped = ratio_constant_velocity(2.0, 0.7, -0.6, 1.3, false).unwrap();
        assert!((moving - flipped).abs() < 1e-12 * moving);
        // Exact resonance is finite; a 2 pi detuning phase is a pole.
        assert!(ratio_constant_velocity(1.0, 1.0, 0.0, 2.0, true).unwrap().is_finite());
        assert!(matches!(
            ratio_constant_velocity(3.0, 1.0, 0.0, PI, true),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(CavitySpec::accelerated(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(CavitySpec::accelerated(1.0, 1.0, -1.0, 1.0).is_err());
        assert!(CavitySpec::accelerated(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(CavitySpec::inertial(1.0, 1.0, 1.0, 1.0, true).is_err());
        let mut s = CavitySpec::accelerated(1.0, 1.0, 1.0, 1.0).unwrap();
        s.copropagating = false;
        assert!(s.validate().is_err());
    }
}
