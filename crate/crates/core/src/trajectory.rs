//! Worldlines of a detector in 1+1 dimensional Minkowski space.
//!
//! Both families are parametrized by proper time `tau`. Light-cone
//! coordinates `u = t - x/c`, `v = t + x/c` are provided because the field
//! correlators of [`crate::detector_kernels`] factorize in them.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hyperbolic motion `t = (s/alpha) sinh(alpha (tau - tau_origin))`,
/// `x = (s c/alpha) cosh(alpha (tau - tau_origin))`.
///
/// `scale` (`s` above) is 1 for the reference worldline. [`smear`](Self::smear)
/// moves to a worldline at fixed proper distance `d` from it, where
/// `s = 1 + alpha d / c` and `tau` keeps labelling the reference proper time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcceleratedTrajectory {
    /// Proper acceleration of the reference worldline divided by `c`.
    pub alpha: f64,
    pub tau_origin: f64,
    pub scale: f64,
    pub c: f64,
}

/// Rotates `(t, x)` by rapidity `eta`.
pub fn boost(eta: f64, t: f64, x: f64, c: f64) -> (f64, f64) {
    let (sh, ch) = (eta.sinh(), eta.cosh());
    (t * ch + x / c * sh, x * ch + c * t * sh)
}

impl AcceleratedTrajectory {
    pub fn new(alpha: f64, tau_origin: f64) -> Result<Self> {
        Self::with_light_speed(alpha, tau_origin, 1.0)
    }

    pub fn with_light_speed(alpha: f64, tau_origin: f64, c: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!("c must be positive, got {c}")));
        }
        if !tau_origin.is_finite() {
            return Err(Error::domain("tau_origin must be finite"));
        }
        Ok(AcceleratedTrajectory {
            alpha,
            tau_origin,
            scale: 1.0,
            c,
        })
    }

    /// `(t, x)` at proper time `tau`.
    pub fn position(&self, tau: f64) -> (f64, f64) {
        let a = self.alpha * (tau - self.tau_origin);
        let r = self.scale / self.alpha;
        (r * a.sinh(), r * self.c * a.cosh())
    }

    /// `(dt/dtau, dx/dtau)`.
    pub fn velocity(&self, tau: f64) -> (f64, f64) {
        let a = self.alpha * (tau - self.tau_origin);
        (self.scale * a.cosh(), self.scale * self.c * a.sinh())
    }

    /// Proper acceleration of this worldline: `alpha c / scale`.
    pub fn proper_acceleration(&self) -> f64 {
        self.alpha * self.c / self.scale
    }

    /// Inverse of `t(tau)`.
    pub fn proper_time_at(&self, t: f64) -> f64 {
        self.tau_origin + (self.alpha * t / self.scale).asinh() / self.alpha
    }

    /// Light-cone coordinates `(u, v)`, with complex proper time allowed so
    /// that an `-i eps` prescription can be carried along the worldline.
    pub fn light_cone(&self, tau: Complex64) -> (Complex64, Complex64) {
        let a = (tau - self.tau_origin) * self.alpha;
        let r = self.scale / self.alpha;
        (-a.exp().inv() * r, a.exp() * r)
    }

    /// `(du/dtau, dv/dtau)` at complex proper time.
    pub fn light_cone_rate(&self, tau: Complex64) -> (Complex64, Complex64) {
        let a = (tau - self.tau_origin) * self.alpha;
        (a.exp().inv() * self.scale, a.exp() * self.scale)
    }

    /// The worldline at proper distance `d` (along the acceleration) from this one.
    pub fn smear(&self, d: f64) -> Result<Self> {
        let scale = self.scale + self.alpha * d / self.c;
        if !(scale > 0.0) {
            return Err(Error::domain(format!(
                "smearing distance {d} crosses the horizon (scale factor {scale})"
            )));
        }
        Ok(AcceleratedTrajectory { scale, ..*self })
    }
}

/// Uniform motion `x = x0 + v t` starting at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertialTrajectory {
    pub v: f64,
    pub x0: f64,
    pub c: f64,
}

impl InertialTrajectory {
    pub fn new(v: f64, x0: f64) -> Result<Self> {
        Self::with_light_speed(v, x0, 1.0)
    }

    pub fn with_light_speed(v: f64, x0: f64, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!("c must be positive, got {c}")));
        }
        if !(v.abs() < c) {
            return Err(Error::domain(format!("|v| must be below c, got {v}")));
        }
        Ok(InertialTrajectory { v, x0, c })
    }

    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - (self.v / self.c).powi(2)).sqrt()
    }

    pub fn position(&self, tau: f64) -> (f64, f64) {
        let g = self.gamma();
        (g * tau, self.x0 + self.v * g * tau)
    }

    pub fn light_cone(&self, tau: Complex64) -> (Complex64, Complex64) {
        let (du, dv) = self.light_cone_rate(tau);
        let shift = self.x0 / self.c;
        (tau * du - shift, tau * dv + shift)
    }

    pub fn light_cone_rate(&self, _tau: Complex64) -> (Complex64, Complex64) {
        let g = self.gamma();
        let beta = self.v / self.c;
        (Complex64::new(g * (1.0 - beta), 0.0), Complex64::new(g * (1.0 + beta), 0.0))
    }
}

/// Frequency of a cavity mode seen by an atom moving at `v`:
/// `nu sqrt((1 - v/c)/(1 + v/c))` for the co-propagating mode, the inverse
/// factor for the counter-propagating one.
pub fn doppler_frequency(nu: f64, v: f64, c: f64, copropagating: bool) -> Result<f64> {
    if !(v.abs() < c) {
        return Err(Error::domain(format!("|v| must be below c, got {v}")));
    }
    let beta = if copropagating { v / c } else { -v / c };
    Ok(nu * ((1.0 - beta) / (1.0 + beta)).sqrt())
}

/// Phase `-nu t + (nu/c) x` of a co-propagating mode along the trajectory,
/// which equals `(nu scale/alpha) exp(-alpha (tau - tau_origin))`.
pub fn redshifted_mode_phase(traj: &AcceleratedTrajectory, nu: f64, tau: f64) -> f64 {
    nu * traj.scale / traj.alpha * (-traj.alpha * (tau - traj.tau_origin)).exp()
}
