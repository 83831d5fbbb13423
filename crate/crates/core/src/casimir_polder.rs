//! Casimir-Polder interaction of a ground-state atom with a perfectly
//! conducting wall.
//!
//! Sign convention: the `z` axis points away from the wall, so an attractive
//! force is negative. Distances enter the integrals as `rho = R omega0 / c`.
//!
//! Three situations are covered:
//!
//! * an atom held at rest ([`CasimirPolder::stationary_potential`],
//!   [`CasimirPolder::stationary_force`]),
//! * an atom drifting adiabatically away from its release point `R0`
//!   ([`CasimirPolder::moving_potential`], [`CasimirPolder::moving_force`]),
//! * an atom whose interaction with the wall has just been switched on
//!   ([`CasimirPolder::transient_force`]).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::domain::{AtomSpec, Estimate, Tolerances, UnitSystem};
use crate::error::{Error, Result};
use crate::quadrature;

/// Geometry and kinematics of one atom-wall configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallScenario {
    /// Current atom-wall distance.
    pub r: f64,
    /// Release-point distance (moving atom).
    pub r0: f64,
    /// Velocity along the wall normal, positive away from the wall.
    pub v: f64,
    /// Time since the interaction was switched on.
    pub t_elapsed: f64,
}

impl WallScenario {
    pub fn at_rest(r: f64) -> Self {
        WallScenario {
            r,
            r0: r,
            v: 0.0,
            t_elapsed: 0.0,
        }
    }

    pub fn released(r: f64, r0: f64) -> Self {
        WallScenario {
            r0,
            ..WallScenario::at_rest(r)
        }
    }

    pub fn switched_on(r: f64, v: f64, t_elapsed: f64) -> Self {
        WallScenario {
            v,
            t_elapsed,
            ..WallScenario::at_rest(r)
        }
    }

    pub fn validate(&self, units: &UnitSystem) -> Result<()> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(Error::domain(format!("R must be positive, got {}", self.r)));
        }
        if !(self.r0 > 0.0 && self.r0.is_finite()) {
            return Err(Error::domain(format!("R0 must be positive, got {}", self.r0)));
        }
        if !(self.v.abs() < units.c) {
            return Err(Error::domain(format!("|V| must be below c, got {}", self.v)));
        }
        if !(self.t_elapsed >= 0.0 && self.t_elapsed.is_finite()) {
            return Err(Error::domain(format!("elapsed time must be non-negative, got {}", self.t_elapsed)));
        }
        Ok(())
    }
}

/// How a force splits into physically distinct contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ForceParts {
    Stationary,
    Moving { stationary_part: f64, residual_part: f64 },
    Transient { steady_part: f64, transient_part: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    /// Force along the wall normal; positive pushes the atom away from the wall.
    pub force_z: f64,
    pub error_estimate: f64,
    pub parts: ForceParts,
}

/// Atom, unit system and numerical settings for wall computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirPolder {
    pub atom: AtomSpec,
    pub units: UnitSystem,
    pub tolerances: Tolerances,
}

impl CasimirPolder {
    pub fn new(atom: AtomSpec, units: UnitSystem) -> Self {
        CasimirPolder {
            atom,
            units,
            tolerances: Tolerances::default(),
        }
    }

    pub fn with_tolerances(mut self, tolerances: Tolerances) -> Self {
        self.tolerances = tolerances;
        self
    }

    fn rho(&self, r: f64) -> Result<f64> {
        crate::domain::to_dimensionless(&self.atom, r, &self.units)
    }

    /// `alpha0 hbar omega0^n / c^(n-1)`: energy for `n = 4`, force for `n = 5`.
    fn scale(&self, n: i32) -> f64 {
        self.atom.alpha0 * self.units.hbar * self.atom.omega0.powi(n) / self.units.c.powi(n - 1)
    }

    /// Potential of an atom at rest a distance `r` from the wall.
    pub fn stationary_potential(&self, r: f64) -> Result<Estimate> {
        let rho = self.rho(r)?;
        Ok(stationary_kernel(2, rho, &self.tolerances)?.scale(-self.scale(4) / (8.0 * PI)))
    }

    pub fn stationary_force(&self, r: f64) -> Result<ForceResult> {
        let rho = self.rho(r)?;
        let k3 = stationary_kernel(3, rho, &self.tolerances)?.scale(-self.scale(5) / (8.0 * PI));
        Ok(ForceResult {
            force_z: k3.value,
            error_estimate: k3.error_estimate,
            parts: ForceParts::Stationary,
        })
    }

    /// Short-distance (non-retarded) limit `-alpha0 hbar omega0 / (8 R^3)`.
    pub fn asymptote_near(&self, r: f64) -> Result<f64> {
        self.rho(r)?;
        Ok(-self.atom.alpha0 * self.units.hbar * self.atom.omega0 / (8.0 * r.powi(3)))
    }

    /// Long-distance (fully retarded) limit `-3 alpha0 hbar c / (8 pi R^4)`.
    pub fn asymptote_far(&self, r: f64) -> Result<f64> {
        self.rho(r)?;
        Ok(-3.0 * self.atom.alpha0 * self.units.hbar * self.units.c / (8.0 * PI * r.powi(4)))
    }

    /// `g(R) - g(R0)` with `g(r) = (alpha0 hbar omega0^2 / 4 pi) d^2/dr^2 G(r)`,
    /// `G(r) = int_0^inf dk sin(2kr) / ((kc + omega0) 2kr)`.
    pub fn residual_bracket(&self, r: f64, r0: f64) -> Result<Estimate> {
        let (s, s0) = (self.rho(r)?, self.rho(r0)?);
        let g = residual_kernel(2, s, &self.tolerances)?;
        let g0 = residual_kernel(2, s0, &self.tolerances)?;
        Ok(Estimate::new(g.value - g0.value, g.error_estimate + g0.error_estimate).scale(self.scale(4) / (4.0 * PI)))
    }

    /// Potential of an atom released at `r0` and now at `r`.
    ///
    /// The residual part is the work done by the residual force on the way
    /// from `r0` to `r`, so that [`moving_force`](Self::moving_force) is its
    /// exact negative gradient. It differs from [`residual_bracket`](Self::residual_bracket)
    /// by the term linear in `R - R0`.
    pub fn moving_potential(&self, r: f64, r0: f64) -> Result<Estimate> {
        let (s, s0) = (self.rho(r)?, self.rho(r0)?);
        let stationary = self.stationary_potential(r)?;
        if s == s0 {
            return Ok(stationary);
        }
        let h2 = residual_kernel(2, s, &self.tolerances)?;
        let h2_0 = residual_kernel(2, s0, &self.tolerances)?;
        let h3_0 = residual_kernel(3, s0, &self.tolerances)?;
        let residual = Estimate::new(
            h2.value - h2_0.value - h3_0.value * (s - s0),
            h2.error_estimate + h2_0.error_estimate + h3_0.error_estimate * (s - s0).abs(),
        )
        .scale(self.scale(4) / (4.0 * PI));
        Ok(Estimate::new(
            stationary.value + residual.value,
            stationary.error_estimate + residual.error_estimate,
        ))
    }

    pub fn moving_force(&self, r: f64, r0: f64) -> Result<ForceResult> {
        let (s, s0) = (self.rho(r)?, self.rho(r0)?);
        let stationary = self.stationary_force(r)?;
        let h3 = residual_kernel(3, s, &self.tolerances)?;
        let h3_0 = residual_kernel(3, s0, &self.tolerances)?;
        let residual = Estimate::new(h3.value - h3_0.value, h3.error_estimate + h3_0.error_estimate)
            .scale(-self.scale(5) / (4.0 * PI));
        Ok(ForceResult {
            force_z: stationary.force_z + residual.value,
            error_estimate: stationary.error_estimate + residual.error_estimate,
            parts: ForceParts::Moving {
                stationary_part: stationary.force_z,
                residual_part: residual.value,
            },
        })
    }

    /// Force a time `t_elapsed` after the atom-wall interaction is switched on.
    ///
    /// `scenario.r` is the distance at the moment of evaluation; a moving atom
    /// started from `r - v t_elapsed`. The total contains the electrostatic
    /// image force at the current distance. The steady part is
    /// [`stationary_force`](Self::stationary_force) at that distance, and the
    /// transient part is the remainder, which for `v = 0` decays with elapsed
    /// time.
    pub fn transient_force(&self, scenario: &WallScenario) -> Result<ForceResult> {
        scenario.validate(&self.units)?;
        let rho = self.rho(scenario.r)?;
        let theta = self.atom.omega0 * scenario.t_elapsed;
        let beta = scenario.v / self.units.c;
        let (steady, transient) = if beta == 0.0 {
            transient_static(rho, theta, &self.tolerances)?
        } else {
            let start = rho - beta * theta;
            if !(start > 0.0) {
                return Err(Error::domain(format!(
                    "the atom would have started behind the wall (R - V t = {})",
                    scenario.r - scenario.v * scenario.t_elapsed
                )));
            }
            let total = transient_general(start, beta, theta, &self.tolerances)?;
            let steady = stationary_kernel(3, rho, &self.tolerances)?.scale(-1.0 / (8.0 * PI));
            (steady, Estimate::new(total.value - steady.value, total.error_estimate + steady.error_estimate))
        };
        let f = self.scale(5);
        let steady_part = steady.value * f;
        let transient_part = transient.value * f;
        Ok(ForceResult {
            force_z: steady_part + transient_part,
            error_estimate: (steady.error_estimate + transient.error_estimate) * f,
            parts: ForceParts::Transient {
                steady_part,
                transient_part,
            },
        })
    }
}

fn to_estimate(r: quadrature::IntegrationResult) -> Estimate {
    Estimate::new(r.value.re, r.error_estimate)
}

/// `int_0^inf f(y) dy` for an integrand carrying `exp(-rate y)` and a
/// Lorentzian on the unit scale.
fn laplace_integral<F: Fn(f64) -> f64>(f: F, rate: f64, tol: &Tolerances) -> Result<Estimate> {
    let g = |y: f64| Complex64::new(f(y), 0.0);
    if rate >= 1.0 {
        return Ok(to_estimate(quadrature::integrate_semi_infinite(g, rate, tol)?));
    }
    let head = quadrature::integrate(g, 0.0, 1.0, tol)?;
    let tail = quadrature::integrate_semi_infinite_from(g, 1.0, rate, tol)?;
    Ok(Estimate::new(
        head.value.re + tail.value.re,
        head.error_estimate + tail.error_estimate,
    ))
}

/// `j(rho) = int_0^inf dy exp(-2 rho y) / (1 + y^2)`.
pub fn retardation_integral(rho: f64, tol: &Tolerances) -> Result<Estimate> {
    if !(rho > 0.0) {
        return Err(Error::domain(format!("rho must be positive, got {rho}")));
    }
    laplace_integral(|y| (-2.0 * rho * y).exp() / (1.0 + y * y), 2.0 * rho, tol)
}

/// `K2 = (d/drho)^2 [j/rho]` (`order = 2`) or `K3 = -(d/drho)^3 [j/rho]`
/// (`order = 3`), both positive, from product-rule integrands.
pub fn stationary_kernel(order: u32, rho: f64, tol: &Tolerances) -> Result<Estimate> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::domain(format!("rho must be positive, got {rho}")));
    }
    let integrand = |y: f64| -> f64 {
        let w = (-2.0 * rho * y).exp() / (1.0 + y * y);
        match order {
            2 => w * (2.0 / rho.powi(3) + 4.0 * y / (rho * rho) + 4.0 * y * y / rho),
            _ => {
                w * (6.0 / rho.powi(4)
                    + 12.0 * y / rho.powi(3)
                    + 12.0 * y * y / (rho * rho)
                    + 8.0 * y.powi(3) / rho)
            }
        }
    };
    match order {
        2 | 3 => laplace_integral(integrand, 2.0 * rho, tol),
        _ => Err(Error::domain(format!("kernel order must be 2 or 3, got {order}"))),
    }
}

/// Regularized lower incomplete gamma `P(n + 1, x) = 1 - exp(-x) sum_{k<=n} x^k/k!`.
fn lower_gamma_ratio(n: u32, x: f64) -> f64 {
    if x < n as f64 + 6.0 {
        // exp(-x) sum_{k>n} x^k/k!, free of cancellation for small x.
        let mut term = (1..=n + 1).fold(1.0, |t, k| t * x / k as f64);
        let mut sum = 0.0;
        let mut k = n + 1;
        while term > 1e-18 * sum || sum == 0.0 {
            sum += term;
            k += 1;
            term *= x / k as f64;
            if term == 0.0 {
                break;
            }
        }
        (-x).exp() * sum
    } else {
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..=n {
            term *= x / k as f64;
            sum += term;
        }
        1.0 - (-x).exp() * sum
    }
}

/// `n`-th derivative (`n <= 6`) of `h(s) = int_0^inf dk sin(2ks) / (2ks (k+1))`,
/// the dimensionless residual integral, through its Laplace representation
/// `h^(n)(s) = (-1)^n n!/(2 s^(n+1)) int_0^inf dt P(n+1, 2st) / (1+t^2)`.
pub fn residual_kernel(n: u32, s: f64, tol: &Tolerances) -> Result<Estimate> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("s must be positive, got {s}")));
    }
    if n > 6 {
        return Err(Error::domain(format!("derivative order must be at most 6, got {n}")));
    }
    let integral = laplace_integral(
        |t| lower_gamma_ratio(n, 2.0 * s * t) / (1.0 + t * t),
        (2.0 * s / (n as f64 + 1.0)).min(1.0),
        tol,
    )?;
    let factorial: f64 = (1..=n).map(f64::from).product();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(integral.scale(sign * factorial / (2.0 * s.powi(n as i32 + 1))))
}

/// `A(a) = int_0^1 mu^3 sin(a mu) dmu`.
pub fn dipole_angular(a: f64) -> f64 {
    if a.abs() < 4.0 {
        let a2 = a * a;
        let mut term = a;
        let mut sum = 0.0;
        let mut m = 0u32;
        loop {
            let contribution = term / (2 * m + 5) as f64;
            sum += contribution;
            if contribution.abs() <= 1e-18 * sum.abs() {
                break;
            }
            m += 1;
            term *= -a2 / ((2 * m) * (2 * m + 1)) as f64;
        }
        sum
    } else {
        let (s, c) = a.sin_cos();
        -c / a + 3.0 * s / (a * a) + 6.0 * c / a.powi(3) - 6.0 * s / a.powi(4)
    }
}

/// Transient force of an atom at rest, in units of `alpha0 hbar omega0^5 / c^4`.
/// Returns `(steady, transient)`; the steady part includes the image force
/// `-3 / (8 rho^4)`.
///
/// The mode integral `int_0^inf dk k^2 A(2 k rho) B(k)` grows linearly and
/// only exists as the limit of an exponential cutoff. Beyond `k = 1` each
/// plane-wave component is continued onto the vertical ray on which it
/// decays, which yields that limit directly.
pub fn transient_static(rho: f64, theta: f64, tol: &Tolerances) -> Result<(Estimate, Estimate)> {
    if !(rho > 0.0) {
        return Err(Error::domain(format!("rho must be positive, got {rho}")));
    }
    if (2.0 * rho - theta).abs() < 1e-9 * (2.0 * rho) {
        return Err(Error::Divergence(format!(
            "elapsed phase {theta} coincides with the image round trip 2 rho = {}",
            2.0 * rho
        )));
    }
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    // A(a) = exp(ia) P(a) + exp(-ia) Q(a).
    let p = |a: Complex64| -> Complex64 { -0.5 / a - 1.5 * i / (a * a) + 3.0 / a.powi(3) + 3.0 * i / a.powi(4) };
    let q = |a: Complex64| -> Complex64 { -0.5 / a + 1.5 * i / (a * a) + 3.0 / a.powi(3) - 3.0 * i / a.powi(4) };

    let head = |f: &dyn Fn(f64) -> f64| -> Result<Estimate> {
        let r = quadrature::integrate(|k| Complex64::new(f(k), 0.0), 0.0, 1.0, tol)?;
        Ok(to_estimate(r))
    };
    // int_1^{1 + i sgn(c) inf} of g(k) exp(i c k), with c the net wavenumber.
    let ray = |g: &dyn Fn(Complex64) -> Complex64, c: f64| -> Result<Estimate> {
        let sigma = c.signum();
        let r = quadrature::integrate_semi_infinite(
            |y| {
                let k = Complex64::new(1.0, sigma * y);
                g(k) * (i * c * (k - one)).exp()
            },
            c.abs(),
            tol,
        )?;
        let v = r.value * i * sigma * (i * c).exp();
        Ok(Estimate::new(v.re, r.error_estimate))
    };
    let add = |parts: &[Estimate]| {
        Estimate::new(
            parts.iter().map(|e| e.value).sum(),
            parts.iter().map(|e| e.error_estimate).sum(),
        )
    };

    let a = |k: Complex64| k * (2.0 * rho);
    let steady = add(&[
        head(&|k| k * k * dipole_angular(2.0 * k * rho) * k / (k + 1.0))?,
        ray(&|k| k.powi(3) / (k + 1.0) * p(a(k)), 2.0 * rho)?,
        ray(&|k| k.powi(3) / (k + 1.0) * q(a(k)), -2.0 * rho)?,
    ]);
    let transient = if theta == 0.0 {
        add(&[
            head(&|k| k * k * dipole_angular(2.0 * k * rho) / (k + 1.0))?,
            ray(&|k| k * k / (k + 1.0) * p(a(k)), 2.0 * rho)?,
            ray(&|k| k * k / (k + 1.0) * q(a(k)), -2.0 * rho)?,
        ])
    } else {
        let up = Complex64::from_polar(0.5, theta);
        let down = Complex64::from_polar(0.5, -theta);
        add(&[
            head(&|k| k * k * dipole_angular(2.0 * k * rho) * ((k + 1.0) * theta).cos() / (k + 1.0))?,
            ray(&|k| k * k / (k + 1.0) * p(a(k)) * up, 2.0 * rho + theta)?,
            ray(&|k| k * k / (k + 1.0) * p(a(k)) * down, 2.0 * rho - theta)?,
            ray(&|k| k * k / (k + 1.0) * q(a(k)) * up, theta - 2.0 * rho)?,
            ray(&|k| k * k / (k + 1.0) * q(a(k)) * down, -2.0 * rho - theta)?,
        ])
    };
    let prefactor = -2.0 / PI;
    let image = -3.0 / (8.0 * rho.powi(4));
    let steady = steady.scale(prefactor);
    Ok((Estimate::new(steady.value + image, steady.error_estimate), transient.scale(prefactor)))
}

/// `int_{-1}^{1} mu^3 / (i (mu b - w))^3 dmu`, analytic in `b` and `w` off the
/// light cone `w = +-b`.
fn angular_moment(b: Complex64, w: Complex64) -> Complex64 {
    let i = Complex64::i();
    let c0 = -i * w;
    if w.norm() > 4.0 * b.norm() {
        // The closed form cancels badly here; the integrand is smooth.
        let (nodes, weights) = quadrature::gauss_legendre(30);
        return nodes
            .iter()
            .zip(&weights)
            .map(|(&m, &wt)| wt * m.powi(3) / (c0 + i * m * b).powi(3))
            .sum();
    }
    let antiderivative = |z: Complex64| z - 3.0 * c0 * z.ln() - 3.0 * c0 * c0 / z + c0.powi(3) / (2.0 * z * z);
    (antiderivative(c0 + i * b) - antiderivative(c0 - i * b)) / b.powi(4)
}

/// Total force (correction plus image force) on an atom that started at
/// `rho_start` and moves with `beta = V/c`, in units of
/// `alpha0 hbar omega0^5 / c^4`, after elapsed phase `theta`.
///
/// The wavenumber and angular integrals are done in closed form; what remains
/// is an integral over the emission time `s`, whose integrand has a double
/// pole where the image signal emitted at `s` returns. The contour passes
/// below it.
pub fn transient_general(rho_start: f64, beta: f64, theta: f64, tol: &Tolerances) -> Result<Estimate> {
    if !(rho_start > 0.0) {
        return Err(Error::domain(format!("initial distance must be positive, got {rho_start}")));
    }
    if !(beta.abs() < 1.0) {
        return Err(Error::domain(format!("|V|/c must be below 1, got {beta}")));
    }
    if !(theta >= 0.0) {
        return Err(Error::domain(format!("elapsed phase must be non-negative, got {theta}")));
    }
    let current = rho_start + beta * theta;
    if !(current > 0.0) {
        return Err(Error::domain("the atom reaches the wall"));
    }
    let i = Complex64::i();
    let first = 1.0 / (2.0 * PI * current.powi(3));
    let image = -3.0 / (8.0 * current.powi(4));
    if theta == 0.0 {
        return Ok(Estimate::new(first + image, 0.0));
    }
    let integrand = |s: Complex64| -> Complex64 {
        let b = 2.0 * rho_start + beta * (theta + s);
        let u = theta - s;
        2.0 * (i * u).exp() * angular_moment(b, u)
    };
    let s_star = (theta - 2.0 * rho_start - beta * theta) / (1.0 + beta);
    let scale = theta.max(1.0);
    if (s_star.abs() < 1e-9 * scale) || ((s_star - theta).abs() < 1e-9 * scale) {
        return Err(Error::Divergence(format!(
            "elapsed phase {theta} puts the returning image signal at the switch-on instant"
        )));
    }
    let mut path: Vec<Complex64> = vec![Complex64::new(0.0, 0.0)];
    if s_star > 0.0 && s_star < theta {
        let delta = (0.5 * s_star).min(0.5 * (theta - s_star)).min(0.5);
        path.push(Complex64::new(s_star - delta, 0.0));
        path.push(Complex64::new(s_star, -delta));
        path.push(Complex64::new(s_star + delta, 0.0));
    }
    path.push(Complex64::new(theta, 0.0));
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for leg in path.windows(2) {
        let (a, d) = (leg[0], leg[1] - leg[0]);
        let r = quadrature::integrate(|t| integrand(a + d * t) * d, 0.0, 1.0, tol)?;
        total += r.value;
        err += r.error_estimate;
    }
    Ok(Estimate::new(first + total.re / PI + image, err / PI))
}
