//! Physical constants, atom parameters and numerical tolerances shared by
//! every other module.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// The three constants the formulas need. Natural units (all ones) by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    /// Speed of light.
    pub c: f64,
    /// Reduced Planck constant.
    pub hbar: f64,
    /// Boltzmann constant.
    pub kb: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem::NATURAL
    }
}

impl UnitSystem {
    pub const NATURAL: UnitSystem = UnitSystem {
        c: 1.0,
        hbar: 1.0,
        kb: 1.0,
    };

    pub fn new(c: f64, hbar: f64, kb: f64) -> Result<Self> {
        for (name, v) in [("c", c), ("hbar", hbar), ("kb", kb)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(UnitSystem { c, hbar, kb })
    }

    /// Temperature seen by a detector with proper acceleration `alpha * c`:
    /// `hbar alpha / (2 pi k_B)`.
    pub fn unruh_temperature(&self, alpha: f64) -> f64 {
        self.hbar * alpha / (2.0 * PI * self.kb)
    }
}

/// A two-level atom as seen by the retardation formulas.
///
/// `alpha0` is the static ground-state polarizability in the Gaussian
/// convention (dimension length^3). An SI polarizability `alpha_SI` in
/// C m^2/V converts as `alpha0 = alpha_SI / (4 pi eps0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpec {
    /// Transition angular frequency.
    pub omega0: f64,
    /// Static polarizability, length^3.
    pub alpha0: f64,
}

impl AtomSpec {
    pub fn new(omega0: f64, alpha0: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::domain(format!("omega0 must be positive, got {omega0}")));
        }
        if !(alpha0.is_finite() && alpha0 > 0.0) {
            return Err(Error::domain(format!("alpha0 must be positive, got {alpha0}")));
        }
        Ok(AtomSpec { omega0, alpha0 })
    }
}

/// Accuracy targets for the numerical engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Largest regulator used in epsilon -> 0 extrapolation, as a fraction of
    /// the natural rate of the integrand (its phase rate).
    pub epsilon_regulator: f64,
    /// Number of regulator values (halving each time) fed to the extrapolation.
    pub richardson_levels: usize,
    /// Integrand evaluation budget per adaptive integration.
    pub max_evaluations: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rel_tol: 1e-11,
            abs_tol: 1e-300,
            epsilon_regulator: 0.2,
            richardson_levels: 6,
            max_evaluations: 1_000_000,
        }
    }
}

impl Tolerances {
    pub fn new(rel_tol: f64, abs_tol: f64, epsilon_regulator: f64, richardson_levels: usize) -> Result<Self> {
        let t = Tolerances {
            rel_tol,
            abs_tol,
            epsilon_regulator,
            richardson_levels,
            ..Tolerances::default()
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain("tolerances must be positive"));
        }
        if !(self.epsilon_regulator > 0.0) {
            return Err(Error::domain("epsilon_regulator must be positive"));
        }
        if self.richardson_levels < 2 {
            return Err(Error::domain("richardson_levels must be at least 2"));
        }
        if self.max_evaluations == 0 {
            return Err(Error::domain("max_evaluations must be positive"));
        }
        Ok(())
    }

    /// Same settings with the relative tolerance scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Tolerances {
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}

/// A computed number with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error_estimate: f64,
}

impl Estimate {
    pub fn new(value: f64, error_estimate: f64) -> Self {
        Estimate { value, error_estimate }
    }

    pub fn scale(self, factor: f64) -> Self {
        Estimate::new(self.value * factor, self.error_estimate * factor.abs())
    }
}

/// Distance in units of `c/omega0`: `rho = R omega0 / c`.
pub fn to_dimensionless(spec: &AtomSpec, r: f64, units: &UnitSystem) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("distance must be positive, got {r}")));
    }
    Ok(r * spec.omega0 / units.c)
}

pub fn from_dimensionless(rho: f64, spec: &AtomSpec, units: &UnitSystem) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::domain(format!("dimensionless distance must be positive, got {rho}")));
    }
    Ok(rho * units.c / spec.omega0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn units_c(c: f64) -> UnitSystem {
        UnitSystem::new(c, 1.0, 1.0).unwrap()
    }

    #[test]
    fn dimensionless_examples() {
        let cases = [(1.0, 1.0, 1.0, 1.0), (2.0, 1.0, 3.0, 6.0), (1.0, 2.0, 3.0, 1.5)];
        for (omega0, c, r, rho) in cases {
            let spec = AtomSpec::new(omega0, 1.0).unwrap();
            let u = units_c(c);
            assert_eq!(to_dimensionless(&spec, r, &u).unwrap(), rho);
            assert_eq!(from_dimensionless(rho, &spec, &u).unwrap(), r);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let spec = AtomSpec::new(1.0, 1.0).unwrap();
        let u = UnitSystem::default();
        assert!(to_dimensionless(&spec, 0.0, &u).is_err());
        assert!(to_dimensionless(&spec, -1.0, &u).is_err());
        assert!(from_dimensionless(0.0, &spec, &u).is_err());
        assert!(AtomSpec::new(0.0, 1.0).is_err());
        assert!(AtomSpec::new(1.0, -1.0).is_err());
        assert!(UnitSystem::new(1.0, 0.0, 1.0).is_err());
        assert!(Tolerances::new(1e-8, 1e-12, 0.1, 1).is_err());
        assert!(Tolerances::new(0.0, 1e-12, 0.1, 3).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(log_rho in -6.0f64..6.0, omega0 in 0.1f64..10.0, c in 0.1f64..10.0) {
            let rho = 10f64.powf(log_rho);
            let spec = AtomSpec::new(omega0, 1.0).unwrap();
            let u = units_c(c);
            let r = from_dimensionless(rho, &spec, &u).unwrap();
            let back = to_dimensionless(&spec, r, &u).unwrap();
            prop_assert!(((back - rho) / rho).abs() <= 1e-14);
        }
    }
}
