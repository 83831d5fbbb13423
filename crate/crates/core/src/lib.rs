//! Numerical library for two families of vacuum-fluctuation effects on moving
//! atoms and detectors.
//!
//! * [`casimir_polder`]: retardation force and potential on an atom near a
//!   perfectly conducting wall, for stationary, adiabatically moving and freshly
//!   released atoms.
//! * [`trajectory`], [`detector_kernels`]: uniformly accelerated and inertial
//!   worldlines and the noise/dissipation kernels of a derivative-coupled
//!   detector on a 1+1 dimensional massless scalar field.
//! * [`cavity_scheme`], [`master_equation`]: transition coefficients for atoms
//!   injected into a single-mode cavity and the resulting photon statistics.
//!
//! All internal computation happens in natural units (`c = hbar = k_B = 1`,
//! lengths measured in `c/omega0` where an atom is involved). [`UnitSystem`]
//! only acts at the API boundary.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod acceptance;
pub mod casimir_polder;
pub mod cavity_scheme;
pub mod detector_kernels;
pub mod domain;
pub mod error;
pub mod master_equation;
pub mod quadrature;
pub mod trajectory;

pub use domain::{from_dimensionless, to_dimensionless, AtomSpec, Estimate, Tolerances, UnitSystem};
pub use error::{Error, Result};
