//! What each scenario takes, what it reports, and how one grid point is evaluated.
//!
//! Wall scenarios work in units where `c = hbar = omega0 = alpha0 = 1`;
//! detector and cavity scenarios in units where `c = hbar = k_B = 1`.

use vacuum_kinetics::casimir_polder::{CasimirPolder, ForceParts, WallScenario};
use vacuum_kinetics::cavity_scheme::{self, CavitySpec};
use vacuum_kinetics::detector_kernels::{self, KernelSpec, Worldline};
use vacuum_kinetics::master_equation::{self, ChainRates, PhotonDistribution};
use vacuum_kinetics::trajectory::{AcceleratedTrajectory, InertialTrajectory};
use vacuum_kinetics::{AtomSpec, Error, Tolerances, UnitSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    CpStationary,
    CpMoving,
    CpTransient,
    UnruhKernels,
    CavityRates,
    CavityMaster,
    Acceptance,
}

pub struct ParamDef {
    pub name: &'static str,
    pub unit: &'static str,
    pub default: Option<f64>,
}

const fn required(name: &'static str, unit: &'static str) -> ParamDef {
    ParamDef { name, unit, default: None }
}

const fn optional(name: &'static str, unit: &'static str, default: f64) -> ParamDef {
    ParamDef {
        name,
        unit,
        default: Some(default),
    }
}

const LENGTH: &str = "c/omega0";
const ENERGY: &str = "alpha0 hbar omega0^4/c^3";
const FORCE: &str = "alpha0 hbar omega0^5/c^4";
const KERNEL: &str = "1/tau^2";

const CP_STATIONARY: &[ParamDef] = &[required("R", LENGTH)];
const CP_MOVING: &[ParamDef] = &[required("R", LENGTH), required("R0", LENGTH)];
const CP_TRANSIENT: &[ParamDef] = &[required("R", LENGTH), optional("v", "c", 0.0), required("t", "1/omega0")];
const UNRUH: &[ParamDef] = &[
    optional("alpha", "1/tau", 1.0),
    required("dtau", "tau"),
    optional("eps_alpha", "1", 0.02),
    optional("sigma_alpha", "1", 0.0),
];
const CAVITY_RATES: &[ParamDef] = &[
    required("nu", "1/tau"),
    required("omega", "1/tau"),
    optional("alpha", "1/tau", 1.0),
    required("T", "tau"),
    optional("lambda", "1/tau", 1.0),
    optional("r", "1/tau", 1.0),
    optional("v", "c", 0.0),
    optional("copropagating", "bool", 1.0),
];
const CAVITY_MASTER: &[ParamDef] = &[
    required("R1", "1/t"),
    required("R2", "1/t"),
    optional("nu", "k_B/hbar", 1.0),
    required("t", "t"),
    optional("n0", "photons", 0.0),
    optional("n_max", "photons", master_equation::DEFAULT_N_MAX as f64),
];

pub struct Column {
    pub name: &'static str,
    pub unit: &'static str,
}

const fn col(name: &'static str, unit: &'static str) -> Column {
    Column { name, unit }
}

const CP_STATIONARY_OUT: &[Column] = &[
    col("U", ENERGY),
    col("U_error", ENERGY),
    col("U_over_U_near", "1"),
    col("U_over_U_far", "1"),
    col("F", FORCE),
    col("F_error", FORCE),
];
const CP_MOVING_OUT: &[Column] = &[
    col("U", ENERGY),
    col("U_error", ENERGY),
    col("residual_bracket", ENERGY),
    col("F", FORCE),
    col("F_error", FORCE),
    col("F_stationary", FORCE),
    col("F_residual", FORCE),
    col("F_residual_over_F_stationary", "1"),
];
const CP_TRANSIENT_OUT: &[Column] = &[
    col("t_over_round_trip", "1"),
    col("F", FORCE),
    col("F_error", FORCE),
    col("F_steady", FORCE),
    col("F_transient", FORCE),
    col("F_over_F_stationary", "1"),
];
const UNRUH_OUT: &[Column] = &[
    col("epsilon0", "tau"),
    col("N", KERNEL),
    col("N_error", KERNEL),
    col("D", KERNEL),
    col("D_error", KERNEL),
    col("T_unruh", "hbar/k_B tau"),
    col("N_thermal_inertial", KERNEL),
    col("N_vacuum_inertial", KERNEL),
    col("D_vacuum_inertial", KERNEL),
];
const CAVITY_RATES_OUT: &[Column] = &[
    col("R1", "1/tau"),
    col("R2", "1/tau"),
    col("rates_error", "1/tau"),
    col("R2_over_R1", "1"),
    col("ratio_adiabatic", "1"),
    col("ratio_sudden_asymptote", "1"),
    col("I2_abs_squared", "tau^2"),
    col("cavity_size_ok", "bool"),
    col("sudden_regime", "bool"),
];
const CAVITY_MASTER_OUT: &[Column] = &[
    col("q", "1"),
    col("n_mean_steady", "photons"),
    col("T_c", "hbar nu/k_B units"),
    col("T_c_log_form", "hbar nu/k_B units"),
    col("n_mean", "photons"),
    col("trace_error", "1"),
    col("tail", "1"),
    col("n_max_used", "photons"),
    col("p0", "1"),
    col("p1", "1"),
    col("p2", "1"),
    col("p3", "1"),
];

/// Flag carried by a grid point that sits on an on-resonance pole.
pub const DIVERGENCE: &str = "divergence";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Bool(bool),
    Empty,
}

/// The outputs of one grid point, in the scenario's column order.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluated {
    pub cells: Vec<Cell>,
    pub flags: Vec<String>,
}

impl Scenario {
    pub const ALL: [Scenario; 7] = [
        Scenario::CpStationary,
        Scenario::CpMoving,
        Scenario::CpTransient,
        Scenario::UnruhKernels,
        Scenario::CavityRates,
        Scenario::CavityMaster,
        Scenario::Acceptance,
    ];

    pub fn parse(s: &str) -> Option<Scenario> {
        Scenario::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::CpStationary => "cp-stationary",
            Scenario::CpMoving => "cp-moving",
            Scenario::CpTransient => "cp-transient",
            Scenario::UnruhKernels => "unruh-kernels",
            Scenario::CavityRates => "cavity-rates",
            Scenario::CavityMaster => "cavity-master",
            Scenario::Acceptance => "acceptance",
        }
    }

    pub fn params(&self) -> &'static [ParamDef] {
        match self {
            Scenario::CpStationary => CP_STATIONARY,
            Scenario::CpMoving => CP_MOVING,
            Scenario::CpTransient => CP_TRANSIENT,
            Scenario::UnruhKernels => UNRUH,
            Scenario::CavityRates => CAVITY_RATES,
            Scenario::CavityMaster => CAVITY_MASTER,
            Scenario::Acceptance => &[],
        }
    }

    pub fn outputs(&self) -> &'static [Column] {
        match self {
            Scenario::CpStationary => CP_STATIONARY_OUT,
            Scenario::CpMoving => CP_MOVING_OUT,
            Scenario::CpTransient => CP_TRANSIENT_OUT,
            Scenario::UnruhKernels => UNRUH_OUT,
            Scenario::CavityRates => CAVITY_RATES_OUT,
            Scenario::CavityMaster => CAVITY_MASTER_OUT,
            Scenario::Acceptance => &[],
        }
    }

    pub fn evaluate(&self, point: &[f64], tol: &Tolerances) -> Result<Evaluated, Error> {
        match self {
            Scenario::CpStationary => cp_stationary(point, tol),
            Scenario::CpMoving => cp_moving(point, tol),
            Scenario::CpTransient => cp_transient(point, tol),
            Scenario::UnruhKernels => unruh_kernels(point, tol),
            Scenario::CavityRates => cavity_rates(point, tol),
            Scenario::CavityMaster => cavity_master(point),
            Scenario::Acceptance => Err(Error::Domain("the acceptance scenario has no grid".into())),
        }
    }
}

fn num(x: f64) -> Cell {
    Cell::Num(x)
}

fn wall(tol: &Tolerances) -> Result<CasimirPolder, Error> {
    Ok(CasimirPolder::new(AtomSpec::new(1.0, 1.0)?, UnitSystem::NATURAL).with_tolerances(*tol))
}

fn cp_stationary(p: &[f64], tol: &Tolerances) -> Result<Evaluated, Error> {
    let cp = wall(tol)?;
    let r = p[0];
    let u = cp.stationary_potential(r)?;
    let f = cp.stationary_force(r)?;
    Ok(Evaluated {
        cells: vec![
            num(u.value),
            num(u.error_estimate),
            num(u.value / cp.asymptote_near(r)?),
            num(u.value / cp.asymptote_far(r)?),
            num(f.force_z),
            num(f.error_estimate),
        ],
        flags: Vec::new(),
    })
}

fn cp_moving(p: &[f64], tol: &Tolerances) -> Result<Evaluated, Error> {
    let cp = wall(tol)?;
    let (r, r0) = (p[0], p[1]);
    let u = cp.moving_potential(r, r0)?;
    let bracket = cp.residual_bracket(r, r0)?;
    let f = cp.moving_force(r, r0)?;
    let ForceParts::Moving { stationary_part, residual_part } = f.parts else {
        unreachable!("moving_force reports moving parts")
    };
    Ok(Evaluated {
        cells: vec![
            num(u.value),
            num(u.error_estimate),
            num(bracket.value),
            num(f.force_z),
            num(f.error_estimate),
            num(stationary_part),
            num(residual_part),
            num(residual_part / stationary_part),
        ],
        flags: Vec::new(),
    })
}

fn cp_transient(p: &[f64], tol: &Tolerances) -> Result<Evaluated, Error> {
    let cp = wall(tol)?;
    let (r, v, t) = (p[0], p[1], p[2]);
    let f = cp.transient_force(&WallScenario::switched_on(r, v, t))?;
    let ForceParts::Transient { steady_part, transient_part } = f.parts else {
        unreachable!("transient_force reports transient parts")
    };
    let stationary = cp.stationary_force(r)?.force_z;
    Ok(Evaluated {
        cells: vec![
            num(t / (2.0 * r)),
            num(f.force_z),
            num(f.error_estimate),
            num(steady_part),
            num(transient_part),
            num(f.force_z / stationary),
        ],
        flags: Vec::new(),
    })
}

fn unruh_kernels(p: &[f64], tol: &Tolerances) -> Result<Evaluated, Error> {
    let (alpha, dtau, eps_alpha, sigma_alpha) = (p[0], p[1], p[2], p[3]);
    let units = UnitSystem::NATURAL;
    let eps0 = eps_alpha / alpha;
    let mut spec = KernelSpec::new(Worldline::Accelerated(AcceleratedTrajectory::new(alpha, 0.0)?), eps0)?;
    let mut flags = Vec::new();
    if sigma_alpha > 0.0 {
        spec = spec.with_smearing(sigma_alpha / alpha)?;
        flags.push("smeared".to_string());
    }
    let k = detector_kernels::extrapolated_kernel(&spec, dtau, 0.0, tol)?;
    let t_u = units.unruh_temperature(alpha);
    let thermal = detector_kernels::extrapolated_thermal(t_u, dtau, eps0, &units, tol)?;
    let at_rest = KernelSpec::new(Worldline::Inertial(InertialTrajectory::new(0.0, 0.0)?), eps0)?;
    let vacuum = detector_kernels::extrapolated_kernel(&at_rest, dtau, 0.0, tol)?;
    Ok(Evaluated {
        cells: vec![
            num(eps0),
            num(k.noise.value.re),
            num(k.noise.error_estimate),
            num(k.dissipation.value.re),
            num(k.dissipation.error_estimate),
            num(t_u),
            num(thermal.noise.value.re),
            num(vacuum.noise.value.re),
            num(vacuum.dissipation.value.re),
        ],
        flags,
    })
}

fn cavity_rates(p: &[f64], tol: &Tolerances) -> Result<Evaluated, Error> {
    let (nu, omega, alpha, t, lambda, r, v, co) = (p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7]);
    let copropagating = co != 0.0;
    let spec = if alpha == 0.0 {
        CavitySpec::inertial(nu, omega, v, t, copropagating)?
    } else {
        let mut s = CavitySpec::accelerated(nu, omega, alpha, t)?;
        s.copropagating = copropagating;
        s.validate()?;
        s
    }
    .with_coupling(lambda, r)?;
    let rates = cavity_scheme::rates(&spec, tol)?;
    let mut flags = Vec::new();
    if !rates.flags.cavity_size_ok {
        flags.push("cavity_size".to_string());
    }
    let (adiabatic, sudden) = if alpha > 0.0 {
        let s = cavity_scheme::ratio_sudden_asymptotic(omega, alpha)?;
        (num(cavity_scheme::ratio_adiabatic(omega, alpha)?), num(s.value))
    } else {
        (Cell::Empty, Cell::Empty)
    };
    let i2_sq = num(rates.i2.norm_sqr());
    let ratio = if alpha == 0.0 {
        match cavity_scheme::ratio_constant_velocity(nu, omega, v, t, copropagating) {
            Ok(x) => num(x),
            Err(Error::Divergence(_)) => {
                flags.push(DIVERGENCE.to_string());
                Cell::Empty
            }
            Err(e) => return Err(e),
        }
    } else if rates.r1 > 0.0 {
        num(rates.ratio())
    } else {
        Cell::Empty
    };
    Ok(Evaluated {
        cells: vec![
            num(rates.r1),
            num(rates.r2),
            num(rates.error_estimate),
            ratio,
            adiabatic,
            sudden,
            i2_sq,
            Cell::Bool(rates.flags.cavity_size_ok),
            Cell::Bool(rates.flags.sudden_regime),
        ],
        flags,
    })
}

fn as_count(name: &str, x: f64) -> Result<usize, Error> {
    if x >= 0.0 && x.fract() == 0.0 && x < 1e9 {
        Ok(x as usize)
    } else {
        Err(Error::Domain(format!("{name} must be a non-negative integer, got {x}")))
    }
}

fn cavity_master(p: &[f64]) -> Result<Evaluated, Error> {
    let (r1, r2, nu, t) = (p[0], p[1], p[2], p[3]);
    let n0 = as_count("n0", p[4])?;
    let n_max = as_count("n_max", p[5])?;
    let rates = ChainRates::new(r1, r2)?;
    let mut flags = Vec::new();
    let (q, steady, temp, log_form) = match rates.q() {
        Ok(q) => {
            let temp = master_equation::cavity_temperature(rates, nu, &UnitSystem::NATURAL)?;
            let steady = master_equation::mean_photon_number(rates)?;
            (num(q), num(steady), num(temp.value), num(temp.log_form))
        }
        Err(Error::NoSteadyState(_)) => {
            flags.push("no_steady_state".to_string());
            (Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty)
        }
        Err(e) => return Err(e),
    };
    let p0 = PhotonDistribution::fock(n0, n_max)?;
    let output_dt = if t > 0.0 { t } else { 1.0 };
    let ev = master_equation::evolve_auto(&p0, rates, t, output_dt)?;
    let last = &ev.last().p;
    let prob = |n: usize| num(last.probabilities().get(n).copied().unwrap_or(0.0));
    Ok(Evaluated {
        cells: vec![
            q,
            steady,
            temp,
            log_form,
            num(last.mean()),
            num(ev.max_trace_error),
            num(last.tail()),
            num(last.n_max() as f64),
            prob(0),
            prob(1),
            prob(2),
            prob(3),
        ],
        flags,
    })
}
