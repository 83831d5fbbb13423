//! Photon-number distribution of a cavity pumped by a beam of atoms.
//!
//! The diagonal of the field density matrix obeys the Pauli-type equation
//!
//! ```text
//! dp_n/dt = -R2 [(n+1) p_n - n p_{n-1}] - R1 [n p_n - (n+1) p_{n+1}]
//! ```
//!
//! on `n = 0..=N_max`. The top level does not emit into `N_max + 1`, so the
//! truncated chain conserves probability exactly; the tail criterion
//! `p_{N_max} < 1e-10` decides whether the truncation is acceptable.

use crate::cavity_scheme::TransitionRates;
use crate::domain::UnitSystem;
use crate::error::{Error, Result};

pub const DEFAULT_N_MAX: usize = 256;
pub const TAIL_LIMIT: f64 = 1e-10;
const MAX_N_MAX: usize = 1 << 20;

/// Absorption (`r1`) and emission (`r2`) rates driving the chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainRates {
    pub r1: f64,
    pub r2: f64,
}

impl ChainRates {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        if !(r1 >= 0.0 && r2 >= 0.0 && r1.is_finite() && r2.is_finite()) {
            return Err(Error::domain(format!("rates must be finite and non-negative, got R1={r1}, R2={r2}")));
        }
        Ok(ChainRates { r1, r2 })
    }

    /// Boltzmann factor `q = R2/R1` of the steady state.
    pub fn q(&self) -> Result<f64> {
        if !(self.r1 > self.r2) {
            return Err(Error::NoSteadyState(format!(
                "R1 = {} does not exceed R2 = {}",
                self.r1, self.r2
            )));
        }
        Ok(self.r2 / self.r1)
    }
}

impl From<&TransitionRates> for ChainRates {
    fn from(r: &TransitionRates) -> Self {
        ChainRates { r1: r.r1, r2: r.r2 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    p: Vec<f64>,
}

impl PhotonDistribution {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::domain("distribution needs at least one level"));
        }
        if p.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::domain("occupations must be finite and non-negative"));
        }
        let trace: f64 = p.iter().sum();
        if (trace - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("occupations sum to {trace}, not 1")));
        }
        Ok(PhotonDistribution { p })
    }

    pub fn vacuum(n_max: usize) -> Self {
        Self::fock(0, n_max).expect("level 0 always exists")
    }

    pub fn fock(n: usize, n_max: usize) -> Result<Self> {
        if n > n_max {
            return Err(Error::domain(format!("level {n} above N_max = {n_max}")));
        }
        let mut p = vec![0.0; n_max + 1];
        p[n] = 1.0;
        Ok(PhotonDistribution { p })
    }

    pub fn n_max(&self) -> usize {
        self.p.len() - 1
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn trace(&self) -> f64 {
        self.p.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.p.iter().enumerate().map(|(n, x)| n as f64 * x).sum()
    }

    pub fn tail(&self) -> f64 {
        self.p[self.n_max()]
    }

    /// Same distribution on a larger (or equal) truncation.
    pub fn padded(&self, n_max: usize) -> Self {
        let mut p = self.p.clone();
        p.resize(n_max.max(self.n_max()) + 1, 0.0);
        PhotonDistribution { p }
    }

    pub fn l1_distance(&self, other: &PhotonDistribution) -> f64 {
        let n = self.p.len().max(other.p.len());
        (0..n)
            .map(|i| (self.p.get(i).unwrap_or(&0.0) - other.p.get(i).unwrap_or(&0.0)).abs())
            .sum()
    }
}

fn drift_into(p: &[f64], rates: ChainRates, out: &mut [f64]) {
    let top = p.len() - 1;
    for n in 0..=top {
        let nf = n as f64;
        let mut d = 0.0;
        if n < top {
            d -= rates.r2 * (nf + 1.0) * p[n];
            d += rates.r1 * (nf + 1.0) * p[n + 1];
        }
        if n > 0 {
            d += rates.r2 * nf * p[n - 1];
            d -= rates.r1 * nf * p[n];
        }
        out[n] = d;
    }
}

/// Right-hand side of the master equation.
pub fn drift(p: &PhotonDistribution, rates: ChainRates) -> Vec<f64> {
    let mut out = vec![0.0; p.p.len()];
    drift_into(&p.p, rates, &mut out);
    out
}

/// Largest stable step of the fourth-order stepper on a chain of `n_max + 1` levels.
pub fn step_bound(rates: ChainRates, n_max: usize) -> f64 {
    0.1 / (rates.r1.max(rates.r2) * (n_max as f64 + 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionSample {
    pub t: f64,
    pub mean: f64,
    pub trace: f64,
    pub p: PhotonDistribution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub samples: Vec<EvolutionSample>,
    /// Largest `|trace - 1|` over every internal step.
    pub max_trace_error: f64,
}

impl Evolution {
    pub fn last(&self) -> &EvolutionSample {
        self.samples.last().expect("evolution records its initial state")
    }
}

/// Integrate from `p0` to `t_final`, recording the state every `output_dt`.
/// Internal steps never exceed [`step_bound`].
pub fn evolve(p0: &PhotonDistribution, rates: ChainRates, t_final: f64, output_dt: f64) -> Result<Evolution> {
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(Error::domain(format!("final time must be non-negative, got {t_final}")));
    }
    if !(output_dt > 0.0) {
        return Err(Error::domain(format!("output interval must be positive, got {output_dt}")));
    }
    let n = p0.p.len();
    let mut p = p0.p.clone();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let record = |t: f64, p: &[f64]| {
        let dist = PhotonDistribution { p: p.to_vec() };
        EvolutionSample {
            t,
            mean: dist.mean(),
            trace: dist.trace(),
            p: dist,
        }
    };
    let mut samples = vec![record(0.0, &p)];
    let mut max_trace_error = (samples[0].trace - 1.0).abs();
    let bound = step_bound(rates, p0.n_max());
    let mut t = 0.0;
    while t < t_final {
        let t_next = (t + output_dt).min(t_final);
        let span = t_next - t;
        let steps = if bound.is_finite() { (span / bound).ceil().max(1.0) as usize } else { 1 };
        let h = span / steps as f64;
        for _ in 0..steps {
            drift_into(&p, rates, &mut k1);
            for i in 0..n {
                tmp[i] = p[i] + 0.5 * h * k1[i];
            }
            drift_into(&tmp, rates, &mut k2);
            for i in 0..n {
                tmp[i] = p[i] + 0.5 * h * k2[i];
            }
            drift_into(&tmp, rates, &mut k3);
            for i in 0..n {
                tmp[i] = p[i] + h * k3[i];
            }
            drift_into(&tmp, rates, &mut k4);
            for i in 0..n {
                p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            let trace: f64 = p.iter().sum();
            if !trace.is_finite() || p.iter().any(|x| *x < -1e-12) {
                return Err(Error::Instability(format!("negative or non-finite occupation near t = {t}")));
            }
            max_trace_error = max_trace_error.max((trace - 1.0).abs());
        }
        t = t_next;
        samples.push(record(t, &p));
    }
    let last = &samples.last().expect("initial state recorded").p;
    if last.tail() >= TAIL_LIMIT {
        return Err(Error::Truncation {
            n_max: last.n_max(),
            tail: last.tail(),
        });
    }
    Ok(Evolution {
        samples,
        max_trace_error,
    })
}

/// [`evolve`], doubling the truncation from `p0.n_max()` until the tail criterion holds.
pub fn evolve_auto(p0: &PhotonDistribution, rates: ChainRates, t_final: f64, output_dt: f64) -> Result<Evolution> {
    let mut n_max = p0.n_max().max(1);
    loop {
        match evolve(&p0.padded(n_max), rates, t_final, output_dt) {
            Err(Error::Truncation { .. }) if n_max < MAX_N_MAX => n_max *= 2,
            other => return other,
        }
    }
}

/// Normalized geometric distribution `p_n ∝ q^n` on `0..=n_max`.
pub fn steady_state(rates: ChainRates, n_max: usize) -> Result<PhotonDistribution> {
    let q = rates.q()?;
    let norm = (1.0 - q) / (1.0 - q.powi(n_max as i32 + 1));
    let mut p = Vec::with_capacity(n_max + 1);
    let mut x = norm;
    for _ in 0..=n_max {
        p.push(x);
        x *= q;
    }
    let dist = PhotonDistribution { p };
    if n_max > 0 && dist.tail() >= TAIL_LIMIT {
        return Err(Error::Truncation {
            n_max,
            tail: dist.tail(),
        });
    }
    Ok(dist)
}

/// [`steady_state`] starting at [`DEFAULT_N_MAX`] and doubling until the tail criterion holds.
pub fn steady_state_auto(rates: ChainRates) -> Result<PhotonDistribution> {
    let mut n_max = DEFAULT_N_MAX;
    loop {
        match steady_state(rates, n_max) {
            Err(Error::Truncation { .. }) if n_max < MAX_N_MAX => n_max *= 2,
            other => return other,
        }
    }
}

/// Steady-state mean photon number `q/(1-q)`.
pub fn mean_photon_number(rates: ChainRates) -> Result<f64> {
    let q = rates.q()?;
    Ok(q / (1.0 - q))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityTemperature {
    /// `hbar nu / (k_B ln(R1/R2))`, which satisfies `R2/R1 = exp(-hbar nu/(k_B T_c))`.
    pub value: f64,
    /// `(hbar nu / k_B) ln(R1/R2)`, kept for comparison only.
    pub log_form: f64,
}

pub fn cavity_temperature(rates: ChainRates, nu: f64, units: &UnitSystem) -> Result<CavityTemperature> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::domain(format!("nu must be positive, got {nu}")));
    }
    rates.q()?;
    let quantum = units.hbar * nu / units.kb;
    if rates.r2 == 0.0 {
        return Ok(CavityTemperature {
            value: 0.0,
            log_form: f64::INFINITY,
        });
    }
    let log_ratio = (rates.r1 / rates.r2).ln();
    Ok(CavityTemperature {
        value: quantum / log_ratio,
        log_form: quantum * log_ratio,
    })
}
