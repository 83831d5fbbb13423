use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vacuum_kinetics::cavity_scheme;
use vacuum_kinetics::master_equation::{self, ChainRates, PhotonDistribution};
use vacuum_kinetics::UnitSystem;

fn random_distribution(rng: &mut StdRng, n_max: usize, occupied: usize) -> PhotonDistribution {
    let mut p = vec![0.0; n_max + 1];
    for x in p.iter_mut().take(occupied) {
        *x = rng.gen::<f64>();
    }
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    // Renormalizing can leave the sum a few ulps away from 1.
    let drift: f64 = 1.0 - p.iter().sum::<f64>();
    p[0] += drift;
    PhotonDistribution::new(p).unwrap()
}

#[test]
fn random_initial_states_relax_to_the_geometric_state() {
    let mut rng = StdRng::seed_from_u64(20_241_018);
    let rates = ChainRates::new(1.0, 0.5).unwrap();
    let n_max = 64;
    let steady = master_equation::steady_state(rates, n_max).unwrap();
    for _ in 0..5 {
        let p0 = random_distribution(&mut rng, n_max, 12);
        let ev = master_equation::evolve(&p0, rates, 50.0 / (rates.r1 - rates.r2), 25.0).unwrap();
        assert!(ev.last().p.l1_distance(&steady) <= 1e-6);
        assert!(ev.max_trace_error <= 1e-12);
    }
}

#[test]
fn detailed_balance_holds_level_by_level() {
    for q in [0.1, 0.5, 0.9] {
        let rates = ChainRates::new(2.0, 2.0 * q).unwrap();
        let s = master_equation::steady_state_auto(rates).unwrap();
        let p = s.probabilities();
        for n in 1..p.len() {
            let n = n as f64;
            let (up, down) = (rates.r2 * n * p[n as usize - 1], rates.r1 * n * p[n as usize]);
            assert!((up - down).abs() <= 1e-12);
        }
    }
}

#[test]
fn doubling_the_truncation_leaves_the_steady_state_unchanged() {
    let rates = ChainRates::new(1.0, 0.8).unwrap();
    let small = master_equation::steady_state(rates, 256).unwrap();
    let large = master_equation::steady_state(rates, 512).unwrap();
    for n in 0..=128 {
        assert!((small.probabilities()[n] - large.probabilities()[n]).abs() < 1e-12);
    }
}

#[test]
fn adiabatic_cavity_temperature_is_the_unruh_temperature() {
    let units = UnitSystem::NATURAL;
    for (nu, alpha) in [(1.0, 1.0), (3.0, 0.5), (0.2, 4.0)] {
        let q = cavity_scheme::ratio_adiabatic(nu, alpha).unwrap();
        let t = master_equation::cavity_temperature(ChainRates::new(1.0, q).unwrap(), nu, &units).unwrap();
        assert!((t.value / units.unruh_temperature(alpha) - 1.0).abs() < 1e-12);
        // The product form does not reproduce the Boltzmann factor.
        assert!(((-nu / t.log_form).exp() / q - 1.0).abs() > 1e-3);
    }
}

#[test]
fn no_steady_state_without_net_absorption() {
    let rates = ChainRates::new(1.0, 1.5).unwrap();
    assert!(matches!(
        master_equation::steady_state(rates, 16),
        Err(vacuum_kinetics::Error::NoSteadyState(_))
    ));
    assert!(master_equation::mean_photon_number(rates).is_err());
}
