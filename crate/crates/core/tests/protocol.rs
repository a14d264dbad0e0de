mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

use cavity_metrology::hamiltonians::SystemParams;
use cavity_metrology::metrology::{
    build_u_n, ghz_generate, ghz_target, phase_uncertainty, phase_uncertainty_from_curve, protocol_run, readout_phase,
    sql_baseline, twist_time, ProtocolConfig, Representation,
};
use cavity_metrology::oracle::{single_qubit_purity, symmetric_isometry};
use cavity_metrology::dynamics::propagator;
use cavity_metrology::spin::{collective_operator, rotation, DickeState, SpinOperatorKind};
use cavity_metrology::Error;
use proptest::prelude::*;

const DURATION: f64 = 3.0;

fn params(n: usize) -> SystemParams {
    SystemParams::from_qubit_frame(n, 1.0, FRAC_PI_3, 0.02, 0.9, 1.0).unwrap()
}

fn p_up(n: usize, phi: f64, repr: Representation) -> Result<f64, Error> {
    let cfg = ProtocolConfig::at_phase(params(n), DURATION, phi, 0, repr)?;
    Ok(protocol_run(&cfg)?.p_up)
}

fn grid() -> impl Iterator<Item = f64> {
    (0..32).map(|k| -PI + (k as f64 + 0.5) * 2.0 * PI / 32.0)
}

#[test]
fn fringe_follows_cos_n_phi() {
    for n in 1..=8 {
        for phi in grid() {
            let p = p_up(n, phi, Representation::SpinOnly).unwrap();
            let expected = 0.5 * (1.0 + (n as f64 * phi).cos());
            assert!((p - expected).abs() <= 1e-9, "N={n} φ={phi}: {p} vs {expected}");
        }
    }
}

#[test]
fn fringe_stays_in_extremal_states() {
    for n in 1..=8 {
        for phi in grid().step_by(5) {
            let cfg = ProtocolConfig::at_phase(params(n), DURATION, phi, 2, Representation::SpinOnly).unwrap();
            let r = protocol_run(&cfg).unwrap();
            assert!(r.leakage <= 1e-10, "N={n}: leak {}", r.leakage);
            assert!((r.phi - phi).abs() < 1e-9);
        }
    }
}

#[test]
fn composite_vacuum_matches_spin_only() {
    for n in 1..=4 {
        for phi in grid().step_by(7) {
            let a = p_up(n, phi, Representation::SpinOnly).unwrap();
            let b = p_up(n, phi, Representation::Composite { n_max: 8 }).unwrap();
            assert!((a - b).abs() <= 1e-8);
        }
    }
}

#[test]
fn finite_difference_reaches_heisenberg_limit() {
    for n in 1..=8 {
        let phi = PI / (2.0 * n as f64) + 0.1 / n as f64;
        let numeric = phase_uncertainty_from_curve(n, phi, 1e-5 / n as f64, |x| p_up(n, x, Representation::SpinOnly))
            .unwrap();
        let analytic = phase_uncertainty(n, phi).unwrap();
        assert_eq!(analytic, 1.0 / n as f64);
        assert!((numeric - analytic).abs() <= 1e-6, "N={n}: {numeric}");
    }
}

#[test]
fn finite_difference_rejects_fringe_node() {
    let r = phase_uncertainty_from_curve(2, 0.0, 1e-5, |x| p_up(2, x, Representation::SpinOnly));
    assert!(matches!(r, Err(Error::InvalidArgument(_))));
}

#[test]
fn twisting_output_is_ghz_target() {
    for n in 1..=8 {
        let p = params(n);
        let sz = collective_operator(SpinOperatorKind::Sz, n).unwrap();
        let h = sz.try_mul(&sz).unwrap().scale(p.chi().unwrap());
        let mut twist = propagator(&h, twist_time(&p).unwrap()).unwrap();
        if n % 2 == 1 {
            twist = rotation(SpinOperatorKind::Sz, FRAC_PI_2, n).unwrap().try_mul(&twist).unwrap();
        }
        let out = DickeState::x_extremal(n, false).unwrap().evolved_by(&twist).unwrap();
        let o = out.overlap_sqr(&ghz_target(n).unwrap());
        assert!((o - 1.0).abs() <= 1e-10, "N={n}: {o}");
        let o = out.overlap_sqr(&ghz_generate(n).unwrap());
        assert!((o - 1.0).abs() <= 1e-10, "N={n}: {o}");
    }
}

#[test]
fn full_sequence_gives_z_basis_cat() {
    for n in 1..=8 {
        let out = DickeState::all_down(n).unwrap().evolved_by(&build_u_n(&params(n)).unwrap()).unwrap();
        let a = out.amplitudes();
        assert!((a[0].norm_sqr() - 0.5).abs() <= 1e-10 && (a[n].norm_sqr() - 0.5).abs() <= 1e-10, "N={n}");
    }
}

#[test]
fn ghz_single_qubit_reduced_state_is_maximally_mixed() {
    for n in 2..=5 {
        let ghz = DickeState::all_down(n).unwrap().evolved_by(&build_u_n(&params(n)).unwrap()).unwrap();
        let iso = symmetric_isometry(n).unwrap();
        for state in [ghz, ghz_generate(n).unwrap()] {
            let full = iso.embed_dicke(&state).unwrap();
            for q in 1..=n {
                assert!((single_qubit_purity(&full, q).unwrap() - 0.5).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn sql_ratio_is_sqrt_n() {
    for n in 1..=64 {
        let ratio = sql_baseline(n, 0.3).unwrap() / phase_uncertainty(n, 0.3).unwrap();
        assert!((ratio - (n as f64).sqrt()).abs() <= 1e-12 * (n as f64).sqrt());
    }
}

#[test]
fn readout_saturates_and_scales_linearly() {
    let base = params(1);
    let chi = base.chi().unwrap();
    for n in [1, 2, 5] {
        let mut p = base.with_n_qubits(n).unwrap();
        p.kappa = 2.0 * chi * n as f64;
        let r = readout_phase(&p).unwrap();
        assert!((r.upper - FRAC_PI_4).abs() < 1e-12 && (r.lower + FRAC_PI_4).abs() < 1e-12);
    }
    let mut p = base;
    p.kappa = 2.0 * chi / 0.01;
    let single = readout_phase(&p).unwrap().upper;
    for n in 2..=8 {
        let angle = readout_phase(&p.with_n_qubits(n).unwrap()).unwrap().upper;
        assert!((angle / (n as f64 * single) - 1.0).abs() <= 0.01, "N={n}");
    }
}

#[test]
fn degeneracy_point_has_no_lambda_estimate() {
    let p = SystemParams::new(3, 1.0, 0.5, 0.5, 0.02, 0.4).unwrap();
    let cfg = ProtocolConfig::at_phase(p, DURATION, 0.0, 0, Representation::SpinOnly).unwrap();
    let r = protocol_run(&cfg).unwrap();
    assert_eq!(r.delta_lambda, None);
    assert!((r.p_up - 1.0).abs() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn outcome_probabilities_sum_to_one(n in 1usize..=6, phi in -3.1f64..3.1, photons in 0usize..4) {
        let cfg = ProtocolConfig::at_phase(params(n), DURATION, phi, photons, Representation::SpinOnly).unwrap();
        let r = protocol_run(&cfg).unwrap();
        prop_assert!((r.p_up + r.p_down - 1.0).abs() < 1e-10);
        prop_assert!((r.delta_omega * n as f64 * DURATION - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lambda_uncertainty_formula(n in 1usize..=8, lambda in 0.05f64..0.45, t in 0.5f64..20.0) {
        let p = SystemParams::new(n, 1.3, 0.4, lambda, 0.02, 0.3).unwrap();
        let cfg = ProtocolConfig::at_phase(p, t, 0.4, 0, Representation::SpinOnly).unwrap();
        let dl = protocol_run(&cfg).unwrap().delta_lambda.unwrap();
        let expected = 1.0 / (n as f64 * t * p.b_z * p.abs_cos_theta());
        prop_assert!((dl / expected - 1.0).abs() < 1e-12);
    }
}
