mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use cavity_metrology::composite::{embed_product, ladder_operator, lift, LadderKind, Side};
use cavity_metrology::linalg;
use cavity_metrology::spin::{collective_operator, rotation, DickeState, SpinOperatorKind};
use cavity_metrology::{Complex64, DMatrix, DVector};
use common::{matrix_diff, pseudo_random_state, taylor_exp_i};
use proptest::prelude::*;

#[test]
fn quarter_turn_about_x_matches_series_oracle() {
    let sx = collective_operator(SpinOperatorKind::Sx, 2).unwrap();
    let oracle = taylor_exp_i(sx.matrix(), FRAC_PI_2);
    let r = rotation(SpinOperatorKind::Sx, FRAC_PI_2, 2).unwrap();
    assert!(matrix_diff(r.matrix(), &oracle) < 1e-13);

    // exp(+i π/2 S_x)|M=-1⟩ = (1/2, i/√2, -1/2); the mirrored vector
    // (-1/2, i/√2, 1/2) belongs to the opposite angle.
    let down = DickeState::all_down(2).unwrap();
    let plus = r.apply(down.amplitudes()).unwrap();
    let minus = rotation(SpinOperatorKind::Sx, -FRAC_PI_2, 2).unwrap().apply(down.amplitudes()).unwrap();
    let for_plus = DVector::from_vec(vec![
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, FRAC_1_SQRT_2),
        Complex64::new(-0.5, 0.0),
    ]);
    let for_minus = DVector::from_vec(vec![
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, FRAC_1_SQRT_2),
        Complex64::new(0.5, 0.0),
    ]);
    // equal up to a global phase
    assert!((plus.dotc(&for_plus).norm() - 1.0).abs() < 1e-12);
    assert!((minus.dotc(&for_minus).norm() - 1.0).abs() < 1e-12);
    for (a, b) in plus.iter().zip(for_minus.iter()) {
        assert!((a.norm() - b.norm()).abs() < 1e-12);
    }
}

#[test]
fn rotations_match_series_oracle_for_all_axes() {
    for n in 1..=6 {
        for axis in [SpinOperatorKind::Sx, SpinOperatorKind::Sy, SpinOperatorKind::Sz] {
            let generator = collective_operator(axis, n).unwrap();
            for angle in [-2.1, -0.4, 0.9, PI] {
                let r = rotation(axis, angle, n).unwrap();
                let oracle = taylor_exp_i(generator.matrix(), angle);
                assert!(matrix_diff(r.matrix(), &oracle) < 1e-11, "{axis:?} N={n} angle={angle}");
            }
        }
    }
}

proptest! {
    #[test]
    fn z_rotations_compose(alpha in -PI..PI, beta in -PI..PI, n in 1usize..=8) {
        let a = rotation(SpinOperatorKind::Sz, alpha, n).unwrap();
        let b = rotation(SpinOperatorKind::Sz, beta, n).unwrap();
        let ab = rotation(SpinOperatorKind::Sz, alpha + beta, n).unwrap();
        prop_assert!(matrix_diff(a.try_mul(&b).unwrap().matrix(), ab.matrix()) <= 1e-10);
    }

    #[test]
    fn rotations_preserve_norm(angle in -4.0f64..4.0, n in 1usize..=8, seed in any::<u64>(), axis in 0usize..3) {
        let axis = [SpinOperatorKind::Sx, SpinOperatorKind::Sy, SpinOperatorKind::Sz][axis];
        let s = pseudo_random_state(n + 1, seed);
        let out = rotation(axis, angle, n).unwrap().apply(&s).unwrap();
        prop_assert!((out.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn lift_preserves_spectra(n in 1usize..=3, n_max in 1usize..=4, seed in any::<u64>()) {
        // Hermitian operator on the Dicke side from a random vector's outer product plus S_x
        let v = pseudo_random_state(n + 1, seed);
        let sx = collective_operator(SpinOperatorKind::Sx, n).unwrap();
        let h = cavity_metrology::OperatorMatrix::new(sx.space(), sx.matrix() + &v * v.adjoint()).unwrap();
        let base = linalg::eigenvalues(&h).unwrap();
        let lifted = linalg::eigenvalues(&lift(&h, Side::Spin, n, n_max).unwrap()).unwrap();
        let mut expected: Vec<f64> = base.iter().flat_map(|&e| std::iter::repeat_n(e, n_max + 1)).collect();
        expected.sort_by(f64::total_cmp);
        prop_assert!(common::max_abs_diff(&lifted, &expected) <= 1e-10);

        let num = ladder_operator(LadderKind::Number, n_max);
        let lifted = linalg::eigenvalues(&lift(&num, Side::Cavity, n, n_max).unwrap()).unwrap();
        let mut expected: Vec<f64> = (0..=n_max).flat_map(|k| std::iter::repeat_n(k as f64, n + 1)).collect();
        expected.sort_by(f64::total_cmp);
        prop_assert!(common::max_abs_diff(&lifted, &expected) <= 1e-10);
    }
}

/// Reduced density matrix of the Dicke factor, tracing out the cavity.
fn trace_out_cavity(amps: &DVector<Complex64>, n_qubits: usize, n_max: usize) -> DMatrix<Complex64> {
    let fock = n_max + 1;
    DMatrix::from_fn(n_qubits + 1, n_qubits + 1, |i, j| {
        (0..fock).map(|n| amps[i * fock + n] * amps[j * fock + n].conj()).sum()
    })
}

#[test]
fn partial_trace_recovers_product_factor() {
    for (n, n_max, photons) in [(1, 2, 0), (3, 4, 2), (5, 3, 3)] {
        let spin = DickeState::new(n, pseudo_random_state(n + 1, n as u64)).unwrap();
        let joint = embed_product(&spin, photons, n_max).unwrap();
        let rho = trace_out_cavity(joint.amplitudes(), n, n_max);
        let expected = spin.amplitudes() * spin.amplitudes().adjoint();
        assert!(matrix_diff(&rho, &expected) <= 1e-12);
    }
}

#[test]
fn canonical_commutator_below_truncation_edge() {
    let n_max = 7;
    let a = ladder_operator(LadderKind::Annihilate, n_max);
    let ad = ladder_operator(LadderKind::Create, n_max);
    let comm = a.commutator(&ad).unwrap();
    for i in 0..n_max {
        for j in 0..n_max {
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((comm.matrix()[(i, j)] - Complex64::new(expected, 0.0)).norm() < 1e-12);
        }
    }
}
