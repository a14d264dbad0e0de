//! Reference routines that share no code with the library's eigen-based
//! exponential and diagonalization.
#![allow(dead_code)]

use cavity_metrology::{Complex64, DMatrix, DVector, SystemParams};

/// `exp(X)` by scaling and squaring around a 40-term Taylor series.
pub fn taylor_expm(x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = x.nrows();
    let norm = x.iter().map(|z| z.norm()).sum::<f64>();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let xs = x.map(|z| z * scale);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=40 {
        term = &term * &xs / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(i * angle * A)` through [`taylor_expm`].
pub fn taylor_exp_i(a: &DMatrix<Complex64>, angle: f64) -> DMatrix<Complex64> {
    taylor_expm(&a.map(|z| z * Complex64::new(0.0, angle)))
}

/// Eigenvalues of a Hermitian matrix `H = A + iB` from cyclic Jacobi
/// rotations on the real symmetric embedding `[[A, -B], [B, A]]`, whose
/// spectrum is that of `H` with every eigenvalue doubled.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigenvalues(h: &DMatrix<Complex64>) -> Vec<f64> {
    let n = h.nrows();
    let m = 2 * n;
    let mut a = vec![vec![0.0f64; m]; m];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            a[i][j] = z.re;
            a[i + n][j + n] = z.re;
            a[i][j + n] = -z.im;
            a[i + n][j] = z.im;
        }
    }
    let scale: f64 = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt().max(1.0);
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut diag: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
    diag.sort_by(f64::total_cmp);
    diag.into_iter().step_by(2).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn matrix_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `|⟨a|b⟩|²`
pub fn overlap_sqr(a: &DVector<Complex64>, b: &DVector<Complex64>) -> f64 {
    a.dotc(b).norm_sqr()
}

/// Dispersive test point: Ω = 1, |Δ|/ω_c = 0.1, chosen θ and g/Δ.
pub fn dispersive_params(n_qubits: usize, theta: f64, g_over_delta: f64) -> SystemParams {
    let omega_c = 1.0 / 1.1;
    let delta = 1.0 - omega_c;
    SystemParams::from_qubit_frame(n_qubits, 1.0, theta, g_over_delta * delta, omega_c, 1.0).unwrap()
}

/// Deterministic pseudo-random normalized vector.
pub fn pseudo_random_state(dim: usize, seed: u64) -> DVector<Complex64> {
    let mut x = seed.wrapping_add(0x9E3779B97F4A7C15);
    let mut next = move || {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let v = DVector::from_fn(dim, |_, _| Complex64::new(next(), next()));
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}
