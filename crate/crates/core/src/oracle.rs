//! Brute-force reference model on the full 2^N ⊗ Fock product space.
//!
//! Basis index: `bits * (n_max + 1) + photons`, where `bits` is the qubit
//! register with qubit 1 as the most significant bit and down = 0, up = 1.
//! Single-qubit operators are the N = 1 Dicke matrices, so this space and
//! the collective one share σ = 2S conventions.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
#[allow(unused_imports)] // needed without std; shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::composite::{ladder_operator, LadderKind};
use crate::error::{Error, Result};
use crate::hamiltonians::SystemParams;
use crate::operator::{check_normalized, kron, OperatorMatrix, Space};
use crate::spin::{check_n_qubits, collective_operator, DickeState, SpinOperatorKind, NORM_TOL};

pub const MAX_ORACLE_QUBITS: usize = 6;
pub const MAX_ORACLE_N_MAX: usize = 10;

fn check_size(n_qubits: usize, n_max: usize) -> Result<()> {
    check_n_qubits(n_qubits)?;
    if n_qubits > MAX_ORACLE_QUBITS {
        return Err(Error::SizeLimit {
            what: "n_qubits",
            value: n_qubits,
            max: MAX_ORACLE_QUBITS,
        });
    }
    if n_max > MAX_ORACLE_N_MAX {
        return Err(Error::SizeLimit {
            what: "n_max",
            value: n_max,
            max: MAX_ORACLE_N_MAX,
        });
    }
    Ok(())
}

/// Normalized state on the full product space.
#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    n_qubits: usize,
    n_max: usize,
    amplitudes: DVector<Complex64>,
}

impl FullState {
    pub fn new(n_qubits: usize, n_max: usize, amplitudes: DVector<Complex64>) -> Result<Self> {
        check_size(n_qubits, n_max)?;
        let dim = Space::FullTensor { n_qubits, n_max }.dim();
        if amplitudes.len() != dim {
            return Err(Error::invalid(alloc::format!(
                "full state needs {dim} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        check_normalized(&amplitudes, NORM_TOL)?;
        Ok(Self {
            n_qubits,
            n_max,
            amplitudes,
        })
    }

    /// Product state with the given qubit register and photon number.
    pub fn product(n_qubits: usize, n_max: usize, bits: usize, photons: usize) -> Result<Self> {
        check_size(n_qubits, n_max)?;
        if bits >= 1 << n_qubits || photons > n_max {
            return Err(Error::invalid("basis label out of range"));
        }
        let mut amplitudes = DVector::zeros((1 << n_qubits) * (n_max + 1));
        amplitudes[bits * (n_max + 1) + photons] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            n_max,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn space(&self) -> Space {
        Space::FullTensor {
            n_qubits: self.n_qubits,
            n_max: self.n_max,
        }
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Applies an operator on the matching full space.
    pub fn evolved_by(&self, op: &OperatorMatrix) -> Result<Self> {
        if op.space() != self.space() {
            return Err(Error::invalid(alloc::format!(
                "operator on {} cannot act on a state in {}",
                op.space(),
                self.space()
            )));
        }
        Ok(Self {
            amplitudes: op.apply(&self.amplitudes)?,
            ..*self
        })
    }
}

/// `Σ_i s_i` for a single-qubit operator `s` applied to each qubit, on the
/// qubit register alone.
fn sum_over_qubits(single: &DMatrix<Complex64>, n_qubits: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n_qubits;
    let mut total = DMatrix::zeros(dim, dim);
    for site in 0..n_qubits {
        let mut m = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for q in 0..n_qubits {
            let factor = if q == site {
                single.clone()
            } else {
                DMatrix::identity(2, 2)
            };
            m = kron(&m, &factor);
        }
        total += m;
    }
    total
}

/// Collective `S_a = Σ σ_a,i / 2` on the full space (cavity factor identity).
pub fn full_collective_operator(kind: SpinOperatorKind, n_qubits: usize, n_max: usize) -> Result<OperatorMatrix> {
    check_size(n_qubits, n_max)?;
    let register = match kind {
        SpinOperatorKind::Ssquared => {
            let parts: Vec<DMatrix<Complex64>> = [SpinOperatorKind::Sx, SpinOperatorKind::Sy, SpinOperatorKind::Sz]
                .into_iter()
                .map(|k| collective_operator(k, 1).map(|s| sum_over_qubits(s.matrix(), n_qubits)))
                .collect::<Result<_>>()?;
            parts.iter().map(|p| p * p).fold(DMatrix::zeros(1 << n_qubits, 1 << n_qubits), |a, b| a + b)
        }
        k => sum_over_qubits(collective_operator(k, 1)?.matrix(), n_qubits),
    };
    let m = kron(&register, &DMatrix::identity(n_max + 1, n_max + 1));
    Ok(OperatorMatrix::from_parts(Space::FullTensor { n_qubits, n_max }, m))
}

fn cavity_on_full(kind: LadderKind, n_qubits: usize, n_max: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n_qubits;
    kron(&DMatrix::identity(dim, dim), ladder_operator(kind, n_max).matrix())
}

/// The collective cavity Hamiltonian assembled qubit by qubit:
/// `Ω S_z + ω_c(a†a + 1/2) + 2g(a† + a)(S_z cos θ + S_x sin θ)` with
/// `2S = Σ σ_i`.
pub fn full_hamiltonian(params: &SystemParams, n_max: usize) -> Result<OperatorMatrix> {
    params.validate()?;
    let n = params.n_qubits;
    check_size(n, n_max)?;
    let space = Space::FullTensor { n_qubits: n, n_max };
    let sz = full_collective_operator(SpinOperatorKind::Sz, n, n_max)?;
    let sx = full_collective_operator(SpinOperatorKind::Sx, n, n_max)?;
    let number = cavity_on_full(LadderKind::Number, n, n_max);
    let quad = cavity_on_full(LadderKind::Annihilate, n, n_max) + cavity_on_full(LadderKind::Create, n, n_max);
    let identity = DMatrix::<Complex64>::identity(space.dim(), space.dim());
    let (omega, theta, g) = (params.omega(), params.theta(), params.coupling());
    let axis = sz.matrix().map(|z| z * theta.cos()) + sx.matrix().map(|z| z * theta.sin());
    let m = sz.matrix().map(|z| z * omega)
        + (number + identity.map(|z| z * 0.5)).map(|z| z * params.omega_c)
        + (quad * axis).map(|z| z * (2.0 * g));
    Ok(OperatorMatrix::from_parts(space, m))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Map from the Dicke basis into the qubit register: column `k` is the
/// normalized symmetric sum of all registers with `k` qubits up.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricIsometry {
    n_qubits: usize,
    matrix: DMatrix<Complex64>,
}

pub fn symmetric_isometry(n_qubits: usize) -> Result<SymmetricIsometry> {
    check_size(n_qubits, 0)?;
    let dim = 1usize << n_qubits;
    let mut matrix = DMatrix::zeros(dim, n_qubits + 1);
    for bits in 0..dim {
        let k = (bits as u32).count_ones() as usize;
        matrix[(bits, k)] = Complex64::new(1.0 / binomial(n_qubits, k).sqrt(), 0.0);
    }
    Ok(SymmetricIsometry { n_qubits, matrix })
}

impl SymmetricIsometry {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The `2^N x (N+1)` matrix.
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// `V ⊗ I_Fock`.
    pub fn with_cavity(&self, n_max: usize) -> DMatrix<Complex64> {
        kron(&self.matrix, &DMatrix::identity(n_max + 1, n_max + 1))
    }

    /// `V^† A V` for an operator on the full space, giving the operator on
    /// Dicke ⊗ Fock (or Dicke alone for `n_max = 0`).
    pub fn compress(&self, op: &OperatorMatrix) -> Result<OperatorMatrix> {
        let Space::FullTensor { n_qubits, n_max } = op.space() else {
            return Err(Error::invalid("compress expects a full-tensor operator"));
        };
        if n_qubits != self.n_qubits {
            return Err(Error::invalid("qubit count mismatch"));
        }
        let v = self.with_cavity(n_max);
        let m = v.adjoint() * op.matrix() * &v;
        let space = if n_max == 0 {
            Space::Dicke { n_qubits }
        } else {
            Space::Composite { n_qubits, n_max }
        };
        Ok(OperatorMatrix::from_parts(space, m))
    }

    /// Embeds a Dicke ⊗ Fock amplitude vector (Dicke-major) into the full
    /// space.
    pub fn embed(&self, amplitudes: &DVector<Complex64>, n_max: usize) -> Result<FullState> {
        if amplitudes.len() != (self.n_qubits + 1) * (n_max + 1) {
            return Err(Error::invalid("amplitude vector does not match Dicke x Fock dimensions"));
        }
        FullState::new(self.n_qubits, n_max, self.with_cavity(n_max) * amplitudes)
    }

    pub fn embed_dicke(&self, state: &DickeState) -> Result<FullState> {
        self.embed(state.amplitudes(), 0)
    }

    /// Norm of the part of `state` outside the symmetric sector ⊗ Fock.
    pub fn outside_norm(&self, state: &FullState) -> Result<f64> {
        let v = self.with_cavity(state.n_max());
        if v.nrows() != state.amplitudes().len() {
            return Err(Error::invalid("state does not match the isometry"));
        }
        let inside = &v * (v.adjoint() * state.amplitudes());
        Ok((state.amplitudes() - inside).norm())
    }
}

/// `⟨Π σ_z,i⟩`: each register contributes `(-1)^(number of down qubits)`.
pub fn parity_expectation(state: &FullState) -> f64 {
    let n = state.n_qubits();
    let fock = state.n_max() + 1;
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let downs = n - ((i / fock) as u32).count_ones() as usize;
            let sign = if downs.is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * z.norm_sqr()
        })
        .sum()
}

/// `tr ρ²` of one qubit (1-based, qubit 1 most significant) after tracing
/// out every other qubit and the cavity.
pub fn single_qubit_purity(state: &FullState, qubit: usize) -> Result<f64> {
    let n = state.n_qubits();
    if qubit == 0 || qubit > n {
        return Err(Error::invalid(alloc::format!("qubit {qubit} out of range 1..={n}")));
    }
    let fock = state.n_max() + 1;
    let shift = n - qubit;
    let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
    let amps = state.amplitudes();
    for i in 0..amps.len() {
        let bits = i / fock;
        if (bits >> shift) & 1 == 1 {
            continue;
        }
        let j = i + (1usize << shift) * fock;
        let (a0, a1) = (amps[i], amps[j]);
        rho[0][0] += a0 * a0.conj();
        rho[0][1] += a0 * a1.conj();
        rho[1][0] += a1 * a0.conj();
        rho[1][1] += a1 * a1.conj();
    }
    Ok(rho.iter().flatten().map(|z| z.norm_sqr()).sum())
}

/// Parity fringe of the full-space GHZ state: prepare `U_N|-N/2⟩_z`
/// through the symmetric embedding, precess by `exp(-iφ S_z)`, apply the
/// analysis pulse `exp(-i π/2 S_y)` to every qubit, then read `⟨Π σ_z,i⟩`.
///
/// The cat's relative phase `arg(c_up / c_down)` is taken as the phase
/// reference of the analysis pulse (folded into the precession), so the
/// fringe is `±cos(Nφ)` rather than a shifted harmonic.
pub fn ghz_parity_fringe(n_qubits: usize, phases: &[f64]) -> Result<Vec<f64>> {
    check_size(n_qubits, 0)?;
    let iso = symmetric_isometry(n_qubits)?;
    let cat = DickeState::all_down(n_qubits)?.evolved_by(&crate::metrology::ideal_u_n(n_qubits)?)?;
    let reference = (cat.amplitudes()[n_qubits] / cat.amplitudes()[0]).arg() / n_qubits as f64;
    let ghz = iso.embed_dicke(&cat)?;
    let sz = full_collective_operator(SpinOperatorKind::Sz, n_qubits, 0)?;
    let sy = full_collective_operator(SpinOperatorKind::Sy, n_qubits, 0)?;
    let analysis = crate::linalg::exp_i_hermitian(&sy, -core::f64::consts::FRAC_PI_2)?;
    let precession = crate::dynamics::Evolver::new(&sz)?;
    phases
        .iter()
        .map(|&phi| {
            let precessed = precession.evolve(ghz.amplitudes(), phi + reference)?;
            let out = FullState::new(n_qubits, 0, analysis.apply(&precessed)?)?;
            Ok(parity_expectation(&out))
        })
        .collect()
}
