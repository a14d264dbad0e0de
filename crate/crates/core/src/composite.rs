//! Truncated Fock space of the cavity and the Dicke ⊗ Fock product space.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
#[allow(unused_imports)] // needed without std; shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::operator::{check_normalized, kron, OperatorMatrix, Space};
use crate::spin::{check_n_qubits, DickeState, NORM_TOL};

/// Default cavity cutoff for dispersive-regime runs.
pub const DEFAULT_N_MAX: usize = 10;

/// Cavity mode truncated to photon numbers `0..=n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    pub n_max: usize,
}

impl FockSpace {
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Annihilate,
    Create,
    Number,
}

/// Truncated `a`, `a†` or `a†a`. `a†|n_max⟩ = 0`; the top level is not
/// renormalized, so `[a, a†]` has `-n_max` in its last diagonal entry.
pub fn ladder_operator(kind: LadderKind, n_max: usize) -> OperatorMatrix {
    let d = n_max + 1;
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    match kind {
        LadderKind::Annihilate => {
            for n in 1..d {
                m[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
            }
        }
        LadderKind::Create => {
            for n in 1..d {
                m[(n, n - 1)] = Complex64::new((n as f64).sqrt(), 0.0);
            }
        }
        LadderKind::Number => {
            for n in 0..d {
                m[(n, n)] = Complex64::new(n as f64, 0.0);
            }
        }
    }
    OperatorMatrix::from_parts(Space::Fock { n_max }, m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Spin,
    Cavity,
}

/// Embeds a Dicke operator as `A ⊗ I` or a Fock operator as `I ⊗ B`.
pub fn lift(op: &OperatorMatrix, side: Side, n_qubits: usize, n_max: usize) -> Result<OperatorMatrix> {
    check_n_qubits(n_qubits)?;
    let expected = match side {
        Side::Spin => Space::Dicke { n_qubits },
        Side::Cavity => Space::Fock { n_max },
    };
    if op.space() != expected {
        return Err(Error::invalid(alloc::format!(
            "cannot lift an operator on {} as the {:?} factor of Dicke(N={n_qubits}) x Fock(n_max={n_max})",
            op.space(),
            side
        )));
    }
    let matrix = match side {
        Side::Spin => kron(op.matrix(), &DMatrix::identity(n_max + 1, n_max + 1)),
        Side::Cavity => kron(&DMatrix::identity(n_qubits + 1, n_qubits + 1), op.matrix()),
    };
    Ok(OperatorMatrix::from_parts(
        Space::Composite { n_qubits, n_max },
        matrix,
    ))
}

/// Normalized pure state on Dicke ⊗ Fock, Dicke-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeState {
    n_qubits: usize,
    n_max: usize,
    amplitudes: DVector<Complex64>,
}

impl CompositeState {
    pub fn new(n_qubits: usize, n_max: usize, amplitudes: DVector<Complex64>) -> Result<Self> {
        check_n_qubits(n_qubits)?;
        let dim = (n_qubits + 1) * (n_max + 1);
        if amplitudes.len() != dim {
            return Err(Error::invalid(alloc::format!(
                "composite state needs {dim} amplitudes, got {}",
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

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn space(&self) -> Space {
        Space::Composite {
            n_qubits: self.n_qubits,
            n_max: self.n_max,
        }
    }

    pub fn index(&self, dicke_index: usize, fock_index: usize) -> usize {
        dicke_index * (self.n_max + 1) + fock_index
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex64> {
        self.amplitudes
    }

    /// Probability of Dicke level `dicke_index`, summed over photon number.
    pub fn dicke_population(&self, dicke_index: usize) -> f64 {
        (0..=self.n_max)
            .map(|n| self.amplitudes[self.index(dicke_index, n)].norm_sqr())
            .sum()
    }

    /// Probability of photon number `n`, summed over Dicke levels.
    pub fn fock_population(&self, n: usize) -> f64 {
        (0..=self.n_qubits)
            .map(|k| self.amplitudes[self.index(k, n)].norm_sqr())
            .sum()
    }
}

/// `|spin⟩ ⊗ |photon_number⟩` inside a Fock space cut at `n_max`.
pub fn embed_product(spin_state: &DickeState, photon_number: usize, n_max: usize) -> Result<CompositeState> {
    if photon_number > n_max {
        return Err(Error::invalid(alloc::format!(
            "photon number {photon_number} exceeds the cutoff n_max = {n_max}"
        )));
    }
    let n_qubits = spin_state.n_qubits();
    let fock_dim = n_max + 1;
    let mut amplitudes = DVector::zeros((n_qubits + 1) * fock_dim);
    for (k, &a) in spin_state.amplitudes().iter().enumerate() {
        amplitudes[k * fock_dim + photon_number] = a;
    }
    Ok(CompositeState {
        n_qubits,
        n_max,
        amplitudes,
    })
}
