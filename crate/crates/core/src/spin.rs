//! Collective spin operators on the symmetric (Dicke) sector of N qubits.
//!
//! The basis is |J = N/2, M⟩ with M ascending from -N/2, and ħ = 1:
//!
//! ```text
//! S_z |J,M⟩ = M |J,M⟩
//! S_± |J,M⟩ = sqrt(J(J+1) - M(M±1)) |J,M±1⟩
//! S_x = (S_+ + S_-)/2,  S_y = (S_+ - S_-)/(2i)
//! ```

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
#[allow(unused_imports)] // needed without std; shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::{check_normalized, OperatorMatrix, Space};

/// Normalization tolerance for state constructors.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinOperatorKind {
    Sx,
    Sy,
    Sz,
    Splus,
    Sminus,
    Ssquared,
}

impl SpinOperatorKind {
    pub const ALL: [SpinOperatorKind; 6] = [
        SpinOperatorKind::Sx,
        SpinOperatorKind::Sy,
        SpinOperatorKind::Sz,
        SpinOperatorKind::Splus,
        SpinOperatorKind::Sminus,
        SpinOperatorKind::Ssquared,
    ];

    fn is_rotation_axis(self) -> bool {
        matches!(self, SpinOperatorKind::Sx | SpinOperatorKind::Sy | SpinOperatorKind::Sz)
    }
}

pub(crate) fn check_n_qubits(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::invalid("n_qubits must be at least 1"));
    }
    Ok(())
}

/// J = N/2.
pub fn total_spin(n_qubits: usize) -> f64 {
    n_qubits as f64 / 2.0
}

/// M value stored at Dicke index `k`.
pub fn m_of_index(n_qubits: usize, k: usize) -> f64 {
    k as f64 - total_spin(n_qubits)
}

fn raising_matrix(n_qubits: usize) -> DMatrix<Complex64> {
    let d = n_qubits + 1;
    let j = total_spin(n_qubits);
    let mut m = DMatrix::zeros(d, d);
    for k in 0..n_qubits {
        let mm = m_of_index(n_qubits, k);
        m[(k + 1, k)] = Complex64::new((j * (j + 1.0) - mm * (mm + 1.0)).sqrt(), 0.0);
    }
    m
}

/// Matrix of `kind` on the (N+1)-dimensional Dicke space.
pub fn collective_operator(kind: SpinOperatorKind, n_qubits: usize) -> Result<OperatorMatrix> {
    check_n_qubits(n_qubits)?;
    let d = n_qubits + 1;
    let space = Space::Dicke { n_qubits };
    let matrix = match kind {
        SpinOperatorKind::Sz => DMatrix::from_diagonal(&DVector::from_fn(d, |k, _| {
            Complex64::new(m_of_index(n_qubits, k), 0.0)
        })),
        SpinOperatorKind::Splus => raising_matrix(n_qubits),
        SpinOperatorKind::Sminus => raising_matrix(n_qubits).adjoint(),
        SpinOperatorKind::Sx => {
            let up = raising_matrix(n_qubits);
            (&up + up.adjoint()).map(|z| z * 0.5)
        }
        SpinOperatorKind::Sy => {
            let up = raising_matrix(n_qubits);
            // (S+ - S-) / (2i) = -i/2 (S+ - S-)
            (&up - up.adjoint()).map(|z| z * Complex64::new(0.0, -0.5))
        }
        SpinOperatorKind::Ssquared => {
            let j = total_spin(n_qubits);
            DMatrix::identity(d, d).map(|z: Complex64| z * (j * (j + 1.0)))
        }
    };
    Ok(OperatorMatrix::from_parts(space, matrix))
}

/// `exp(i * angle * S_axis)` for `axis` in {Sx, Sy, Sz}.
///
/// Both signs of rotation are expressed through the sign of `angle`.
pub fn rotation(axis: SpinOperatorKind, angle: f64, n_qubits: usize) -> Result<OperatorMatrix> {
    if !axis.is_rotation_axis() {
        return Err(Error::invalid(alloc::format!(
            "{axis:?} is not a rotation generator (expected Sx, Sy or Sz)"
        )));
    }
    if !angle.is_finite() {
        return Err(Error::invalid("rotation angle must be finite"));
    }
    let generator = collective_operator(axis, n_qubits)?;
    if axis == SpinOperatorKind::Sz {
        let d = n_qubits + 1;
        let diag = DVector::from_fn(d, |k, _| {
            Complex64::from_polar(1.0, angle * m_of_index(n_qubits, k))
        });
        return Ok(OperatorMatrix::from_parts(
            generator.space(),
            DMatrix::from_diagonal(&diag),
        ));
    }
    linalg::exp_i_hermitian(&generator, angle)
}

/// Normalized pure state in the Dicke basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeState {
    n_qubits: usize,
    amplitudes: DVector<Complex64>,
}

impl DickeState {
    pub fn new(n_qubits: usize, amplitudes: DVector<Complex64>) -> Result<Self> {
        check_n_qubits(n_qubits)?;
        if amplitudes.len() != n_qubits + 1 {
            return Err(Error::invalid(alloc::format!(
                "Dicke state for N={n_qubits} needs {} amplitudes, got {}",
                n_qubits + 1,
                amplitudes.len()
            )));
        }
        check_normalized(&amplitudes, NORM_TOL)?;
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// |J, M⟩ with `M = index - N/2`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_n_qubits(n_qubits)?;
        if index > n_qubits {
            return Err(Error::invalid(alloc::format!(
                "Dicke index {index} out of range for N={n_qubits}"
            )));
        }
        let mut amplitudes = DVector::zeros(n_qubits + 1);
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// |-N/2⟩_z: every qubit in its ground state.
    pub fn all_down(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// |+N/2⟩_z.
    pub fn all_up(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, n_qubits)
    }

    /// Extremal S_x eigenstate |±N/2⟩_x, phase fixed as
    /// `exp(-i π/2 S_y) |±N/2⟩_z`.
    pub fn x_extremal(n_qubits: usize, upper: bool) -> Result<Self> {
        let z = if upper {
            Self::all_up(n_qubits)?
        } else {
            Self::all_down(n_qubits)?
        };
        let r = rotation(SpinOperatorKind::Sy, -core::f64::consts::FRAC_PI_2, n_qubits)?;
        z.evolved_by(&r)
    }

    pub(crate) fn from_raw(n_qubits: usize, amplitudes: DVector<Complex64>) -> Self {
        Self {
            n_qubits,
            amplitudes,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `|⟨self|other⟩|²`
    pub fn overlap_sqr(&self, other: &DickeState) -> f64 {
        self.amplitudes.dotc(&other.amplitudes).norm_sqr()
    }

    /// Applies a unitary on the matching Dicke space.
    pub fn evolved_by(&self, op: &OperatorMatrix) -> Result<Self> {
        if op.space() != (Space::Dicke { n_qubits: self.n_qubits }) {
            return Err(Error::invalid(alloc::format!(
                "operator on {} cannot act on a Dicke(N={}) state",
                op.space(),
                self.n_qubits
            )));
        }
        Ok(Self::from_raw(self.n_qubits, op.apply(&self.amplitudes)?))
    }
}
