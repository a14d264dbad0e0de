//! Dense operators tagged with the Hilbert space they act on.

use core::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
#[allow(unused_imports)] // needed without std; shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

/// Hilbert space an [`OperatorMatrix`] acts on.
///
/// Index conventions:
/// - `Dicke`: ascending M, index 0 is M = -N/2.
/// - `Fock`: photon number 0..=n_max.
/// - `Composite`: Dicke-major, `dicke_index * (n_max + 1) + fock_index`.
/// - `FullTensor`: qubit bits (qubit 1 most significant, down = 0, up = 1)
///   major, Fock minor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Dicke { n_qubits: usize },
    Fock { n_max: usize },
    Composite { n_qubits: usize, n_max: usize },
    FullTensor { n_qubits: usize, n_max: usize },
}

impl Space {
    pub fn dim(&self) -> usize {
        match *self {
            Space::Dicke { n_qubits } => n_qubits + 1,
            Space::Fock { n_max } => n_max + 1,
            Space::Composite { n_qubits, n_max } => (n_qubits + 1) * (n_max + 1),
            Space::FullTensor { n_qubits, n_max } => (1usize << n_qubits) * (n_max + 1),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Space::Dicke { n_qubits } => write!(f, "Dicke(N={n_qubits})"),
            Space::Fock { n_max } => write!(f, "Fock(n_max={n_max})"),
            Space::Composite { n_qubits, n_max } => {
                write!(f, "Dicke(N={n_qubits}) x Fock(n_max={n_max})")
            }
            Space::FullTensor { n_qubits, n_max } => {
                write!(f, "2^{n_qubits} x Fock(n_max={n_max})")
            }
        }
    }
}

/// Square complex matrix plus the space it lives on.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    space: Space,
    matrix: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn new(space: Space, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = space.dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::invalid(alloc::format!(
                "matrix is {}x{} but {} has dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                space,
                dim
            )));
        }
        Ok(Self { space, matrix })
    }

    pub(crate) fn from_parts(space: Space, matrix: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(matrix.nrows(), space.dim());
        debug_assert_eq!(matrix.ncols(), space.dim());
        Self { space, matrix }
    }

    pub fn identity(space: Space) -> Self {
        let d = space.dim();
        Self::from_parts(space, DMatrix::identity(d, d))
    }

    pub fn zeros(space: Space) -> Self {
        let d = space.dim();
        Self::from_parts(space, DMatrix::zeros(d, d))
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self::from_parts(self.space, self.matrix.adjoint())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_parts(self.space, self.matrix.map(|z| z * factor))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::invalid(alloc::format!(
                "operator spaces differ: {} vs {}",
                self.space,
                other.space
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_parts(self.space, &self.matrix * &other.matrix))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_parts(self.space, &self.matrix + &other.matrix))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_parts(self.space, &self.matrix - &other.matrix))
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let ab = &self.matrix * &other.matrix;
        let ba = &other.matrix * &self.matrix;
        Ok(Self::from_parts(self.space, ab - ba))
    }

    /// `self * other * self^†`
    pub fn conjugate(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let m = &self.matrix * &other.matrix * self.matrix.adjoint();
        Ok(Self::from_parts(self.space, m))
    }

    pub fn apply(&self, state: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if state.len() != self.dim() {
            return Err(Error::invalid(alloc::format!(
                "state has length {} but operator on {} has dimension {}",
                state.len(),
                self.space,
                self.dim()
            )));
        }
        Ok(&self.matrix * state)
    }

    /// Largest entry of `|A - A^†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        max_abs_entry(&(&self.matrix - self.matrix.adjoint()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Largest entry of `|U^† U - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        let g = self.matrix.adjoint() * &self.matrix - DMatrix::<Complex64>::identity(d, d);
        max_abs_entry(&g)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Real diagonal, for operators that are diagonal in the product basis.
    pub fn diagonal_real(&self) -> alloc::vec::Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// Expectation value `<ψ|A|ψ>` (real part).
    pub fn expectation(&self, state: &DVector<Complex64>) -> Result<f64> {
        let a_psi = self.apply(state)?;
        Ok(state.dotc(&a_psi).re)
    }
}

pub(crate) fn max_abs_entry(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Kronecker product `a ⊗ b` with `a` as the major (slow) index.
pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    DMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Normalization check shared by the state types.
pub(crate) fn check_normalized(amplitudes: &DVector<Complex64>, tol: f64) -> Result<()> {
    let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > tol {
        return Err(Error::invalid(alloc::format!(
            "state is not normalized: squared norm = {norm_sqr}"
        )));
    }
    Ok(())
}
