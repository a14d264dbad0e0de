//! Hermitian eigendecomposition and the exponentials built on it.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::OperatorMatrix;

/// Entry-wise tolerance on `|H - H^†|` accepted as Hermitian input.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenpairs of a Hermitian operator, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: DMatrix<Complex64>,
}

fn hermitian_part(op: &OperatorMatrix) -> Result<DMatrix<Complex64>> {
    let defect = op.hermiticity_defect();
    if !(defect <= HERMITIAN_TOL) {
        return Err(Error::invalid(alloc::format!(
            "operator on {} is not Hermitian (defect {defect:e})",
            op.space()
        )));
    }
    let m = op.matrix();
    Ok((m + m.adjoint()).map(|z| z * 0.5))
}

pub fn eigh(op: &OperatorMatrix) -> Result<Eigensystem> {
    let h = hermitian_part(op)?;
    let dim = h.nrows();
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(dim, order.len(), |i, j| {
        eig.eigenvectors[(i, order[j])]
    });
    Ok(Eigensystem { values, vectors })
}

/// Ascending eigenvalues of a Hermitian operator.
pub fn eigenvalues(op: &OperatorMatrix) -> Result<Vec<f64>> {
    let h = hermitian_part(op)?;
    let mut values: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// `exp(i * angle * H)` for Hermitian `H`, via `V exp(i angle Λ) V^†`.
pub fn exp_i_hermitian(op: &OperatorMatrix, angle: f64) -> Result<OperatorMatrix> {
    let eig = eigh(op)?;
    Ok(exp_from_eigensystem(op, &eig, angle))
}

pub(crate) fn exp_from_eigensystem(
    op: &OperatorMatrix,
    eig: &Eigensystem,
    angle: f64,
) -> OperatorMatrix {
    let phases = DVector::from_iterator(
        eig.values.len(),
        eig.values.iter().map(|&e| Complex64::from_polar(1.0, angle * e)),
    );
    let v = &eig.vectors;
    let mut scaled = v.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= phases[j];
    }
    OperatorMatrix::from_parts(op.space(), scaled * v.adjoint())
}

/// `exp(A)` for an anti-Hermitian `A` (so that `-iA` is Hermitian); the
/// result is unitary.
pub fn exp_anti_hermitian(generator: &OperatorMatrix) -> Result<OperatorMatrix> {
    let minus_i = Complex64::new(0.0, -1.0);
    let h = OperatorMatrix::from_parts(generator.space(), generator.matrix().map(|z| z * minus_i));
    // exp(A) = exp(i * (-iA))
    exp_i_hermitian(&h, 1.0)
}
