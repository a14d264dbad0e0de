//! Exact unitary evolution, `exp(-iHt)` by Hermitian eigendecomposition.

use alloc::vec::Vec;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, Eigensystem};
use crate::operator::{OperatorMatrix, Space};

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::invalid("evolution time must be finite"));
    }
    Ok(())
}

/// `exp(-i h t)`.
pub fn propagator(h: &OperatorMatrix, t: f64) -> Result<OperatorMatrix> {
    check_time(t)?;
    linalg::exp_i_hermitian(h, -t)
}

/// `exp(-i h t) |state⟩`.
pub fn evolve(h: &OperatorMatrix, state: &DVector<Complex64>, t: f64) -> Result<DVector<Complex64>> {
    if state.len() != h.dim() {
        return Err(Error::invalid(alloc::format!(
            "state has length {} but the Hamiltonian on {} has dimension {}",
            state.len(),
            h.space(),
            h.dim()
        )));
    }
    propagator(h, t)?.apply(state)
}

/// Reusable diagonalization of one Hamiltonian for evolving many states or
/// many times.
#[derive(Debug, Clone)]
pub struct Evolver {
    space: Space,
    eig: Eigensystem,
}

impl Evolver {
    pub fn new(h: &OperatorMatrix) -> Result<Self> {
        Ok(Self {
            space: h.space(),
            eig: linalg::eigh(h)?,
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn energies(&self) -> &[f64] {
        &self.eig.values
    }

    pub fn evolve(&self, state: &DVector<Complex64>, t: f64) -> Result<DVector<Complex64>> {
        check_time(t)?;
        if state.len() != self.space.dim() {
            return Err(Error::invalid(alloc::format!(
                "state has length {} but the Hamiltonian on {} has dimension {}",
                state.len(),
                self.space,
                self.space.dim()
            )));
        }
        let v = &self.eig.vectors;
        let mut coeffs = v.adjoint() * state;
        for (c, &e) in coeffs.iter_mut().zip(&self.eig.values) {
            *c *= Complex64::from_polar(1.0, -e * t);
        }
        Ok(v * coeffs)
    }
}

/// One step of a [`PulseSequence`].
#[derive(Debug, Clone)]
pub enum Step {
    Unitary(OperatorMatrix),
    Hamiltonian { h: OperatorMatrix, duration: f64 },
}

impl Step {
    fn space(&self) -> Space {
        match self {
            Step::Unitary(u) => u.space(),
            Step::Hamiltonian { h, .. } => h.space(),
        }
    }

    /// Unitary this step applies.
    pub fn unitary(&self) -> Result<OperatorMatrix> {
        match self {
            Step::Unitary(u) => Ok(u.clone()),
            Step::Hamiltonian { h, duration } => propagator(h, *duration),
        }
    }
}

/// Ordered steps applied first to last, all on one space.
#[derive(Debug, Clone, Default)]
pub struct PulseSequence {
    steps: Vec<Step>,
}

impl PulseSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn space(&self) -> Option<Space> {
        self.steps.first().map(Step::space)
    }

    pub fn push(&mut self, step: Step) -> Result<()> {
        if let Step::Hamiltonian { duration, .. } = &step {
            if !(*duration >= 0.0) || !duration.is_finite() {
                return Err(Error::invalid("step duration must be finite and non-negative"));
            }
        }
        if let Some(space) = self.space() {
            if step.space() != space {
                return Err(Error::invalid(alloc::format!(
                    "step acts on {} but the sequence acts on {}",
                    step.space(),
                    space
                )));
            }
        }
        self.steps.push(step);
        Ok(())
    }

    pub fn then_unitary(mut self, u: OperatorMatrix) -> Result<Self> {
        self.push(Step::Unitary(u))?;
        Ok(self)
    }

    pub fn then_evolve(mut self, h: OperatorMatrix, duration: f64) -> Result<Self> {
        self.push(Step::Hamiltonian { h, duration })?;
        Ok(self)
    }

    /// Product of all steps, last step leftmost. `None` for an empty sequence.
    pub fn unitary(&self) -> Result<Option<OperatorMatrix>> {
        let mut total: Option<OperatorMatrix> = None;
        for step in &self.steps {
            let u = step.unitary()?;
            total = Some(match total {
                None => u,
                Some(acc) => u.try_mul(&acc)?,
            });
        }
        Ok(total)
    }
}

/// Applies the steps of `seq` to `state` in listed order.
pub fn run_sequence(seq: &PulseSequence, state: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    let mut psi = state.clone();
    for step in seq.steps() {
        psi = match step {
            Step::Unitary(u) => u.apply(&psi)?,
            Step::Hamiltonian { h, duration } => evolve(h, &psi, *duration)?,
        };
    }
    Ok(psi)
}
