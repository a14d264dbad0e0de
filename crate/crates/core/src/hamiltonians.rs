//! Circuit-QED Hamiltonians and the unitary frame changes that relate them.
//!
//! Parameters follow the single-qubit model `H_Q = -(B_z/2) σ_z - (B_x/2) σ_x`
//! with a bias `B_z = b_z (1/2 - λ)` that depends linearly on the control
//! parameter λ. The cavity shifts λ by `λ_c (a† + a)`, which yields a
//! qubit-cavity coupling `g = -b_z λ_c / 2` once the qubit is written in its
//! own eigenbasis (mixing angle θ with `tan θ = B_x / B_z`).
//!
//! Single-qubit operators use the Dicke N = 1 ordering (↓, ↑), so σ = 2S.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
#[allow(unused_imports)] // needed without std; shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::composite::{ladder_operator, lift, LadderKind, Side};
use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::{OperatorMatrix, Space};
use crate::spin::{check_n_qubits, collective_operator, m_of_index, total_spin, SpinOperatorKind};

/// `|cos θ|` at or below this counts as the degeneracy point.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Cutoff on `g/|Δ|` for the `dispersive` regime flag.
pub const DISPERSIVE_RATIO_MAX: f64 = 0.1;

/// Factor by which `g` must exceed κ and γ for `strong_coupling`.
pub const STRONG_COUPLING_FACTOR: f64 = 10.0;

/// Relative slack on the inclusive regime boundaries.
const BOUNDARY_RTOL: f64 = 1e-12;

/// Physical inputs of the N-qubit + cavity model (ħ = 1, energies as
/// angular frequencies).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub n_qubits: usize,
    /// Bias scale `b_z`.
    pub b_z: f64,
    /// Transverse field `B_x ≥ 0`.
    pub b_x: f64,
    /// Dimensionless bias control λ; λ = 1/2 is the degeneracy point.
    pub lambda: f64,
    /// Bias increment per field quadrature, `λ_c`.
    pub lambda_c: f64,
    /// Cavity frequency `ω_c > 0`.
    pub omega_c: f64,
    /// Cavity decay rate; only enters the readout model and regime report.
    pub kappa: f64,
    /// Qubit decay rate; validated and reported, never used in dynamics.
    pub gamma: f64,
}

impl SystemParams {
    /// Parameters with κ = γ = 0.
    pub fn new(n_qubits: usize, b_z: f64, b_x: f64, lambda: f64, lambda_c: f64, omega_c: f64) -> Result<Self> {
        let p = Self {
            n_qubits,
            b_z,
            b_x,
            lambda,
            lambda_c,
            omega_c,
            kappa: 0.0,
            gamma: 0.0,
        };
        p.validate()?;
        Ok(p)
    }

    /// Builds circuit parameters from the qubit-frame quantities
    /// (Ω, θ, g) for a given bias scale `b_z`.
    pub fn from_qubit_frame(
        n_qubits: usize,
        omega: f64,
        theta: f64,
        coupling: f64,
        omega_c: f64,
        b_z: f64,
    ) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::invalid("qubit splitting omega must be positive and finite"));
        }
        if !(0.0..=core::f64::consts::PI).contains(&theta) {
            return Err(Error::invalid("mixing angle theta must lie in [0, pi]"));
        }
        if b_z == 0.0 || !b_z.is_finite() {
            return Err(Error::invalid("b_z must be nonzero and finite"));
        }
        let bias_z = omega * theta.cos();
        let b_x = (omega * theta.sin()).max(0.0);
        Self::new(n_qubits, b_z, b_x, 0.5 - bias_z / b_z, -2.0 * coupling / b_z, omega_c)
    }

    pub fn with_decay(mut self, kappa: f64, gamma: f64) -> Result<Self> {
        self.kappa = kappa;
        self.gamma = gamma;
        self.validate()?;
        Ok(self)
    }

    pub fn with_n_qubits(mut self, n_qubits: usize) -> Result<Self> {
        self.n_qubits = n_qubits;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_n_qubits(self.n_qubits)?;
        let finite = [
            ("b_z", self.b_z),
            ("b_x", self.b_x),
            ("lambda", self.lambda),
            ("lambda_c", self.lambda_c),
            ("omega_c", self.omega_c),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::invalid(alloc::format!("{name} must be finite")));
            }
        }
        if self.b_x < 0.0 {
            return Err(Error::invalid("b_x must be non-negative"));
        }
        if !(self.omega_c > 0.0) {
            return Err(Error::invalid("omega_c must be positive"));
        }
        if self.kappa < 0.0 || self.gamma < 0.0 {
            return Err(Error::invalid("decay rates kappa and gamma must be non-negative"));
        }
        if !(self.omega() > 0.0) {
            return Err(Error::invalid("qubit splitting vanishes (b_x = 0 and B_z = 0)"));
        }
        Ok(())
    }

    /// `B_z = b_z (1/2 - λ)`
    pub fn bias_z(&self) -> f64 {
        self.b_z * (0.5 - self.lambda)
    }

    /// `Ω = sqrt(B_x² + B_z²)`
    pub fn omega(&self) -> f64 {
        self.b_x.hypot(self.bias_z())
    }

    /// Mixing angle, `atan2(B_x, B_z) ∈ [0, π]`.
    pub fn theta(&self) -> f64 {
        self.b_x.atan2(self.bias_z())
    }

    /// Signed coupling `g = -b_z λ_c / 2`.
    pub fn coupling(&self) -> f64 {
        -0.5 * self.b_z * self.lambda_c
    }

    /// `Δ = Ω - ω_c`
    pub fn detuning(&self) -> f64 {
        self.omega() - self.omega_c
    }

    fn checked_detuning(&self) -> Result<f64> {
        let delta = self.detuning();
        if delta.abs() <= 1e-12 * self.omega_c {
            return Err(Error::Resonance);
        }
        Ok(delta)
    }

    /// Dispersive shift `χ = (g sin θ)² / Δ`; its sign follows Δ.
    pub fn chi(&self) -> Result<f64> {
        let delta = self.checked_detuning()?;
        let gs = self.coupling() * self.theta().sin();
        Ok(gs * gs / delta)
    }

    /// `|cos θ| = |B_z| / Ω`, the first-order sensitivity of Ω to λ per unit `b_z`.
    pub fn abs_cos_theta(&self) -> f64 {
        self.bias_z().abs() / self.omega()
    }

    pub fn is_degeneracy_point(&self) -> bool {
        self.abs_cos_theta() <= DEGENERACY_TOL
    }
}

/// Coupling hierarchy of a parameter set.
///
/// The two-level description behind these Hamiltonians breaks down as
/// θ → 0 (large bias, vanishing `B_x`); this is not flagged here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    /// `|g| / |Δ|`
    pub g_over_detuning: f64,
    /// `|Δ| / ω_c`
    pub detuning_over_omega_c: f64,
    /// `|g| / κ` (infinite for κ = 0)
    pub g_over_kappa: f64,
    /// `|g| / γ` (infinite for γ = 0)
    pub g_over_gamma: f64,
    /// `|Δ|`
    pub abs_detuning: f64,
    /// `|g| ≥ 10κ` and `|g| ≥ 10γ`
    pub strong_coupling: bool,
    /// `|g|/|Δ| ≤ 0.1`
    pub dispersive: bool,
    /// `|g| < Δ < ω_c` with Δ > 0
    pub hierarchy: bool,
}

impl RegimeReport {
    pub fn all_pass(&self) -> bool {
        self.strong_coupling && self.dispersive && self.hierarchy
    }
}

pub fn regime_check(params: &SystemParams) -> Result<RegimeReport> {
    params.validate()?;
    let g = params.coupling().abs();
    let delta = params.detuning();
    let abs_delta = delta.abs();
    let ratio = |num: f64, den: f64| if den == 0.0 { f64::INFINITY } else { num / den };
    let at_least = |value: f64, bound: f64| value >= bound * (1.0 - BOUNDARY_RTOL);

    let g_over_detuning = ratio(g, abs_delta);
    Ok(RegimeReport {
        g_over_detuning,
        detuning_over_omega_c: abs_delta / params.omega_c,
        g_over_kappa: ratio(g, params.kappa),
        g_over_gamma: ratio(g, params.gamma),
        abs_detuning: abs_delta,
        strong_coupling: at_least(g, STRONG_COUPLING_FACTOR * params.kappa)
            && at_least(g, STRONG_COUPLING_FACTOR * params.gamma),
        dispersive: g_over_detuning <= DISPERSIVE_RATIO_MAX * (1.0 + BOUNDARY_RTOL),
        hierarchy: delta > 0.0 && g < delta && delta < params.omega_c,
    })
}

fn check_n_max(n_max: usize) -> Result<()> {
    if n_max < 1 {
        return Err(Error::invalid("n_max must be at least 1 for a coupled cavity"));
    }
    Ok(())
}

/// Collective operators lifted into Dicke ⊗ Fock.
struct CompositeOps {
    sz: OperatorMatrix,
    sx: OperatorMatrix,
    splus: OperatorMatrix,
    sminus: OperatorMatrix,
    a: OperatorMatrix,
    a_dag: OperatorMatrix,
    number: OperatorMatrix,
    identity: OperatorMatrix,
}

impl CompositeOps {
    fn new(n_qubits: usize, n_max: usize) -> Result<Self> {
        let spin = |k| collective_operator(k, n_qubits).and_then(|op| lift(&op, Side::Spin, n_qubits, n_max));
        let cav = |k| lift(&ladder_operator(k, n_max), Side::Cavity, n_qubits, n_max);
        Ok(Self {
            sz: spin(SpinOperatorKind::Sz)?,
            sx: spin(SpinOperatorKind::Sx)?,
            splus: spin(SpinOperatorKind::Splus)?,
            sminus: spin(SpinOperatorKind::Sminus)?,
            a: cav(LadderKind::Annihilate)?,
            a_dag: cav(LadderKind::Create)?,
            number: cav(LadderKind::Number)?,
            identity: OperatorMatrix::identity(Space::Composite { n_qubits, n_max }),
        })
    }

    fn mul(&self, x: &OperatorMatrix, y: &OperatorMatrix) -> DMatrix<Complex64> {
        x.matrix() * y.matrix()
    }

    /// `ω_c (a†a + 1/2)`
    fn cavity_energy(&self, omega_c: f64) -> DMatrix<Complex64> {
        (self.number.matrix() + self.identity.matrix().map(|z| z * 0.5)).map(|z| z * omega_c)
    }

    fn quadrature(&self) -> DMatrix<Complex64> {
        self.a.matrix() + self.a_dag.matrix()
    }
}

fn scaled(m: &DMatrix<Complex64>, f: f64) -> DMatrix<Complex64> {
    m.map(|z| z * f)
}

/// `H_Q = -(B_z/2) σ_z - (B_x/2) σ_x` on the single-qubit space.
pub fn h_single_qubit(params: &SystemParams) -> Result<OperatorMatrix> {
    params.validate()?;
    let sz = collective_operator(SpinOperatorKind::Sz, 1)?;
    let sx = collective_operator(SpinOperatorKind::Sx, 1)?;
    let m = scaled(sz.matrix(), -params.bias_z()) + scaled(sx.matrix(), -params.b_x);
    Ok(OperatorMatrix::from_parts(Space::Dicke { n_qubits: 1 }, m))
}

/// One qubit in the cavity:
/// `H_Q + ω_c(a†a + 1/2) + (b_z λ_c / 2)(a† + a) σ_z`, in the qubit's
/// charge/flux basis (not its eigenbasis).
pub fn h_qubit_cavity(params: &SystemParams, n_max: usize) -> Result<OperatorMatrix> {
    check_n_max(n_max)?;
    let hq = lift(&h_single_qubit(params)?, Side::Spin, 1, n_max)?;
    let ops = CompositeOps::new(1, n_max)?;
    // σ_z = 2 S_z
    let coupling = scaled(&(ops.quadrature() * ops.sz.matrix()), params.b_z * params.lambda_c);
    let m = hq.matrix() + ops.cavity_energy(params.omega_c) + coupling;
    Ok(OperatorMatrix::from_parts(hq.space(), m))
}

/// N identical qubits in one mode, written in the qubit eigenbasis:
/// `Ω S_z + ω_c(a†a + 1/2) + 2g(a† + a)(S_z cos θ + S_x sin θ)`.
pub fn h_collective(params: &SystemParams, n_max: usize) -> Result<OperatorMatrix> {
    params.validate()?;
    check_n_max(n_max)?;
    let n = params.n_qubits;
    let ops = CompositeOps::new(n, n_max)?;
    let (omega, theta, g) = (params.omega(), params.theta(), params.coupling());
    let spin_axis = scaled(ops.sz.matrix(), theta.cos()) + scaled(ops.sx.matrix(), theta.sin());
    let m = scaled(ops.sz.matrix(), omega)
        + ops.cavity_energy(params.omega_c)
        + scaled(&(ops.quadrature() * spin_axis), 2.0 * g);
    Ok(OperatorMatrix::from_parts(ops.identity.space(), m))
}

/// [`h_collective`] with the counter-rotating terms `a S_-` and `a† S_+`
/// dropped: `... + 2g cos θ (a† + a) S_z + g sin θ (a S_+ + a† S_-)`.
/// This is the form the polaron transform diagonalizes.
pub fn h_collective_rwa(params: &SystemParams, n_max: usize) -> Result<OperatorMatrix> {
    params.validate()?;
    check_n_max(n_max)?;
    let n = params.n_qubits;
    let ops = CompositeOps::new(n, n_max)?;
    let (omega, theta, g) = (params.omega(), params.theta(), params.coupling());
    let longitudinal = scaled(&(ops.quadrature() * ops.sz.matrix()), 2.0 * g * theta.cos());
    let exchange = scaled(
        &(ops.mul(&ops.a, &ops.splus) + ops.mul(&ops.a_dag, &ops.sminus)),
        g * theta.sin(),
    );
    let m = scaled(ops.sz.matrix(), omega) + ops.cavity_energy(params.omega_c) + longitudinal + exchange;
    Ok(OperatorMatrix::from_parts(ops.identity.space(), m))
}

/// Diagonal entry of the dispersive Hamiltonian for `|M, n⟩`.
fn effective_energy(params: &SystemParams, chi: f64, n_qubits: usize, m: f64, n: f64) -> f64 {
    let j = total_spin(n_qubits);
    params.omega() * m + params.omega_c * (n + 0.5) + chi * (j * (j + 1.0) - m * m + m + 2.0 * n * m)
}

/// Dispersive Hamiltonian, first order in χ:
/// `Ω S_z + ω_c(a†a + 1/2) + χ(S² - S_z² + S_z + 2 a†a S_z)`.
///
/// Diagonal in `|M, n⟩`.
pub fn h_effective(params: &SystemParams, n_max: usize) -> Result<OperatorMatrix> {
    params.validate()?;
    check_n_max(n_max)?;
    let chi = params.chi()?;
    let n = params.n_qubits;
    let space = Space::Composite { n_qubits: n, n_max };
    let mut m = DMatrix::zeros(space.dim(), space.dim());
    for k in 0..=n {
        for photons in 0..=n_max {
            let i = k * (n_max + 1) + photons;
            let e = effective_energy(params, chi, n, m_of_index(n, k), photons as f64);
            m[(i, i)] = Complex64::new(e, 0.0);
        }
    }
    Ok(OperatorMatrix::from_parts(space, m))
}

/// [`h_effective`] restricted to a photon-number eigenspace `n̄`, with the
/// cavity energy dropped as a global phase:
/// `Ω S_z + χ(S² - S_z² + S_z) + 2χ n̄ S_z`.
pub fn h_effective_dicke(params: &SystemParams, photon_number: usize) -> Result<OperatorMatrix> {
    params.validate()?;
    let chi = params.chi()?;
    let n = params.n_qubits;
    let nbar = photon_number as f64;
    let space = Space::Dicke { n_qubits: n };
    let mut m = DMatrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        let e = effective_energy(params, chi, n, m_of_index(n, k), nbar) - params.omega_c * (nbar + 0.5);
        m[(k, k)] = Complex64::new(e, 0.0);
    }
    Ok(OperatorMatrix::from_parts(space, m))
}

/// Anti-Hermitian polaron generator `a S_+ - a† S_-` (without prefactor).
pub fn polaron_generator(n_qubits: usize, n_max: usize) -> Result<OperatorMatrix> {
    let ops = CompositeOps::new(n_qubits, n_max)?;
    let m = ops.mul(&ops.a, &ops.splus) - ops.mul(&ops.a_dag, &ops.sminus);
    Ok(OperatorMatrix::from_parts(ops.identity.space(), m))
}

/// `U = exp((g sin θ / Δ)(a S_+ - a† S_-))`.
pub fn polaron_transform(params: &SystemParams, n_max: usize) -> Result<OperatorMatrix> {
    params.validate()?;
    check_n_max(n_max)?;
    let delta = params.checked_detuning()?;
    let eta = params.coupling() * params.theta().sin() / delta;
    let generator = polaron_generator(params.n_qubits, n_max)?.scale(eta);
    linalg::exp_anti_hermitian(&generator)
}

/// `U_d = exp((2g cos θ / ω_c)(a† - a) S_z)`, the conditional displacement
/// that removes the longitudinal coupling `2g cos θ (a† + a) S_z` to first
/// order when applied as `U_d H U_d†`.
pub fn displaced_transform(params: &SystemParams, n_max: usize) -> Result<OperatorMatrix> {
    params.validate()?;
    check_n_max(n_max)?;
    let ops = CompositeOps::new(params.n_qubits, n_max)?;
    let beta = 2.0 * params.coupling() * params.theta().cos() / params.omega_c;
    let generator = (ops.a_dag.matrix() - ops.a.matrix()) * ops.sz.matrix();
    let generator = OperatorMatrix::from_parts(ops.identity.space(), scaled(&generator, beta));
    linalg::exp_anti_hermitian(&generator)
}

/// Which frame change [`transform_residual`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DispersiveFrame {
    /// `U H U†`
    Polaron,
    /// `U_d U H U† U_d†`
    PolaronDisplaced,
}

/// `‖T H T† - H̃‖_F / ‖H‖_F` with `H` the rotating-wave collective
/// Hamiltonian, `H̃` the dispersive Hamiltonian and `T` the chosen frame
/// change. Shrinks as `(g/Δ)²` when the frame removes every first-order
/// coupling.
pub fn transform_residual(params: &SystemParams, n_max: usize, frame: DispersiveFrame) -> Result<f64> {
    let h = h_collective_rwa(params, n_max)?;
    let h_eff = h_effective(params, n_max)?;
    let mut t = polaron_transform(params, n_max)?;
    if frame == DispersiveFrame::PolaronDisplaced {
        t = displaced_transform(params, n_max)?.try_mul(&t)?;
    }
    let r = t.conjugate(&h)?.try_sub(&h_eff)?;
    Ok(r.frobenius_norm() / h.frobenius_norm())
}

/// Exact and dispersive energies of one vacuum-sector level `|M, 0⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelComparison {
    pub m: f64,
    pub exact: f64,
    pub effective: f64,
}

/// Compares the vacuum-sector levels `|M, n = 0⟩` of [`h_collective`]
/// (exact diagonalization) with [`h_effective`]. Each exact eigenstate is
/// matched to the bare level it overlaps most.
pub fn vacuum_sector_levels(params: &SystemParams, n_max: usize) -> Result<Vec<LevelComparison>> {
    let h = h_collective(params, n_max)?;
    let h_eff = h_effective(params, n_max)?;
    let eig = linalg::eigh(&h)?;
    let diag = h_eff.diagonal_real();
    let n = params.n_qubits;
    let mut levels = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let idx = k * (n_max + 1);
        let best = (0..eig.values.len())
            .max_by(|&x, &y| {
                eig.vectors[(idx, x)]
                    .norm_sqr()
                    .total_cmp(&eig.vectors[(idx, y)].norm_sqr())
            })
            .ok_or_else(|| Error::invalid("empty spectrum"))?;
        levels.push(LevelComparison {
            m: m_of_index(n, k),
            exact: eig.values[best],
            effective: diag[idx],
        });
    }
    Ok(levels)
}

/// Largest `|E_exact - E_effective|` over the vacuum sector.
pub fn dispersive_spectrum_error(params: &SystemParams, n_max: usize) -> Result<f64> {
    Ok(vacuum_sector_levels(params, n_max)?
        .iter()
        .map(|l| (l.exact - l.effective).abs())
        .fold(0.0, f64::max))
}
