//! GHZ preparation by one-axis twisting and the Ramsey-type protocol that
//! reads an N-fold phase out of it.
//!
//! The twisting sequence is
//!
//! ```text
//! U_N = exp(i π/2 S_x) · exp(-i χ S_z² t_sz) · exp(-i π/2 S_x),   t_sz = π / (2χ)
//! ```
//!
//! with an extra `exp(i π/2 S_z)` after the twist when N is odd. Applied to
//! `|-N/2⟩_z`, then free evolution for a time T, then `U_N` again, the
//! collective state ends in `|±N/2⟩_z` with `P_up = (1 + cos Nφ)/2`, where
//! `φ = (Ω + χ + 2χ n̄ - ω_ref) T` is the single-qubit phase in a frame
//! rotating at `ω_ref`.

use core::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
#[allow(unused_imports)] // needed without std; shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::composite::{embed_product, lift, Side};
use crate::dynamics::{self, Evolver};
use crate::error::{Error, Result};
use crate::hamiltonians::{h_effective, h_effective_dicke, SystemParams};
use crate::operator::{OperatorMatrix, Space};
use crate::spin::{check_n_qubits, collective_operator, m_of_index, rotation, DickeState, SpinOperatorKind};

/// Largest population allowed outside `|±N/2⟩` in the composite protocol.
pub const TRUNCATION_LEAK_TOL: f64 = 1e-8;

/// Finite-difference estimates refuse points with `|sin Nφ|` below this.
pub const FRINGE_NODE_GUARD: f64 = 1e-3;

/// The constant E in the GHZ relative phase `i^(N+E)`: 2 for odd N, 1 for
/// even N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityConstant(u8);

impl ParityConstant {
    pub fn for_qubits(n_qubits: usize) -> Self {
        if n_qubits % 2 == 1 {
            ParityConstant(2)
        } else {
            ParityConstant(1)
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// `i^(N+E)`
    pub fn relative_phase(self, n_qubits: usize) -> Complex64 {
        match (n_qubits + self.0 as usize) % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

/// `t_sz = π / (2χ)`; requires χ > 0.
pub fn twist_time(params: &SystemParams) -> Result<f64> {
    params.validate()?;
    let chi = params.chi()?;
    if !(chi > 0.0) {
        return Err(Error::UnsupportedRegime { chi });
    }
    Ok(PI / (2.0 * chi))
}

/// `exp(-i π/2 S_z²)`, times `exp(i π/2 S_z)` for odd N.
fn ideal_twist(n_qubits: usize) -> DMatrix<Complex64> {
    let odd = n_qubits % 2 == 1;
    let diag = DVector::from_fn(n_qubits + 1, |k, _| {
        let m = m_of_index(n_qubits, k);
        let mut phase = -FRAC_PI_2 * m * m;
        if odd {
            phase += FRAC_PI_2 * m;
        }
        Complex64::from_polar(1.0, phase)
    });
    DMatrix::from_diagonal(&diag)
}

/// Maximally entangled state from twisting `|-N/2⟩_x`:
/// `(|-N/2⟩_x + i^(N+E) |+N/2⟩_x)/√2` up to a global phase.
pub fn ghz_generate(n_qubits: usize) -> Result<DickeState> {
    check_n_qubits(n_qubits)?;
    let start = DickeState::x_extremal(n_qubits, false)?;
    let twist = OperatorMatrix::from_parts(Space::Dicke { n_qubits }, ideal_twist(n_qubits));
    start.evolved_by(&twist)
}

/// The closed-form target `(|-N/2⟩_x + i^(N+E) |+N/2⟩_x)/√2`.
pub fn ghz_target(n_qubits: usize) -> Result<DickeState> {
    let lower = DickeState::x_extremal(n_qubits, false)?;
    let upper = DickeState::x_extremal(n_qubits, true)?;
    let phase = ParityConstant::for_qubits(n_qubits).relative_phase(n_qubits);
    let amps = (lower.amplitudes() + upper.amplitudes() * phase) * Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    Ok(DickeState::from_raw(n_qubits, amps))
}

/// `U_N` with the twist taken as the exact `exp(-i π/2 S_z²)` (plus the
/// odd-N correction), independent of χ.
pub fn ideal_u_n(n_qubits: usize) -> Result<OperatorMatrix> {
    check_n_qubits(n_qubits)?;
    let twist = OperatorMatrix::from_parts(Space::Dicke { n_qubits }, ideal_twist(n_qubits));
    let open = rotation(SpinOperatorKind::Sx, -FRAC_PI_2, n_qubits)?;
    let close = rotation(SpinOperatorKind::Sx, FRAC_PI_2, n_qubits)?;
    close.try_mul(&twist)?.try_mul(&open)
}

/// The twisting sequence `U_N` on the Dicke space of `params.n_qubits`
/// qubits, with the twist evolved under `χ S_z²` for [`twist_time`].
pub fn build_u_n(params: &SystemParams) -> Result<OperatorMatrix> {
    let t_sz = twist_time(params)?;
    let n = params.n_qubits;
    let chi = params.chi()?;
    let sz = collective_operator(SpinOperatorKind::Sz, n)?;
    let h_twist = sz.try_mul(&sz)?.scale(chi);
    let mut twist = dynamics::propagator(&h_twist, t_sz)?;
    if n % 2 == 1 {
        twist = rotation(SpinOperatorKind::Sz, FRAC_PI_2, n)?.try_mul(&twist)?;
    }
    let open = rotation(SpinOperatorKind::Sx, -FRAC_PI_2, n)?;
    let close = rotation(SpinOperatorKind::Sx, FRAC_PI_2, n)?;
    close.try_mul(&twist)?.try_mul(&open)
}

/// Where the protocol is simulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Dicke space only, cavity frozen at `n̄` photons.
    SpinOnly,
    /// Dicke ⊗ Fock with the cavity cut at `n_max`.
    Composite { n_max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolConfig {
    pub params: SystemParams,
    /// Free-evolution time T.
    pub duration: f64,
    /// Rotating-frame reference ω_ref.
    pub frame_frequency: f64,
    /// Cavity photon number n̄ during free evolution.
    pub photon_number: usize,
    pub representation: Representation,
}

impl ProtocolConfig {
    pub fn new(
        params: SystemParams,
        duration: f64,
        frame_frequency: f64,
        photon_number: usize,
        representation: Representation,
    ) -> Result<Self> {
        let cfg = Self {
            params,
            duration,
            frame_frequency,
            photon_number,
            representation,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Frame chosen so that the accumulated phase is `phi`.
    pub fn at_phase(
        params: SystemParams,
        duration: f64,
        phi: f64,
        photon_number: usize,
        representation: Representation,
    ) -> Result<Self> {
        check_duration(duration)?;
        let frame = shifted_frequency(&params, photon_number)? - phi / duration;
        Self::new(params, duration, frame, photon_number, representation)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        check_duration(self.duration)?;
        if !self.frame_frequency.is_finite() {
            return Err(Error::invalid("frame frequency must be finite"));
        }
        if let Representation::Composite { n_max } = self.representation {
            if self.photon_number > n_max {
                return Err(Error::invalid(alloc::format!(
                    "photon number {} exceeds the cutoff n_max = {n_max}",
                    self.photon_number
                )));
            }
        }
        Ok(())
    }

    /// `φ = (Ω + χ + 2χ n̄ - ω_ref) T`, wrapped to (-π, π].
    pub fn phase(&self) -> Result<f64> {
        let f = shifted_frequency(&self.params, self.photon_number)?;
        Ok(wrap_phase((f - self.frame_frequency) * self.duration))
    }
}

fn check_duration(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid("free-evolution time T must be positive and finite"));
    }
    Ok(())
}

/// Shifted qubit frequency `Ω + χ + 2χ n̄`.
pub fn shifted_frequency(params: &SystemParams, photon_number: usize) -> Result<f64> {
    let chi = params.chi()?;
    Ok(params.omega() + chi + 2.0 * chi * photon_number as f64)
}

/// Wraps an angle to (-π, π].
pub fn wrap_phase(phi: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let r = phi - two_pi * ((phi + PI) / two_pi).floor();
    if r <= -PI {
        r + two_pi
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolResult {
    pub phi: f64,
    pub p_up: f64,
    pub p_down: f64,
    /// Population outside `|±N/2⟩_z`.
    pub leakage: f64,
    pub delta_phi: f64,
    pub delta_omega: f64,
    /// `None` at the degeneracy point, where λ cannot be inferred.
    pub delta_lambda: Option<f64>,
}

/// Runs `U_N · exp(-i (H̃ - ω_ref S_z) T) · U_N` on `|-N/2⟩_z` and reports
/// the outcome statistics and uncertainties.
pub fn protocol_run(config: &ProtocolConfig) -> Result<ProtocolResult> {
    config.validate()?;
    let params = &config.params;
    let n = params.n_qubits;
    let u_n = build_u_n(params)?;
    let start = DickeState::all_down(n)?;
    let sz = collective_operator(SpinOperatorKind::Sz, n)?;

    let (p_up, p_down) = match config.representation {
        Representation::SpinOnly => {
            let h = h_effective_dicke(params, config.photon_number)?
                .try_sub(&sz.scale(config.frame_frequency))?;
            let psi = u_n.apply(start.amplitudes())?;
            let psi = Evolver::new(&h)?.evolve(&psi, config.duration)?;
            let psi = u_n.apply(&psi)?;
            (psi[n].norm_sqr(), psi[0].norm_sqr())
        }
        Representation::Composite { n_max } => {
            let u = lift(&u_n, Side::Spin, n, n_max)?;
            let frame = lift(&sz, Side::Spin, n, n_max)?.scale(config.frame_frequency);
            let h = h_effective(params, n_max)?.try_sub(&frame)?;
            let psi = embed_product(&start, config.photon_number, n_max)?;
            let psi = u.apply(psi.amplitudes())?;
            let psi = Evolver::new(&h)?.evolve(&psi, config.duration)?;
            let psi = u.apply(&psi)?;
            let fock = n_max + 1;
            let population = |k: usize| (0..fock).map(|j| psi[k * fock + j].norm_sqr()).sum::<f64>();
            (population(n), population(0))
        }
    };
    let leakage = (1.0 - p_up - p_down).max(0.0);
    if matches!(config.representation, Representation::Composite { .. }) && leakage > TRUNCATION_LEAK_TOL {
        return Err(Error::TruncationLeak { leak: leakage });
    }

    let phi = config.phase()?;
    let delta_lambda = match lambda_uncertainty(params, config.duration) {
        Ok(v) => Some(v),
        Err(Error::DegenerateSensitivity) => None,
        Err(e) => return Err(e),
    };
    Ok(ProtocolResult {
        phi,
        p_up,
        p_down,
        leakage,
        delta_phi: phase_uncertainty(n, phi)?,
        delta_omega: frequency_uncertainty(n, config.duration)?,
        delta_lambda,
    })
}

/// `P_up = (1 + cos Nφ)/2`
pub fn p_up_analytic(n_qubits: usize, phi: f64) -> f64 {
    0.5 * (1.0 + (n_qubits as f64 * phi).cos())
}

/// Phase uncertainty from error propagation on `A = |+N/2⟩⟨+N/2|`:
/// `δφ = ΔA / |∂P_up/∂φ|` with `ΔA² = P_up(1 - P_up) = (sin Nφ / 2)²` and
/// `|∂P_up/∂φ| = N |sin Nφ| / 2`. The `|sin Nφ|` factors cancel, leaving
/// `1/N` at every φ, including the removable 0/0 at the fringe nodes.
pub fn phase_uncertainty(n_qubits: usize, phi: f64) -> Result<f64> {
    check_n_qubits(n_qubits)?;
    if !phi.is_finite() {
        return Err(Error::invalid("phase must be finite"));
    }
    Ok(1.0 / n_qubits as f64)
}

/// Error-propagation estimate `sqrt(P(1-P)) / |P'(φ)|` with a central
/// difference of half-width `step` for the slope of a fringe `p`.
///
/// Points within the node guard band `|sin Nφ| < 1e-3` are rejected since
/// numerator and slope both vanish there.
pub fn phase_uncertainty_from_curve<F>(n_qubits: usize, phi: f64, step: f64, p: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    check_n_qubits(n_qubits)?;
    if !(step > 0.0) {
        return Err(Error::invalid("finite-difference step must be positive"));
    }
    if (n_qubits as f64 * phi).sin().abs() < FRINGE_NODE_GUARD {
        return Err(Error::invalid(alloc::format!(
            "phi = {phi} lies within the fringe-node guard band |sin(N phi)| < {FRINGE_NODE_GUARD}"
        )));
    }
    let p0 = p(phi)?;
    let slope = (p(phi + step)? - p(phi - step)?) / (2.0 * step);
    Ok((p0 * (1.0 - p0)).max(0.0).sqrt() / slope.abs())
}

/// `δΩ = 1/(N T)`
pub fn frequency_uncertainty(n_qubits: usize, duration: f64) -> Result<f64> {
    check_n_qubits(n_qubits)?;
    check_duration(duration)?;
    Ok(1.0 / (n_qubits as f64 * duration))
}

/// `δλ = 1/(N T b_z |cos θ|)`, from `δΩ = b_z |cos θ| δλ`.
pub fn lambda_uncertainty(params: &SystemParams, duration: f64) -> Result<f64> {
    params.validate()?;
    let delta_omega = frequency_uncertainty(params.n_qubits, duration)?;
    if params.is_degeneracy_point() {
        return Err(Error::DegenerateSensitivity);
    }
    Ok(delta_omega / (params.b_z.abs() * params.abs_cos_theta()))
}

/// Phase uncertainty of N unentangled Ramsey qubits: the single-qubit
/// error-propagation value (1 for `P = (1 + cos φ)/2`) reduced by `1/√N`.
pub fn sql_baseline(n_qubits: usize, phi: f64) -> Result<f64> {
    let single = phase_uncertainty(1, phi)?;
    Ok(single / (n_qubits as f64).sqrt())
}

/// Transmission phase shift of a probe at ω_c, `tan ϑ = ±2χN/κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutPhase {
    /// Branch for `|+N/2⟩_z`.
    pub upper: f64,
    /// Branch for `|-N/2⟩_z`.
    pub lower: f64,
}

pub fn readout_phase(params: &SystemParams) -> Result<ReadoutPhase> {
    params.validate()?;
    if !(params.kappa > 0.0) {
        return Err(Error::invalid("readout needs a cavity linewidth kappa > 0"));
    }
    let chi = params.chi()?;
    let angle = (2.0 * chi * params.n_qubits as f64 / params.kappa).atan();
    Ok(ReadoutPhase {
        upper: angle,
        lower: -angle,
    })
}
