use alloc::string::String;

/// Failures raised by the simulator.
///
/// The variants split into argument problems (bad dimensions, out-of-range
/// inputs) and physics-domain refusals, where the inputs are well formed
/// but the requested quantity does not exist in that regime.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Qubit and cavity are resonant (Δ = 0); the dispersive expansion
    /// diverges.
    #[error("resonance: qubit-cavity detuning is zero, dispersive quantities are undefined")]
    Resonance,

    /// The twisting sequence needs χ > 0.
    #[error("unsupported regime: dispersive shift chi = {chi} must be positive for the twisting sequence")]
    UnsupportedRegime { chi: f64 },

    /// |cos θ| = 0: the bias control parameter does not move the level
    /// spacing to first order.
    #[error("degeneracy point: cos(theta) = 0 at lambda = 1/2, the bias sensitivity vanishes")]
    DegenerateSensitivity,

    #[error("size limit: {what} = {value} exceeds the maximum of {max}")]
    SizeLimit {
        what: &'static str,
        value: usize,
        max: usize,
    },

    /// Population left the two protocol outcomes in the composite space.
    #[error("truncation leak: {leak:e} of the population left the measured subspace")]
    TruncationLeak { leak: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for errors caused by the physics regime rather than by malformed
    /// arguments.
    pub fn is_physics_domain(&self) -> bool {
        !matches!(self, Error::InvalidArgument(_))
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
