//! Front end for the `simulate` binary: JSON configs, protocol runs,
//! parameter sweeps to CSV and regime checks.
//!
//! Exit codes: 0 ok, 1 a regime flag failed (`check`), 2 unreadable or
//! malformed config / invalid parameter values, 3 physics-domain error
//! (resonance, χ ≤ 0, degeneracy point, size limit, truncation leak),
//! 4 output could not be written.

pub mod commands;
pub mod config;
pub mod error;

pub use commands::{format_report, protocol_json, run_check, run_protocol, run_sweep, ProtocolRecord, SweepTable};
pub use config::{RunConfig, SweepAxis, SweepSpec};
pub use error::{exit, CliError};
