//! Simulator for N superconducting qubits dispersively coupled to a single
//! cavity mode.
//!
//! The cavity mediates a one-axis twisting interaction `χ S_z²` between the
//! qubits. [`metrology`] uses it to prepare GHZ states and run a collective
//! Ramsey protocol whose phase uncertainty scales as `1/N`, and propagates
//! that to the qubit bias control parameter λ.
//!
//! Layout:
//! - [`spin`]: collective spin operators and rotations on the Dicke sector.
//! - [`composite`]: truncated cavity Fock space and the Dicke ⊗ Fock space.
//! - [`hamiltonians`]: system parameters, Hamiltonians, polaron and
//!   displacement transforms, regime checks.
//! - [`dynamics`]: exact unitary evolution and pulse sequences.
//! - [`metrology`]: GHZ generation, the protocol and uncertainty formulas.
//! - [`oracle`]: brute-force 2^N ⊗ Fock model used to cross-check the
//!   collective description.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// `!(x > 0.0)` is used deliberately so that NaN inputs are rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod composite;
pub mod dynamics;
pub mod error;
pub mod hamiltonians;
pub mod linalg;
pub mod metrology;
pub mod operator;
pub mod oracle;
pub mod spin;

pub use error::{Error, Result};
pub use hamiltonians::SystemParams;
pub use operator::{OperatorMatrix, Space};

pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;
