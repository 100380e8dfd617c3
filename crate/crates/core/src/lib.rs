//! Compilation of second-quantized fermion and fermion-boson Hamiltonians to
//! trapped-ion gate sequences.
//!
//! The pipeline has three stages:
//!
//! 1. [`jw`] maps a [`ham::Hamiltonian`] to a sum of Pauli strings, each
//!    optionally multiplied by bosonic factors acting on motional modes.
//! 2. [`trotter`] splits the evolution `exp(-iHt)` into a product of
//!    exponentials of individual terms.
//! 3. [`compiler`] lowers every exponential to two Mølmer-Sørensen gates
//!    around a single-ion gate (or the UMQ / CNOT alternatives).
//!
//! [`resources`] counts the resulting gates and estimates wall-clock time, and
//! [`simulator`] checks compiled circuits against exact evolution on small
//! qubit ⊗ truncated-oscillator spaces.

pub mod compiler;
pub mod error;
pub mod ham;
pub mod jw;
pub mod linalg;
pub mod pauli;
pub mod resources;
pub mod simulator;
pub mod space;
pub mod trotter;

pub use error::{Error, Result};
pub use num_complex::Complex64;
