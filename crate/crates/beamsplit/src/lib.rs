//! Two-mode bosonic Fock-space simulator for beam-splitter entanglement.
//!
//! A beam splitter acts on two bosonic modes as the SU(2) rotation
//! R(θ, φ) = exp(−ξ a†b + ξ* b†a), ξ = (θ/2)e^{−iφ}. This crate builds the
//! rotation exactly per photon-number sector on a truncated Fock space,
//! constructs the state families whose entanglement behavior under such
//! rotations is known in closed form (coherent products, matched-squeezed
//! pairs, SU(2)-unpolarized states and their displaced/squeezed convex
//! combinations, displaced-number and classical coherent mixtures), and
//! measures the result with Schmidt, purity, and partial-transpose
//! diagnostics. The `verify` module packages the analytic expectations as a
//! named claim suite with a machine-readable manifest; the `cli` module is a
//! thin batch front end.

pub mod cli;
pub mod entanglement;
mod error;
pub mod fock;
pub mod linalg;
pub mod optics;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{CutoffConfig, JointState, Mode, NumericTolerances, SingleModeState};
pub use optics::BeamSplitterParams;
