//! Heavy quarkonium in the quantum phase-space representation.
//!
//! The crate solves the Cornell-potential problem with the half-transform
//! ansatz: the Nikiforov-Uvarov machinery, closed-form energy levels for
//! the complex-eigenvalue and real-eigenvalue formulations, mass spectra
//! and parameter fits, the one-dimensional Airy confinement model, and the
//! phase-space wave functions with their normalization.
//!
//! Natural units throughout: hbar = 1, energies and masses in GeV, lengths
//! in 1/GeV.

pub mod confinement;
pub mod dataset;
pub mod error;
pub mod fitting;
pub mod hta;
pub mod nu;
pub mod optim;
pub mod quad;
pub mod roots;
pub mod special;
pub mod wavefunction;

pub use num_complex::Complex64;

pub use confinement::Confinement1D;
pub use dataset::{Dataset, MesonRecord};
pub use error::{Error, Result};
pub use fitting::{ExperimentalLevel, FitOptions, FitResult};
pub use hta::{
    CornellParams, HtaConstants, MesonSystem, QuantumState, SpectroscopicLabel, Variant,
};
pub use nu::{Branch, NuProblem, NuSolution};
pub use wavefunction::{PhaseSpaceGrid, WaveParams};

/// Complex intermediate values are plain `Complex64`.
pub type ComplexValue = Complex64;
