//! Tomograms of continuous-variable quantum states and the entropic
//! uncertainty relations they obey.
//!
//! * [`states`]: Fock superpositions, Gaussian states, sampled wavefunctions,
//!   product states and grid density matrices.
//! * [`transforms`]: Hermite functions, quadrature rotation (fractional
//!   Fourier transform) and the momentum representation.
//! * [`tomography`]: optical, symplectic and multimode tomograms and the
//!   inverse map back to a density matrix.
//! * [`entropy`]: Shannon, Rényi and von Neumann entropies.
//! * [`inequalities`]: LHS/RHS/margin reports for the Shannon and Rényi
//!   uncertainty relations on marginals and tomograms.
//! * [`gaussian_oracle`]: closed forms for Gaussian states.
//! * [`cli`]: the `tomolab` command-line front end.

// Negated comparisons deliberately reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod entropy;
pub mod error;
pub mod gaussian_oracle;
pub mod grid;
pub mod inequalities;
pub mod states;
pub mod tomography;
pub mod transforms;

pub use error::{Result, TomoError};
pub use grid::ModeGrid;
pub use states::{DensityMatrix, FockSuperposition, GaussianStateSpec, GridWavefunction, MultimodeProductState, State};
pub use tomography::{SampledDensity, SymplecticFrame};
pub use transforms::RotationAngle;
