//! Binary quantum decision theory for qubit process discrimination.
//!
//! The protocol: a one- or two-qubit probe is prepared in a known state,
//! a unitary perturbation exp(-i lambda sigma_k) may or may not act on one
//! qubit, and a measurement at the output decides which happened. Two
//! optimality notions are implemented:
//!
//! - **Bayes / minimum error** ([`bayes`]): the Helstrom bound
//!   p_e = (1 - ||z1 rho_1 - z0 rho_0||_1)/2 with its optimal projective
//!   measurement, plus closed forms for Bloch, singlet, and Bell-diagonal
//!   preparations, including the effect of Kraus noise channels
//!   ([`noise`]).
//! - **Neyman-Pearson** ([`neyman_pearson`]): detection probability
//!   maximized at fixed false-alarm probability via the Lagrange operator
//!   rho_1 - gamma rho_0, with ROC sweeps and closed-form characteristic
//!   functions for pure, mixed, and Bell-diagonal preparations, and the
//!   minimum detectable perturbation solvers built on them
//!   ([`min_detect`]).
//!
//! Every closed form is cross-checked against a brute-force spectral
//! oracle; [`verify`] runs the whole comparison suite and reports maximum
//! deviations per formula.

pub mod bayes;
pub mod error;
pub mod linalg;
pub mod measure;
pub mod min_detect;
pub mod neyman_pearson;
pub mod noise;
pub mod scenario;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Axis, Complex64, ComplexMatrix, DEFAULT_TOL};
pub use state::{BellLabel, BlochVector, DensityMatrix};
