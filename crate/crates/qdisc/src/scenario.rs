//! State-preparation descriptors resolving to (rho_0, rho_lambda) pairs.
//!
//! A scenario bundles the probe preparation, the generator axis of the
//! perturbation, and optionally a noise channel acting on both qubits
//! before the perturbation. It is the common input for the numeric
//! minimum-detectable-perturbation oracle and the command-line drivers.

use crate::error::{Error, Result};
use crate::linalg::{identity2, tensor, Axis, Complex64, ComplexMatrix};
use crate::noise::{apply_channel, NoiseSpec};
use crate::state::{
    apply_unitary, bell_diagonal, bell_state, bloch_to_density, two_qubit_pure,
    unitary_perturbation, BellLabel, BlochVector, DensityMatrix,
};

/// Probe preparation.
#[derive(Debug, Clone, PartialEq)]
pub enum Preparation {
    /// Single qubit in Bloch form.
    Bloch(BlochVector),
    /// One of the four Bell states.
    Bell(BellLabel),
    /// Bell-diagonal mixture with weights (p0, p1, p2, p3).
    BellDiagonal([f64; 4]),
    /// Pure two-qubit state from computational-basis amplitudes.
    TwoQubitAmplitudes([Complex64; 4]),
}

/// A full discrimination scenario: prepare, optionally pass through noise,
/// then perturb (or not) with exp(-i lambda sigma_k) on the first qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub preparation: Preparation,
    pub axis: Axis,
    pub noise: Option<NoiseSpec>,
}

impl Scenario {
    pub fn new(preparation: Preparation, axis: Axis, noise: Option<NoiseSpec>) -> Result<Self> {
        let scenario = Self {
            preparation,
            axis,
            noise,
        };
        if scenario.noise.is_some() && scenario.dim() != 4 {
            return Err(Error::Domain(
                "noise channels act on two-qubit preparations only".to_string(),
            ));
        }
        // Validate the preparation eagerly so the CLI reports bad input at
        // parse time rather than mid-sweep.
        scenario.initial_state()?;
        Ok(scenario)
    }

    pub fn dim(&self) -> usize {
        match self.preparation {
            Preparation::Bloch(_) => 2,
            _ => 4,
        }
    }

    /// The state entering the decision stage under the null hypothesis:
    /// preparation, then noise if configured.
    pub fn initial_state(&self) -> Result<DensityMatrix> {
        let prepared = match &self.preparation {
            Preparation::Bloch(r) => bloch_to_density(r),
            Preparation::Bell(label) => bell_state(*label),
            Preparation::BellDiagonal(weights) => bell_diagonal(weights)?,
            Preparation::TwoQubitAmplitudes(amplitudes) => two_qubit_pure(amplitudes)?,
        };
        match &self.noise {
            Some(spec) => apply_channel(&prepared, &spec.channel()?),
            None => Ok(prepared),
        }
    }

    /// The perturbation unitary at amplitude lambda sized for this probe
    /// (U on a single qubit, U x I on the first qubit of a pair).
    pub fn perturbation_unitary(&self, lambda: f64) -> Result<ComplexMatrix> {
        let u = unitary_perturbation(lambda, self.axis);
        if self.dim() == 2 {
            Ok(u)
        } else {
            tensor(&u, &identity2())
        }
    }

    /// The state under the alternative hypothesis.
    pub fn perturbed_state(&self, lambda: f64) -> Result<DensityMatrix> {
        apply_unitary(&self.initial_state()?, &self.perturbation_unitary(lambda)?)
    }

    /// (rho_0, rho_lambda) for a given amplitude.
    pub fn state_pair(&self, lambda: f64) -> Result<(DensityMatrix, DensityMatrix)> {
        let rho0 = self.initial_state()?;
        let rho1 = apply_unitary(&rho0, &self.perturbation_unitary(lambda)?)?;
        Ok((rho0, rho1))
    }
}
