//! Qubit state representations: density matrices, Bloch vectors, Bell
//! states, and the unitary perturbation acting on them.

use std::f64::consts::FRAC_1_SQRT_2;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, identity2, pauli, Axis, Complex64, ComplexMatrix, DEFAULT_TOL,
};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

/// Real 3-vector r with |r| <= 1 parameterizing a single-qubit state
/// rho = (I + r.sigma)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl BlochVector {
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self> {
        if ![r1, r2, r3].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidState(
                "Bloch components must be finite".to_string(),
            ));
        }
        let norm_sq = r1 * r1 + r2 * r2 + r3 * r3;
        if norm_sq > 1.0 + 1e-12 {
            return Err(Error::InvalidState(format!(
                "Bloch vector norm^2 = {norm_sq} exceeds 1"
            )));
        }
        Ok(Self { r1, r2, r3 })
    }

    pub fn norm_sq(&self) -> f64 {
        self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates the density invariants (Hermitian to 1e-12, unit trace to
    /// 1e-12, minimum eigenvalue >= -1e-10) and stores the exactly
    /// symmetrized matrix.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::InvalidState(
                "density matrix must be Hermitian".to_string(),
            ));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix must have unit trace, got {trace}"
            )));
        }
        let symmetrized = matrix.hermitian_part();
        let decomposition = eig_hermitian(&symmetrized)?;
        let min = decomposition
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix must be positive semidefinite, min eigenvalue {min:.3e}"
            )));
        }
        Ok(Self {
            matrix: symmetrized,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Tr[rho^2], in [1/dim, 1]; equals (1 + r^2)/2 for a qubit.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Tr[rho A] as a real number (A is expected Hermitian).
    pub fn expectation(&self, a: &ComplexMatrix) -> f64 {
        (&self.matrix * a).trace().re
    }
}

/// rho = (I + r.sigma)/2 from a Bloch vector.
pub fn bloch_to_density(r: &BlochVector) -> DensityMatrix {
    let mut m = identity2();
    m = &m + &pauli(Axis::X).scale(r.r1);
    m = &m + &pauli(Axis::Y).scale(r.r2);
    m = &m + &pauli(Axis::Z).scale(r.r3);
    DensityMatrix::new(m.scale(0.5)).expect("valid Bloch vector yields a valid state")
}

/// Bloch components r_k = Tr[rho sigma_k]; the inverse of
/// [`bloch_to_density`]. Only defined for single-qubit states.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::Dimension(format!(
            "Bloch representation requires dim 2, got {}",
            rho.dim()
        )));
    }
    BlochVector::new(
        rho.expectation(&pauli(Axis::X)),
        rho.expectation(&pauli(Axis::Y)),
        rho.expectation(&pauli(Axis::Z)),
    )
}

/// Squared overlap |<psi_1|psi_0>|^2 = Tr[psi_0 psi_1] of two pure states.
pub fn overlap(psi0: &DensityMatrix, psi1: &DensityMatrix) -> Result<f64> {
    if psi0.dim() != psi1.dim() {
        return Err(Error::Dimension(
            "overlap requires equal dimensions".to_string(),
        ));
    }
    for (name, state) in [("first", psi0), ("second", psi1)] {
        if state.purity() < 1.0 - 1e-10 {
            return Err(Error::Contract(format!(
                "overlap requires pure states; {name} argument has purity {:.12}",
                state.purity()
            )));
        }
    }
    Ok((psi0.matrix() * psi1.matrix()).trace().re.clamp(0.0, 1.0))
}

/// The perturbation U_lambda = exp(-i lambda sigma_k)
/// = cos(lambda) I - i sin(lambda) sigma_k.
pub fn unitary_perturbation(lambda: f64, axis: Axis) -> ComplexMatrix {
    let id = identity2().scale(lambda.cos());
    let gen = pauli(axis).scale_complex(Complex64::new(0.0, -lambda.sin()));
    &id + &gen
}

/// Conjugates a state by a unitary, using the U† rho U ordering.
///
/// Note the ordering: the perturbed state is defined as U† rho U, so the
/// roles of U and U† are swapped relative to the more common U rho U†
/// convention. For the Hermitian generators used here the two differ only
/// by lambda -> -lambda, and every error-probability and ROC quantity in
/// this crate is even in lambda.
pub fn apply_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    if rho.dim() != u.dim() {
        return Err(Error::Dimension(format!(
            "state dim {} does not match unitary dim {}",
            rho.dim(),
            u.dim()
        )));
    }
    if !u.is_unitary(DEFAULT_TOL) {
        return Err(Error::Contract(
            "apply_unitary requires a unitary operator".to_string(),
        ));
    }
    DensityMatrix::new(&(&u.adjoint() * rho.matrix()) * u)
}

/// Bloch-space form of the sigma_1 perturbation: r1 is fixed and (r2, r3)
/// rotates by the angle 2 lambda.
///
/// The rotation direction follows the component table
///   r2' = r2 cos 2l - r3 sin 2l,  r3' = r2 sin 2l + r3 cos 2l,
/// which corresponds to conjugation by U_{-lambda} in the ordering used by
/// [`apply_unitary`]; the two agree under lambda -> -lambda, and all
/// probability-level results are insensitive to the sign.
pub fn rotate_bloch(r: &BlochVector, lambda: f64) -> BlochVector {
    let (sin, cos) = (2.0 * lambda).sin_cos();
    BlochVector {
        r1: r.r1,
        r2: r.r2 * cos - r.r3 * sin,
        r3: r.r2 * sin + r.r3 * cos,
    }
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellLabel {
    PhiPlus,
    PsiPlus,
    PsiMinus,
    PhiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PhiPlus,
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
        BellLabel::PhiMinus,
    ];
}

impl FromStr for BellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi+" => Ok(BellLabel::PhiPlus),
            "phi-" => Ok(BellLabel::PhiMinus),
            "psi+" => Ok(BellLabel::PsiPlus),
            "psi-" => Ok(BellLabel::PsiMinus),
            other => Err(Error::Domain(format!(
                "unknown Bell label '{other}' (expected phi+, phi-, psi+ or psi-)"
            ))),
        }
    }
}

/// Amplitudes of the Bell vector in the computational basis
/// |00>, |01>, |10>, |11> (first factor = the perturbed qubit).
pub fn bell_vector(label: BellLabel) -> [Complex64; 4] {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::ZERO;
    match label {
        BellLabel::PhiPlus => [h, zero, zero, h],
        BellLabel::PhiMinus => [h, zero, zero, -h],
        BellLabel::PsiPlus => [zero, h, h, zero],
        BellLabel::PsiMinus => [zero, h, -h, zero],
    }
}

/// Rank-1 projector onto the named Bell state.
pub fn bell_state(label: BellLabel) -> DensityMatrix {
    let v = bell_vector(label);
    let projector = ComplexMatrix::outer(&v).expect("dim 4 is valid");
    DensityMatrix::new(projector).expect("Bell projector is a valid state")
}

/// Mixture p0 phi+ + p1 psi+ + p2 psi- + p3 phi- of the four Bell states.
pub fn bell_diagonal(weights: &[f64; 4]) -> Result<DensityMatrix> {
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidState(
            "Bell-diagonal weights must be finite and nonnegative".to_string(),
        ));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidState(format!(
            "Bell-diagonal weights must sum to 1, got {sum}"
        )));
    }
    let order = [
        BellLabel::PhiPlus,
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
        BellLabel::PhiMinus,
    ];
    let mut m = ComplexMatrix::zeros(4)?;
    for (weight, label) in weights.iter().zip(order) {
        m = &m + &ComplexMatrix::outer(&bell_vector(label))?.scale(*weight);
    }
    DensityMatrix::new(m)
}

/// Pure two-qubit state from computational-basis amplitudes, normalized to
/// unit norm.
pub fn two_qubit_pure(amplitudes: &[Complex64; 4]) -> Result<DensityMatrix> {
    let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if !norm_sq.is_finite() || norm_sq <= 1e-14 {
        return Err(Error::InvalidState(
            "two-qubit amplitudes are not normalizable".to_string(),
        ));
    }
    let norm = norm_sq.sqrt();
    let v: Vec<Complex64> = amplitudes.iter().map(|a| a / norm).collect();
    DensityMatrix::new(ComplexMatrix::outer(&v)?)
}
