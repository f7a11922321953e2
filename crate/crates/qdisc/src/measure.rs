//! Binary projective measurements and the positive-part projector that
//! underlies both the Bayes and Neyman-Pearson optimal strategies.

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, Complex64, ComplexMatrix, DEFAULT_TOL};

const PVM_TOL: f64 = 1e-10;

/// Projector pair {Pi_0, Pi_1} summing to the identity.
#[derive(Debug, Clone)]
pub struct BinaryPVM {
    pi0: ComplexMatrix,
    pi1: ComplexMatrix,
}

impl BinaryPVM {
    /// Validates completeness, idempotence, Hermiticity and orthogonality
    /// to 1e-10.
    pub fn new(pi0: ComplexMatrix, pi1: ComplexMatrix) -> Result<Self> {
        if pi0.dim() != pi1.dim() {
            return Err(Error::Dimension(
                "PVM elements must share a dimension".to_string(),
            ));
        }
        let identity = ComplexMatrix::identity(pi0.dim())?;
        if (&pi0 + &pi1).max_abs_diff(&identity) > PVM_TOL {
            return Err(Error::InvalidState(
                "PVM elements must sum to the identity".to_string(),
            ));
        }
        for (name, p) in [("Pi0", &pi0), ("Pi1", &pi1)] {
            if !p.is_hermitian(PVM_TOL) {
                return Err(Error::InvalidState(format!("{name} must be Hermitian")));
            }
            if (p * p).max_abs_diff(p) > PVM_TOL {
                return Err(Error::InvalidState(format!("{name} must be idempotent")));
            }
        }
        let product = &pi0 * &pi1;
        if product.max_abs_entry() > PVM_TOL {
            return Err(Error::InvalidState(
                "PVM elements must be orthogonal".to_string(),
            ));
        }
        Ok(Self { pi0, pi1 })
    }

    pub fn pi0(&self) -> &ComplexMatrix {
        &self.pi0
    }

    pub fn pi1(&self) -> &ComplexMatrix {
        &self.pi1
    }

    pub fn dim(&self) -> usize {
        self.pi0.dim()
    }
}

/// PVM whose Pi_1 projects onto the strictly positive eigenspace of a
/// Hermitian operator.
///
/// Eigenvalues within `tol` of zero are assigned to Pi_0; zero-eigenvalue
/// directions contribute nothing to the decision objective, so outcome
/// probabilities are unaffected by the tie-break.
pub fn positive_part_projector(m: &ComplexMatrix, tol: f64) -> Result<BinaryPVM> {
    let decomposition = eig_hermitian(m)?;
    let mut pi1 = ComplexMatrix::zeros(m.dim())?;
    for (value, vector) in decomposition
        .eigenvalues
        .iter()
        .zip(&decomposition.eigenvectors)
    {
        if *value > tol {
            pi1 = &pi1 + &ComplexMatrix::outer(vector)?;
        }
    }
    let pi1 = pi1.hermitian_part();
    let pi0 = (&ComplexMatrix::identity(m.dim())? - &pi1).hermitian_part();
    BinaryPVM::new(pi0, pi1)
}

/// Convenience wrapper using the crate default tolerance.
pub fn positive_part(m: &ComplexMatrix) -> Result<BinaryPVM> {
    positive_part_projector(m, DEFAULT_TOL)
}

/// Outcome probability Tr[rho Pi], clamped to [0, 1].
pub fn outcome_probability(rho: &ComplexMatrix, pi: &ComplexMatrix) -> f64 {
    (rho * pi).trace().re.clamp(0.0, 1.0)
}

/// A projector pair built from an orthonormal set of column vectors; used
/// by randomized optimality checks in tests.
pub fn projector_from_vectors(dim: usize, vectors: &[Vec<Complex64>]) -> Result<BinaryPVM> {
    let mut pi1 = ComplexMatrix::zeros(dim)?;
    for v in vectors {
        pi1 = &pi1 + &ComplexMatrix::outer(v)?;
    }
    let pi1 = pi1.hermitian_part();
    let pi0 = (&ComplexMatrix::identity(dim)? - &pi1).hermitian_part();
    BinaryPVM::new(pi0, pi1)
}
