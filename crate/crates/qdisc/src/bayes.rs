//! Bayes minimum-error discrimination.
//!
//! The spectral route through [`helstrom_pe`] is the module's oracle:
//! every closed-form error probability below is tested against it.

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, trace_norm, Axis, Complex64, ComplexMatrix, DEFAULT_TOL};
use crate::measure::{positive_part, BinaryPVM};
use crate::state::DensityMatrix;

/// Prior probabilities {z0, z1} of the null and alternative hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Priors {
    z0: f64,
    z1: f64,
}

impl Priors {
    /// Rejects priors outside [0,1] or not summing to one; out-of-range
    /// values are caller bugs and are not clamped.
    pub fn new(z0: f64, z1: f64) -> Result<Self> {
        if !z0.is_finite() || !z1.is_finite() || !(0.0..=1.0).contains(&z0) || !(0.0..=1.0).contains(&z1)
        {
            return Err(Error::Domain(format!(
                "priors must lie in [0,1], got ({z0}, {z1})"
            )));
        }
        if (z0 + z1 - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "priors must sum to 1, got {}",
                z0 + z1
            )));
        }
        Ok(Self { z0, z1 })
    }

    pub fn equal() -> Self {
        Self { z0: 0.5, z1: 0.5 }
    }

    pub fn z0(&self) -> f64 {
        self.z0
    }

    pub fn z1(&self) -> f64 {
        self.z1
    }

    pub fn swapped(&self) -> Self {
        Self {
            z0: self.z1,
            z1: self.z0,
        }
    }

    pub fn min(&self) -> f64 {
        self.z0.min(self.z1)
    }
}

/// How the optimal Bayes measurement behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// The characteristic operator has both signs in its spectrum and the
    /// measurement genuinely looks at the data.
    Measure,
    /// No strictly positive eigenvalue: Pi_1 = 0, always infer H0.
    AlwaysGuessH0,
    /// No strictly negative eigenvalue: Pi_1 = I, always infer H1.
    AlwaysGuessH1,
}

/// Minimum-error discrimination result.
#[derive(Debug, Clone)]
pub struct BayesResult {
    pub pe: f64,
    pub pvm: BinaryPVM,
    pub regime: Regime,
}

/// Bayesian characteristic operator Lambda = z1 rho1 - z0 rho0.
pub fn characteristic_operator(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    priors: &Priors,
) -> Result<ComplexMatrix> {
    if rho0.dim() != rho1.dim() {
        return Err(Error::Dimension(format!(
            "state dimensions differ: {} vs {}",
            rho0.dim(),
            rho1.dim()
        )));
    }
    Ok(&rho1.matrix().scale(priors.z1) - &rho0.matrix().scale(priors.z0))
}

/// Helstrom bound p_e = (1 - ||z1 rho1 - z0 rho0||_1)/2 together with the
/// optimal measurement, computed by eigendecomposition of the
/// characteristic operator. This is the brute-force oracle the closed
/// forms are checked against.
pub fn helstrom_pe(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    priors: &Priors,
) -> Result<BayesResult> {
    let lambda = characteristic_operator(rho0, rho1, priors)?;
    let pe = 0.5 * (1.0 - trace_norm(&lambda)?);
    let pvm = positive_part(&lambda)?;
    let spectrum = eig_hermitian(&lambda)?.eigenvalues;
    let has_positive = spectrum.iter().any(|x| *x > DEFAULT_TOL);
    let has_negative = spectrum.iter().any(|x| *x < -DEFAULT_TOL);
    let regime = if !has_positive {
        Regime::AlwaysGuessH0
    } else if !has_negative {
        Regime::AlwaysGuessH1
    } else {
        Regime::Measure
    };
    Ok(BayesResult {
        pe: pe.clamp(0.0, 1.0),
        pvm,
        regime,
    })
}

/// Pure-state error probability in terms of the squared overlap:
/// p_e = (1 - sqrt(1 - 4 z0 z1 |kappa|^2))/2.
pub fn pe_pure_overlap(kappa_sq: f64, priors: &Priors) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&kappa_sq) {
        return Err(Error::Domain(format!(
            "squared overlap must lie in [0,1], got {kappa_sq}"
        )));
    }
    let kappa_sq = kappa_sq.clamp(0.0, 1.0);
    let radicand = 1.0 - 4.0 * priors.z0 * priors.z1 * kappa_sq;
    Ok(0.5 * (1.0 - radicand.max(0.0).sqrt()))
}

/// Single-qubit error probability for a Bloch preparation perturbed by the
/// sigma_1 generator:
/// p_e = (1 - sqrt(r^2 - 4 z1 z0 [r^2 - (r^2 - r1^2) sin^2 lambda]))/2,
/// capped at min(z0, z1).
///
/// The square-root expression assumes the characteristic operator has
/// eigenvalues of both signs. When det Lambda > 0 (possible for mixed
/// states at skewed priors) discrimination reduces to pure guessing with
/// p_e = min(z0, z1), and the cap — which is active exactly there — keeps
/// the closed form equal to the Helstrom bound on the whole domain.
pub fn pe_single_qubit(r: &crate::state::BlochVector, lambda: f64, priors: &Priors) -> Result<f64> {
    let r_sq = r.norm_sq();
    let sin_sq = lambda.sin().powi(2);
    let radicand =
        r_sq - 4.0 * priors.z1 * priors.z0 * (r_sq - (r_sq - r.r1 * r.r1) * sin_sq);
    if radicand < -1e-12 {
        return Err(Error::Contract(format!(
            "error-probability radicand is negative: {radicand:.3e}"
        )));
    }
    Ok((0.5 * (1.0 - radicand.max(0.0).sqrt())).min(priors.min()))
}

/// Equal-prior error probability in terms of purity mu and the projection
/// r1 on the generator axis: p_e = (1 - sqrt((2mu - 1 - r1^2) sin^2 l))/2.
pub fn pe_single_qubit_purity(mu: f64, r1: f64, lambda: f64) -> Result<f64> {
    if !(0.5 - 1e-12..=1.0 + 1e-12).contains(&mu) {
        return Err(Error::Domain(format!(
            "qubit purity must lie in [1/2, 1], got {mu}"
        )));
    }
    let r_sq = 2.0 * mu - 1.0;
    if r1 * r1 > r_sq + 1e-12 {
        return Err(Error::Domain(format!(
            "r1^2 = {} exceeds 2 mu - 1 = {r_sq}",
            r1 * r1
        )));
    }
    let radicand = (r_sq - r1 * r1).max(0.0) * lambda.sin().powi(2);
    Ok(0.5 * (1.0 - radicand.sqrt()))
}

/// Error probability for the singlet probe:
/// p_e = (1 - sqrt(1 - 4 z0 z1 cos^2 lambda))/2. The same value is reached
/// by every preparation in the optimal class of [`check_optimal_class`].
pub fn pe_two_qubit_singlet(lambda: f64, priors: &Priors) -> f64 {
    let radicand = 1.0 - 4.0 * priors.z0 * priors.z1 * lambda.cos().powi(2);
    0.5 * (1.0 - radicand.max(0.0).sqrt())
}

/// Whether a two-qubit pure preparation (amplitudes in the computational
/// basis, normalized internally) belongs to the class achieving the
/// singlet bound for the generator sigma_k on the first qubit.
///
/// The class is characterized by a vanishing generator expectation
/// <sigma_k x I> = 0. For k = 1 this is Re(a0 a2* + a1 a3*) = 0 and for
/// k = 2 it is Im(a0 a2* + a1 a3*) = 0, so the condition
/// a0 a2* + a1 a3* = 0 covers both transverse generators at once; k = 3
/// instead requires |a0|^2 + |a1|^2 = |a2|^2 + |a3|^2.
pub fn check_optimal_class(amplitudes: &[Complex64; 4], axis: Axis) -> Result<bool> {
    let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if !norm_sq.is_finite() || norm_sq <= 1e-14 {
        return Err(Error::InvalidState(
            "amplitudes are not normalizable".to_string(),
        ));
    }
    let [a0, a1, a2, a3] = amplitudes;
    let cross = a0 * a2.conj() + a1 * a3.conj();
    let expectation = match axis {
        Axis::X => 2.0 * cross.re,
        Axis::Y => -2.0 * cross.im,
        Axis::Z => a0.norm_sqr() + a1.norm_sqr() - a2.norm_sqr() - a3.norm_sqr(),
    };
    Ok((expectation / norm_sq).abs() <= DEFAULT_TOL)
}

/// Which Bell-diagonal error formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellDiagonalVariant {
    /// Verbatim printed form (1 - (|p0-p1| + |p1-p3|) |sin l|)/2, retained
    /// for fidelity reporting; it disagrees with the spectral oracle.
    AsPrinted,
    /// Block-spectrum form (1 - (|p0-p1| + |p2-p3|) |sin l|)/2; the
    /// characteristic operator splits over the {phi+, psi+} and
    /// {psi-, phi-} subspaces with eigenvalue pairs
    /// +/- |p0-p1| |sin l| / 2 and +/- |p2-p3| |sin l| / 2.
    Corrected,
}

/// Equal-prior error probability for a Bell-diagonal preparation under the
/// sigma_1 generator. See [`BellDiagonalVariant`] for the two forms.
pub fn pe_bell_diagonal(
    weights: &[f64; 4],
    lambda: f64,
    variant: BellDiagonalVariant,
) -> Result<f64> {
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
    let [p0, p1, p2, p3] = weights;
    let coefficient = match variant {
        BellDiagonalVariant::AsPrinted => (p0 - p1).abs() + (p1 - p3).abs(),
        BellDiagonalVariant::Corrected => (p0 - p1).abs() + (p2 - p3).abs(),
    };
    Ok(0.5 * (1.0 - coefficient * lambda.sin().abs()))
}

/// Internal consistency identity p_e = z1 - Tr[Lambda Pi_1] from the error
/// functional; exposed for tests and the verification suite.
pub fn pe_from_pvm(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    priors: &Priors,
    pvm: &BinaryPVM,
) -> Result<f64> {
    let lambda = characteristic_operator(rho0, rho1, priors)?;
    Ok(priors.z1 - (&lambda * pvm.pi1()).trace().re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity2, tensor};
    use crate::state::{
        apply_unitary, bell_diagonal, bell_state, bloch_to_density, unitary_perturbation,
        BellLabel, BlochVector,
    };
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    fn two_qubit_perturbation(lambda: f64) -> ComplexMatrix {
        tensor(&unitary_perturbation(lambda, Axis::X), &identity2()).unwrap()
    }

    #[test]
    fn priors_validation() {
        assert!(Priors::new(0.4, 0.6).is_ok());
        assert!(Priors::new(-0.1, 1.1).is_err());
        assert!(Priors::new(0.5, 0.6).is_err());
        assert_eq!(Priors::new(0.3, 0.7).unwrap().swapped().z0(), 0.7);
    }

    #[test]
    fn characteristic_operator_examples() {
        let rho = bloch_to_density(&BlochVector::new(0.3, 0.1, -0.2).unwrap());
        let zero = characteristic_operator(&rho, &rho, &Priors::equal()).unwrap();
        assert!(zero.max_abs_entry() < 1e-15);

        let other = bloch_to_density(&BlochVector::new(0.0, 0.0, 0.9).unwrap());
        let all_h1 = characteristic_operator(&rho, &other, &Priors::new(0.0, 1.0).unwrap())
            .unwrap();
        assert!(all_h1.max_abs_diff(other.matrix()) < 1e-15);
        let eigs = eig_hermitian(&all_h1).unwrap().eigenvalues;
        assert!(eigs.iter().all(|x| *x >= -1e-12));

        let bell = bell_state(BellLabel::PhiPlus);
        assert!(characteristic_operator(&rho, &bell, &Priors::equal()).is_err());
    }

    /// Lambda entries match the printed single-qubit block up to the
    /// overall 1/2 carried by the Bloch form (the printed block has trace
    /// 2(z1 - z0) while Tr Lambda = z1 - z0).
    #[test]
    fn characteristic_operator_bloch_entries() {
        let r = BlochVector::new(0.3, -0.2, 0.4).unwrap();
        let lambda_angle = 0.7;
        let priors = Priors::new(0.35, 0.65).unwrap();
        let r_rot = crate::state::rotate_bloch(&r, lambda_angle);
        let rho0 = bloch_to_density(&r);
        let rho1 = bloch_to_density(&r_rot);
        let lam = characteristic_operator(&rho0, &rho1, &priors).unwrap();

        let (z0, z1) = (priors.z0(), priors.z1());
        let l0 = z1 * (1.0 + r_rot.r3) - z0 * (1.0 + r.r3);
        let l1 = z1 * (1.0 - r_rot.r3) - z0 * (1.0 - r.r3);
        let l2_re = z1 * r_rot.r1 - z0 * r.r1;
        let l2_im = -(z1 * r_rot.r2 - z0 * r.r2);
        assert_abs_diff_eq!(lam.get(0, 0).re, 0.5 * l0, epsilon = 1e-14);
        assert_abs_diff_eq!(lam.get(1, 1).re, 0.5 * l1, epsilon = 1e-14);
        assert_abs_diff_eq!(lam.get(0, 1).re, 0.5 * l2_re, epsilon = 1e-14);
        assert_abs_diff_eq!(lam.get(0, 1).im, 0.5 * l2_im, epsilon = 1e-14);
        assert_abs_diff_eq!(lam.trace().re, z1 - z0, epsilon = 1e-14);
    }

    #[test]
    fn helstrom_identical_states_is_pure_guessing() {
        let rho = bloch_to_density(&BlochVector::new(0.1, 0.5, 0.2).unwrap());
        for (z0, z1) in [(0.5, 0.5), (0.3, 0.7), (0.9, 0.1)] {
            let priors = Priors::new(z0, z1).unwrap();
            let result = helstrom_pe(&rho, &rho, &priors).unwrap();
            assert_abs_diff_eq!(result.pe, priors.min(), epsilon = 1e-12);
        }
    }

    #[test]
    fn helstrom_orthogonal_pure_states_is_exact() {
        let up = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0).unwrap());
        let down = bloch_to_density(&BlochVector::new(0.0, 0.0, -1.0).unwrap());
        let result = helstrom_pe(&up, &down, &Priors::equal()).unwrap();
        assert_abs_diff_eq!(result.pe, 0.0, epsilon = 1e-12);
        assert_eq!(result.regime, Regime::Measure);
    }

    #[test]
    fn helstrom_singlet_quarter_turn() {
        let rho0 = bell_state(BellLabel::PsiMinus);
        let rho1 = apply_unitary(&rho0, &two_qubit_perturbation(FRAC_PI_4)).unwrap();
        let result = helstrom_pe(&rho0, &rho1, &Priors::equal()).unwrap();
        let expected = 0.5 * (1.0 - 0.5f64.sqrt());
        assert_abs_diff_eq!(result.pe, expected, epsilon = 1e-12);
        // Consistency with the trace formula p_e = z1 - Tr[Lambda Pi1].
        let via_pvm = pe_from_pvm(&rho0, &rho1, &Priors::equal(), &result.pvm).unwrap();
        assert_abs_diff_eq!(result.pe, via_pvm, epsilon = 1e-10);
    }

    #[test]
    fn helstrom_regimes() {
        let rho = bloch_to_density(&BlochVector::new(0.0, 0.0, 0.3).unwrap());
        // z1 = 0: Lambda = -z0 rho0 has no positive part.
        let guess_h0 = helstrom_pe(&rho, &rho, &Priors::new(1.0, 0.0).unwrap()).unwrap();
        assert_eq!(guess_h0.regime, Regime::AlwaysGuessH0);
        assert_abs_diff_eq!(guess_h0.pe, 0.0, epsilon = 1e-12);
        assert!(guess_h0.pvm.pi1().max_abs_entry() < 1e-12);

        let guess_h1 = helstrom_pe(&rho, &rho, &Priors::new(0.0, 1.0).unwrap()).unwrap();
        assert_eq!(guess_h1.regime, Regime::AlwaysGuessH1);
        assert!(guess_h1.pvm.pi1().max_abs_diff(&identity2()) < 1e-12);
    }

    #[test]
    fn pe_pure_overlap_examples() {
        let equal = Priors::equal();
        assert_abs_diff_eq!(pe_pure_overlap(0.0, &equal).unwrap(), 0.0, epsilon = 1e-15);
        for (z0, z1) in [(0.5, 0.5), (0.2, 0.8)] {
            let priors = Priors::new(z0, z1).unwrap();
            assert_abs_diff_eq!(
                pe_pure_overlap(1.0, &priors).unwrap(),
                priors.min(),
                epsilon = 1e-12
            );
        }
        assert_abs_diff_eq!(
            pe_pure_overlap(0.5, &equal).unwrap(),
            0.5 * (1.0 - 0.5f64.sqrt()),
            epsilon = 1e-15
        );
        assert!(pe_pure_overlap(1.5, &equal).is_err());
    }

    #[test]
    fn pe_pure_overlap_matches_helstrom_on_pure_pairs() {
        let r = BlochVector::new(0.0, 0.6, 0.8).unwrap();
        let rho0 = bloch_to_density(&r);
        let priors = Priors::new(0.3, 0.7).unwrap();
        for lambda in [0.2, 0.7, 1.3] {
            let rho1 = apply_unitary(&rho0, &unitary_perturbation(lambda, Axis::X)).unwrap();
            let kappa_sq = crate::state::overlap(&rho0, &rho1).unwrap();
            let closed = pe_pure_overlap(kappa_sq, &priors).unwrap();
            let oracle = helstrom_pe(&rho0, &rho1, &priors).unwrap().pe;
            assert_abs_diff_eq!(closed, oracle, epsilon = 1e-10);
        }
    }

    #[test]
    fn pe_single_qubit_examples() {
        let r = BlochVector::new(0.3, 0.4, 0.5).unwrap();
        let priors = Priors::new(0.4, 0.6).unwrap();
        assert_abs_diff_eq!(
            pe_single_qubit(&r, 0.0, &priors).unwrap(),
            priors.min(),
            epsilon = 1e-12
        );

        // Pure state with r1 = 0 at equal priors: (1 - |sin l|)/2.
        let transverse = BlochVector::new(0.0, 0.6, 0.8).unwrap();
        for lambda in [0.25, 0.8, 2.0] {
            assert_abs_diff_eq!(
                pe_single_qubit(&transverse, lambda, &Priors::equal()).unwrap(),
                0.5 * (1.0 - lambda.sin().abs()),
                epsilon = 1e-12
            );
        }

        // Oracle comparison at the spec point.
        let rho0 = bloch_to_density(&r);
        let rho1 = apply_unitary(&rho0, &unitary_perturbation(0.7, Axis::X)).unwrap();
        let oracle = helstrom_pe(&rho0, &rho1, &priors).unwrap().pe;
        assert_abs_diff_eq!(
            pe_single_qubit(&r, 0.7, &priors).unwrap(),
            oracle,
            epsilon = 1e-10
        );
    }

    #[test]
    fn pe_single_qubit_guessing_regime() {
        // Mixed state, strongly skewed priors, small perturbation: the
        // characteristic operator has a definite sign and the optimum is
        // pure guessing at min(z0, z1); the capped closed form follows.
        let r = BlochVector::new(0.0, 0.0, 0.5).unwrap();
        let priors = Priors::new(0.9, 0.1).unwrap();
        let lambda = 0.1;
        let rho0 = bloch_to_density(&r);
        let rho1 = apply_unitary(&rho0, &unitary_perturbation(lambda, Axis::X)).unwrap();
        let oracle = helstrom_pe(&rho0, &rho1, &priors).unwrap();
        assert_eq!(oracle.regime, Regime::AlwaysGuessH0);
        assert_abs_diff_eq!(oracle.pe, 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(
            pe_single_qubit(&r, lambda, &priors).unwrap(),
            oracle.pe,
            epsilon = 1e-10
        );
    }

    #[test]
    fn pe_purity_form_examples() {
        for lambda in [0.3, 1.0, 1.5] {
            assert_abs_diff_eq!(
                pe_single_qubit_purity(1.0, 0.0, lambda).unwrap(),
                0.5 * (1.0 - lambda.sin().abs()),
                epsilon = 1e-15
            );
        }
        assert_abs_diff_eq!(
            pe_single_qubit_purity(0.5, 0.0, 1.1).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert!(pe_single_qubit_purity(0.6, 0.8, 1.0).is_err());
        assert!(pe_single_qubit_purity(0.4, 0.0, 1.0).is_err());

        // mu = 0.9, r1 = 0.3, lambda = pi/3 against the oracle; r2 = 2mu-1.
        let mu = 0.9f64;
        let r1 = 0.3f64;
        let r_sq = 2.0 * mu - 1.0;
        let r_perp = (r_sq - r1 * r1).sqrt();
        let r = BlochVector::new(r1, 0.0, r_perp).unwrap();
        let rho0 = bloch_to_density(&r);
        let rho1 = apply_unitary(&rho0, &unitary_perturbation(FRAC_PI_3, Axis::X)).unwrap();
        let oracle = helstrom_pe(&rho0, &rho1, &Priors::equal()).unwrap().pe;
        assert_abs_diff_eq!(
            pe_single_qubit_purity(mu, r1, FRAC_PI_3).unwrap(),
            oracle,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            pe_single_qubit_purity(mu, r1, FRAC_PI_3).unwrap(),
            pe_single_qubit(&r, FRAC_PI_3, &Priors::equal()).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn pe_singlet_examples() {
        assert_abs_diff_eq!(
            pe_two_qubit_singlet(FRAC_PI_2, &Priors::equal()),
            0.0,
            epsilon = 1e-15
        );
        let skew = Priors::new(0.7, 0.3).unwrap();
        assert_abs_diff_eq!(pe_two_qubit_singlet(0.0, &skew), skew.min(), epsilon = 1e-12);
        for lambda in [0.2, 0.9, 1.4] {
            assert_abs_diff_eq!(
                pe_two_qubit_singlet(lambda, &Priors::equal()),
                0.5 * (1.0 - lambda.sin().abs()),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn singlet_lambda_eigenvalues() {
        // Lambda for the singlet at z0 = z1 = 1/2, lambda = pi/3 has
        // eigenvalues +/- sqrt(1 - cos^2 l)/2 plus a double zero.
        let rho0 = bell_state(BellLabel::PsiMinus);
        let rho1 = apply_unitary(&rho0, &two_qubit_perturbation(FRAC_PI_3)).unwrap();
        let lam = characteristic_operator(&rho0, &rho1, &Priors::equal()).unwrap();
        let eigs = eig_hermitian(&lam).unwrap().eigenvalues;
        let xi = 0.5 * (1.0 - FRAC_PI_3.cos().powi(2)).sqrt();
        assert_abs_diff_eq!(eigs[0], xi, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[2], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[3], -xi, epsilon = 1e-12);
    }

    #[test]
    fn optimal_class_examples() {
        let zero = Complex64::ZERO;
        let one = Complex64::ONE;
        let singlet = [zero, one, -one, zero];
        let phi_plus_like = [one, zero, zero, one];
        let outside = [one, one, one, zero];
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            assert!(check_optimal_class(&singlet, axis).unwrap());
            assert!(check_optimal_class(&phi_plus_like, axis).unwrap());
        }
        assert!(!check_optimal_class(&outside, Axis::X).unwrap());
        assert!(!check_optimal_class(&outside, Axis::Z).unwrap());
        // Im(a0 a2* + a1 a3*) = 0, so this state is in the sigma_2 class.
        assert!(check_optimal_class(&outside, Axis::Y).unwrap());
        assert!(check_optimal_class(&[zero; 4], Axis::X).is_err());
    }

    #[test]
    fn optimal_class_reaches_singlet_bound_and_outsiders_do_not() {
        let one = Complex64::ONE;
        let zero = Complex64::ZERO;
        let lambda = 0.6;
        let priors = Priors::equal();
        let target = pe_two_qubit_singlet(lambda, &priors);

        let member = crate::state::two_qubit_pure(&[one, zero, zero, one]).unwrap();
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let u = tensor(&unitary_perturbation(lambda, axis), &identity2()).unwrap();
            let perturbed = apply_unitary(&member, &u).unwrap();
            let pe = helstrom_pe(&member, &perturbed, &priors).unwrap().pe;
            assert_abs_diff_eq!(pe, target, epsilon = 1e-9);
        }

        let outsider = crate::state::two_qubit_pure(&[one, one, one, zero]).unwrap();
        let perturbed = apply_unitary(&outsider, &two_qubit_perturbation(lambda)).unwrap();
        let pe = helstrom_pe(&outsider, &perturbed, &priors).unwrap().pe;
        assert!((pe - target).abs() > 1e-3);
    }

    #[test]
    fn bell_diagonal_variants() {
        // A single phi+ component: both variants give the optimal bound.
        for lambda in [0.3, 1.0] {
            for variant in [BellDiagonalVariant::AsPrinted, BellDiagonalVariant::Corrected] {
                assert_abs_diff_eq!(
                    pe_bell_diagonal(&[1.0, 0.0, 0.0, 0.0], lambda, variant).unwrap(),
                    0.5 * (1.0 - lambda.sin().abs()),
                    epsilon = 1e-12
                );
            }
        }
        // Uniform mixture: indistinguishable.
        for variant in [BellDiagonalVariant::AsPrinted, BellDiagonalVariant::Corrected] {
            assert_abs_diff_eq!(
                pe_bell_diagonal(&[0.25; 4], 0.9, variant).unwrap(),
                0.5,
                epsilon = 1e-12
            );
        }
        assert!(pe_bell_diagonal(&[0.5, 0.5, 0.2, -0.2], 0.3, BellDiagonalVariant::Corrected)
            .is_err());
    }

    #[test]
    fn bell_diagonal_corrected_matches_oracle_and_printed_deviates() {
        let weights = [0.1, 0.2, 0.1, 0.6];
        let lambda = FRAC_PI_4;
        let rho0 = bell_diagonal(&weights).unwrap();
        let rho1 = apply_unitary(&rho0, &two_qubit_perturbation(lambda)).unwrap();
        let oracle = helstrom_pe(&rho0, &rho1, &Priors::equal()).unwrap().pe;

        let corrected =
            pe_bell_diagonal(&weights, lambda, BellDiagonalVariant::Corrected).unwrap();
        assert_abs_diff_eq!(corrected, oracle, epsilon = 1e-10);
        // (1 - (0.1 + 0.5) / sqrt(2)) / 2
        assert_abs_diff_eq!(
            corrected,
            0.5 * (1.0 - 0.6 * FRAC_PI_4.sin()),
            epsilon = 1e-12
        );

        let printed =
            pe_bell_diagonal(&weights, lambda, BellDiagonalVariant::AsPrinted).unwrap();
        assert!((printed - oracle).abs() > 1e-3);
    }

    #[test]
    fn pe_is_symmetric_under_hypothesis_swap() {
        let rho0 = bloch_to_density(&BlochVector::new(0.2, 0.3, 0.1).unwrap());
        let rho1 = bloch_to_density(&BlochVector::new(-0.1, 0.5, 0.4).unwrap());
        let priors = Priors::new(0.35, 0.65).unwrap();
        let forward = helstrom_pe(&rho0, &rho1, &priors).unwrap().pe;
        let backward = helstrom_pe(&rho1, &rho0, &priors.swapped()).unwrap().pe;
        assert_abs_diff_eq!(forward, backward, epsilon = 1e-12);
    }

    #[test]
    fn pe_is_even_in_lambda_and_under_pi_reflection() {
        let r = BlochVector::new(0.3, 0.4, 0.5).unwrap();
        let priors = Priors::new(0.4, 0.6).unwrap();
        for lambda in [0.3, 0.9] {
            let base = pe_single_qubit(&r, lambda, &priors).unwrap();
            assert_abs_diff_eq!(
                base,
                pe_single_qubit(&r, -lambda, &priors).unwrap(),
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                base,
                pe_single_qubit(&r, PI - lambda, &priors).unwrap(),
                epsilon = 1e-12
            );
        }
    }
}
