//! Neyman-Pearson strategy engine: the Lagrange operator, the
//! gamma-parameterized family of optimal measurements, ROC sweeps (the
//! module's oracle), and closed-form characteristic functions for pure,
//! mixed, and Bell-diagonal preparations.

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, Complex64, ComplexMatrix, DEFAULT_TOL};
use crate::measure::{outcome_probability, positive_part, BinaryPVM};
use crate::state::{bell_vector, BellLabel, BlochVector, DensityMatrix};

/// One point of the detection/false-alarm trade-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    /// False-alarm probability p(1|0).
    pub p10: f64,
    /// Detection probability p(1|1).
    pub p11: f64,
    /// The Lagrange multiplier that produced the point, when one did.
    pub gamma: Option<f64>,
}

impl RocPoint {
    pub fn new(p10: f64, p11: f64, gamma: Option<f64>) -> Result<Self> {
        for (name, value) in [("p10", p10), ("p11", p11)] {
            if !(-1e-12..=1.0 + 1e-12).contains(&value) {
                return Err(Error::InvalidState(format!(
                    "{name} must be a probability, got {value}"
                )));
            }
        }
        Ok(Self {
            p10: p10.clamp(0.0, 1.0),
            p11: p11.clamp(0.0, 1.0),
            gamma,
        })
    }
}

/// ROC curve: points sorted by rising false alarm, with nondecreasing
/// detection probability.
#[derive(Debug, Clone)]
pub struct RocCurve {
    points: Vec<RocPoint>,
}

impl RocCurve {
    pub fn new(mut points: Vec<RocPoint>) -> Result<Self> {
        points.sort_by(|a, b| a.p10.total_cmp(&b.p10).then(a.p11.total_cmp(&b.p11)));
        points.dedup_by(|a, b| (a.p10 - b.p10).abs() <= 1e-12 && (a.p11 - b.p11).abs() <= 1e-12);
        for pair in points.windows(2) {
            if pair[1].p11 < pair[0].p11 - 1e-10 {
                return Err(Error::InvalidState(format!(
                    "ROC curve is not monotone: p11 drops from {} to {} as p10 rises",
                    pair[0].p11, pair[1].p11
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[RocPoint] {
        &self.points
    }
}

/// Lagrange operator Gamma = rho1 - gamma rho0.
pub fn lagrange_operator(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    gamma: f64,
) -> Result<ComplexMatrix> {
    if rho0.dim() != rho1.dim() {
        return Err(Error::Dimension(format!(
            "state dimensions differ: {} vs {}",
            rho0.dim(),
            rho1.dim()
        )));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain(format!(
            "Lagrange multiplier must be nonnegative, got {gamma}"
        )));
    }
    Ok(rho1.matrix() - &rho0.matrix().scale(gamma))
}

/// Measurement and operating point for a fixed Lagrange multiplier: Pi_1
/// projects on the strictly positive eigenspace of Gamma, which maximizes
/// p11 - gamma p10 over all measurements.
pub fn roc_measurement(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    gamma: f64,
) -> Result<(RocPoint, BinaryPVM)> {
    let gamma_op = lagrange_operator(rho0, rho1, gamma)?;
    let pvm = positive_part(&gamma_op)?;
    let p10 = outcome_probability(rho0.matrix(), pvm.pi1());
    let p11 = outcome_probability(rho1.matrix(), pvm.pi1());
    Ok((RocPoint::new(p10, p11, Some(gamma))?, pvm))
}

/// The operating point alone; see [`roc_measurement`].
pub fn roc_point(rho0: &DensityMatrix, rho1: &DensityMatrix, gamma: f64) -> Result<RocPoint> {
    Ok(roc_measurement(rho0, rho1, gamma)?.0)
}

/// Operating point computed directly from the eigendecomposition of Gamma
/// without materializing the projector pair; same strict-positivity
/// convention as [`roc_point`]. Used inside oracle bisection loops.
fn roc_probabilities(rho0: &DensityMatrix, rho1: &DensityMatrix, gamma: f64) -> Result<(f64, f64)> {
    let gamma_op = lagrange_operator(rho0, rho1, gamma)?;
    let decomposition = eig_hermitian(&gamma_op)?;
    let mut p10 = 0.0;
    let mut p11 = 0.0;
    for (value, vector) in decomposition
        .eigenvalues
        .iter()
        .zip(&decomposition.eigenvectors)
    {
        if *value > crate::linalg::DEFAULT_TOL {
            p10 += vector_expectation(rho0, vector);
            p11 += vector_expectation(rho1, vector);
        }
    }
    Ok((p10.clamp(0.0, 1.0), p11.clamp(0.0, 1.0)))
}

fn vector_expectation(rho: &DensityMatrix, v: &[Complex64]) -> f64 {
    let n = rho.dim();
    let mut total = Complex64::ZERO;
    for i in 0..n {
        for j in 0..n {
            total += v[i].conj() * rho.matrix().get(i, j) * v[j];
        }
    }
    total.re
}

/// Sweeps the multiplier over a grid and assembles the (deterministic-PVM)
/// ROC curve. This is the oracle the closed-form characteristics are
/// checked against.
pub fn roc_sweep(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    gammas: &[f64],
) -> Result<RocCurve> {
    if gammas.is_empty() {
        return Err(Error::Domain("gamma grid must be nonempty".to_string()));
    }
    let points = gammas
        .iter()
        .map(|&g| roc_point(rho0, rho1, g))
        .collect::<Result<Vec<_>>>()?;
    RocCurve::new(points)
}

/// Log-spaced multiplier grid over [lo, hi].
pub fn log_spaced_gammas(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0) || !(hi > lo) || count < 2 {
        return Err(Error::Domain(
            "log grid needs 0 < lo < hi and at least two points".to_string(),
        ));
    }
    let (log_lo, log_hi) = (lo.ln(), hi.ln());
    Ok((0..count)
        .map(|i| (log_lo + (log_hi - log_lo) * i as f64 / (count - 1) as f64).exp())
        .collect())
}

/// Default sweep grid: 512 log-spaced multipliers over [1e-4, 1e4] with the
/// analytically known critical values inserted exactly, so plateau edges
/// are resolved. ROC features cluster near gamma = 1 and at determinant
/// roots.
pub fn default_gamma_grid(criticals: &[f64]) -> Vec<f64> {
    let mut grid = log_spaced_gammas(1e-4, 1e4, 512).expect("static bounds are valid");
    for &g in criticals {
        if g.is_finite() && g >= 0.0 {
            // Bracket each critical value tightly from both sides as well,
            // so open-interval regimes are sampled.
            grid.push(g);
            grid.push(g * (1.0 - 1e-9));
            grid.push(g * (1.0 + 1e-9));
        }
    }
    grid.sort_by(|a, b| a.total_cmp(b));
    grid.dedup();
    grid
}

/// Pure-state characteristic function:
/// p11 = [sqrt(p10 k2) + sqrt((1-p10)(1-k2))]^2 for p10 <= k2, else 1.
pub fn p11_pure(kappa_sq: f64, p10: f64) -> Result<f64> {
    for (name, value) in [("kappa_sq", kappa_sq), ("p10", p10)] {
        if !(-1e-12..=1.0 + 1e-12).contains(&value) {
            return Err(Error::Domain(format!(
                "{name} must lie in [0,1], got {value}"
            )));
        }
    }
    let kappa_sq = kappa_sq.clamp(0.0, 1.0);
    let p10 = p10.clamp(0.0, 1.0);
    if p10 >= kappa_sq {
        return Ok(1.0);
    }
    let amp = (p10 * kappa_sq).sqrt() + ((1.0 - p10) * (1.0 - kappa_sq)).sqrt();
    Ok((amp * amp).min(1.0))
}

/// Squared overlap |kappa|^2 = 1 - (1 - r1^2/r^2) sin^2(lambda) between a
/// mixed Bloch preparation and its perturbed image, as it enters the
/// mixed-state characteristic.
pub fn mixed_kappa_sq(r_sq: f64, r1_sq: f64, lambda: f64) -> Result<f64> {
    if !(r_sq > 0.0) || r_sq > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "r^2 must lie in (0,1], got {r_sq}"
        )));
    }
    if r1_sq < 0.0 || r1_sq > r_sq + 1e-12 {
        return Err(Error::Domain(format!(
            "r1^2 must lie in [0, r^2], got {r1_sq} with r^2 = {r_sq}"
        )));
    }
    Ok(1.0 - (1.0 - r1_sq / r_sq) * lambda.sin().powi(2))
}

/// Which side of the (gamma-, gamma+) window a multiplier falls on for a
/// full-rank single-qubit pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowRegime {
    /// gamma <= gamma-: Gamma is positive semidefinite, Pi_1 = I, the
    /// operating point is (1, 1).
    FullAcceptance,
    /// gamma- < gamma < gamma+: rank-one Pi_1, the parametric arc.
    Inside,
    /// gamma >= gamma+: Gamma has no positive part, the point is (0, 0).
    FullRejection,
}

/// Parametric mixed-state operating point with its regime tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedNpPoint {
    pub point: RocPoint,
    pub regime: WindowRegime,
}

/// Critical multipliers gamma-+ where the determinant of the single-qubit
/// Lagrange operator vanishes:
/// gamma+- = 1 + 2 sqrt(r^2 (1-k2)) / (1-r^2) [sqrt(r^2 - k2 r^2) +- sqrt(1 - k2 r^2)].
pub fn mixed_critical_gammas(r_sq: f64, kappa_sq: f64) -> Result<(f64, f64)> {
    if !(r_sq > 0.0 && r_sq < 1.0) {
        return Err(Error::Domain(format!(
            "critical multipliers require 0 < r^2 < 1, got {r_sq}"
        )));
    }
    if !(-1e-12..=1.0 + 1e-12).contains(&kappa_sq) {
        return Err(Error::Domain(format!(
            "kappa_sq must lie in [0,1], got {kappa_sq}"
        )));
    }
    let kappa_sq = kappa_sq.clamp(0.0, 1.0);
    let prefactor = 2.0 * (r_sq * (1.0 - kappa_sq)).sqrt() / (1.0 - r_sq);
    let first = (r_sq * (1.0 - kappa_sq)).sqrt();
    let second = (1.0 - kappa_sq * r_sq).sqrt();
    let lo = 1.0 + prefactor * (first - second);
    let hi = 1.0 + prefactor * (first + second);
    Ok((lo.max(0.0), hi))
}

/// Detection and false-alarm probabilities for a strictly mixed Bloch
/// preparation at multiplier gamma:
/// p11 = [1 + (f - gamma k2) sqrt(r^2) / sqrt(f^2 - gamma k2)]/2,
/// p10 = [1 - (f - k2) sqrt(r^2) / sqrt(f^2 - gamma k2)]/2, f = (1+gamma)/2.
///
/// Outside the (gamma-, gamma+) window the measurement degenerates and the
/// regime tag reports the saturated point instead of evaluating the arc.
pub fn np_mixed_parametric(r: &BlochVector, lambda: f64, gamma: f64) -> Result<MixedNpPoint> {
    let r_sq = r.norm_sq();
    if !(r_sq > 1e-14 && r_sq < 1.0 - 1e-14) {
        return Err(Error::Domain(format!(
            "parametric mixed form requires 0 < r^2 < 1, got r^2 = {r_sq}"
        )));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain(format!(
            "Lagrange multiplier must be nonnegative, got {gamma}"
        )));
    }
    let kappa_sq = mixed_kappa_sq(r_sq, r.r1 * r.r1, lambda)?;
    let (gamma_lo, gamma_hi) = mixed_critical_gammas(r_sq, kappa_sq)?;
    if gamma <= gamma_lo {
        return Ok(MixedNpPoint {
            point: RocPoint::new(1.0, 1.0, Some(gamma))?,
            regime: WindowRegime::FullAcceptance,
        });
    }
    if gamma >= gamma_hi {
        return Ok(MixedNpPoint {
            point: RocPoint::new(0.0, 0.0, Some(gamma))?,
            regime: WindowRegime::FullRejection,
        });
    }
    let f = 0.5 * (1.0 + gamma);
    let denominator = (f * f - gamma * kappa_sq).sqrt();
    let scale = r_sq.sqrt() / denominator;
    let p11 = 0.5 * (1.0 + (f - gamma * kappa_sq) * scale);
    let p10 = 0.5 * (1.0 - (f - kappa_sq) * scale);
    Ok(MixedNpPoint {
        point: RocPoint::new(p10, p11, Some(gamma))?,
        regime: WindowRegime::Inside,
    })
}

/// Branch of the mixed-state characteristic function a false-alarm budget
/// falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedRegime {
    /// Below p10(gamma+): no deterministic measurement detects anything.
    DeadZone,
    /// The rising arc between the critical breakpoints.
    Arc,
    /// Above p10(gamma-): stuck at the plateau value p11(gamma-).
    Plateau,
    /// p10 = 1: the trivial all-accept measurement.
    Unit,
}

/// Mixed-state characteristic value p11(p10) with its regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedCharPoint {
    pub p11: f64,
    pub regime: MixedRegime,
}

/// The middle-branch value
/// p11* = p10 k2 + (1-p10)(1-k2) + sqrt(k2 (1-k2) [r^2 - (2 p10 - 1)^2]).
pub fn mixed_arc_p11(r_sq: f64, kappa_sq: f64, p10: f64) -> f64 {
    let radicand = (kappa_sq * (1.0 - kappa_sq) * (r_sq - (2.0 * p10 - 1.0).powi(2))).max(0.0);
    (p10 * kappa_sq + (1.0 - p10) * (1.0 - kappa_sq) + radicand.sqrt()).clamp(0.0, 1.0)
}

/// Piecewise mixed-state characteristic function p11(p10) for a strictly
/// mixed preparation with squared Bloch norm `r_sq` and squared generator
/// projection `r1_sq`: zero below p10(gamma+), the arc p11* inside the
/// window, the plateau p11(gamma-) above it, and 1 at p10 = 1.
pub fn characteristic_mixed(
    r_sq: f64,
    r1_sq: f64,
    lambda: f64,
    p10: f64,
) -> Result<MixedCharPoint> {
    if !(r_sq > 1e-14 && r_sq < 1.0 - 1e-14) {
        return Err(Error::Domain(format!(
            "characteristic_mixed requires 0 < r^2 < 1, got r^2 = {r_sq}"
        )));
    }
    if !(-1e-12..=1.0 + 1e-12).contains(&p10) {
        return Err(Error::Domain(format!(
            "p10 must be a probability, got {p10}"
        )));
    }
    let p10 = p10.clamp(0.0, 1.0);
    let kappa_sq = mixed_kappa_sq(r_sq, r1_sq, lambda)?;
    if p10 >= 1.0 {
        return Ok(MixedCharPoint {
            p11: 1.0,
            regime: MixedRegime::Unit,
        });
    }
    if kappa_sq >= 1.0 - 1e-14 {
        // Identical states: the only nontrivial points are (0,0) and (1,1).
        return Ok(MixedCharPoint {
            p11: 0.0,
            regime: MixedRegime::DeadZone,
        });
    }
    let r = BlochVector::new(r1_sq.sqrt(), 0.0, (r_sq - r1_sq).max(0.0).sqrt())?;
    let (gamma_lo, gamma_hi) = mixed_critical_gammas(r_sq, kappa_sq)?;
    let at_hi = np_mixed_parametric(&r, lambda, gamma_hi * (1.0 - 1e-12))?.point;
    let at_lo = np_mixed_parametric(&r, lambda, gamma_lo * (1.0 + 1e-12))?.point;
    if p10 <= at_hi.p10 {
        Ok(MixedCharPoint {
            p11: 0.0,
            regime: MixedRegime::DeadZone,
        })
    } else if p10 < at_lo.p10 {
        Ok(MixedCharPoint {
            p11: mixed_arc_p11(r_sq, kappa_sq, p10),
            regime: MixedRegime::Arc,
        })
    } else {
        Ok(MixedCharPoint {
            p11: at_lo.p11,
            regime: MixedRegime::Plateau,
        })
    }
}

/// The two-qubit Lagrange operator of a Bell-diagonal preparation in its
/// block form.
///
/// The plus block lives on span{phi+, psi+} and the minus block on
/// span{psi-, phi-}; entries follow the printed forms
/// Gamma0 = pA (cos^2 l - g) + pB sin^2 l, Gamma2 = i sin l cos l (pA - pB),
/// realized in the basis columns (phi+, -psi+, psi-, phi-), whose phase
/// choice makes the direct sum reproduce the 4x4 operator exactly.
#[derive(Debug, Clone)]
pub struct BlockPair {
    pub plus: ComplexMatrix,
    pub minus: ComplexMatrix,
}

fn block_matrix(p_a: f64, p_b: f64, lambda: f64, gamma: f64) -> ComplexMatrix {
    let (sin, cos) = lambda.sin_cos();
    let (sin_sq, cos_sq) = (sin * sin, cos * cos);
    let off = Complex64::new(0.0, sin * cos * (p_a - p_b));
    ComplexMatrix::from_rows2([
        [
            Complex64::new(p_a * (cos_sq - gamma) + p_b * sin_sq, 0.0),
            off,
        ],
        [
            -off,
            Complex64::new(p_b * (cos_sq - gamma) + p_a * sin_sq, 0.0),
        ],
    ])
}

/// Basis columns (phi+, -psi+, psi-, phi-) as a 4x4 unitary.
pub fn bell_block_basis() -> ComplexMatrix {
    let mut b = ComplexMatrix::zeros(4).expect("dim 4 is valid");
    let columns = [
        bell_vector(BellLabel::PhiPlus).map(|z| z),
        bell_vector(BellLabel::PsiPlus).map(|z| -z),
        bell_vector(BellLabel::PsiMinus),
        bell_vector(BellLabel::PhiMinus),
    ];
    for (j, column) in columns.iter().enumerate() {
        for (i, entry) in column.iter().enumerate() {
            b.set(i, j, *entry);
        }
    }
    b
}

fn validate_bell_weights(weights: &[f64; 4]) -> Result<()> {
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
    Ok(())
}

/// Block decomposition Gamma = Gamma(+) o+ Gamma(-) for a Bell-diagonal
/// preparation under the sigma_1 generator.
pub fn gamma_blocks(weights: &[f64; 4], lambda: f64, gamma: f64) -> Result<BlockPair> {
    validate_bell_weights(weights)?;
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain(format!(
            "Lagrange multiplier must be nonnegative, got {gamma}"
        )));
    }
    Ok(BlockPair {
        plus: block_matrix(weights[0], weights[1], lambda, gamma),
        minus: block_matrix(weights[2], weights[3], lambda, gamma),
    })
}

/// Critical multipliers of one 2x2 block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BlockCriticals {
    /// Generic block: det Gamma = pA pB [g^2 - 2g(1 + Xi) + 1] vanishes at
    /// gamma-+ = 1 + Xi -+ sqrt(Xi (Xi + 2)).
    Window {
        xi: f64,
        gamma_minus: f64,
        gamma_plus: f64,
    },
    /// pA pB = 0: the determinant is linear in gamma with a single root.
    Degenerate { gamma_critical: f64 },
}

/// Xi = (pA - pB)^2 sin^2(lambda) / (2 pA pB) and the determinant roots of
/// one block; degenerate blocks (pA pB = 0) are flagged instead of
/// dividing by zero.
pub fn xi_and_critical_gammas(p_a: f64, p_b: f64, lambda: f64) -> Result<BlockCriticals> {
    for (name, value) in [("pA", p_a), ("pB", p_b)] {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain(format!(
                "{name} must lie in [0,1], got {value}"
            )));
        }
    }
    if p_a * p_b <= 0.0 {
        // det = -(pA + pB)^2 sin^2 l cos^2 l ... reduces to a linear
        // function of gamma whose root sits at gamma = 0 when sin l != 0,
        // and the block is scalar (root at 1) when lambda = 0.
        let gamma_critical = if lambda.sin().abs() > 0.0 { 0.0 } else { 1.0 };
        return Ok(BlockCriticals::Degenerate { gamma_critical });
    }
    let xi = (p_a - p_b).powi(2) * lambda.sin().powi(2) / (2.0 * p_a * p_b);
    let spread = (xi * (xi + 2.0)).sqrt();
    Ok(BlockCriticals::Window {
        xi,
        gamma_minus: 1.0 + xi - spread,
        gamma_plus: 1.0 + xi + spread,
    })
}

/// Contribution of one block to (p10, p11) at multiplier gamma, classified
/// through the block eigenvalues zeta+- (rank-aware, so zero weights need
/// no special casing).
fn block_contribution(p_a: f64, p_b: f64, lambda: f64, gamma: f64) -> (f64, f64) {
    let cos2 = (2.0 * lambda).cos();
    let mean = 0.5 * (p_a + p_b) * (1.0 - gamma);
    let radius =
        0.5 * (p_a - p_b).abs() * (gamma * gamma - 2.0 * gamma * cos2 + 1.0).sqrt();
    let (zeta_plus, zeta_minus) = (mean + radius, mean - radius);
    if zeta_minus > DEFAULT_TOL {
        // Both eigenvalues positive: the whole block enters Pi_1 and both
        // probabilities pick up the full block weight.
        (p_a + p_b, p_a + p_b)
    } else if zeta_plus > DEFAULT_TOL {
        let denominator = (gamma * gamma - 2.0 * gamma * cos2 + 1.0).sqrt();
        let p10 = 0.5 * ((p_a + p_b) + (p_a - p_b).abs() * (cos2 - gamma) / denominator);
        let p11 = 0.5 * ((p_a + p_b) + (p_a - p_b).abs() * (1.0 - gamma * cos2) / denominator);
        (p10.max(0.0), p11.max(0.0))
    } else {
        (0.0, 0.0)
    }
}

/// Closed-form characteristic point (p10(gamma), p11(gamma)) for a
/// Bell-diagonal preparation: each block contributes its weight, its
/// rank-one arc term, or nothing, according to the signs of its
/// eigenvalues. Total over all gamma >= 0.
pub fn characteristic_bell_diagonal(
    weights: &[f64; 4],
    lambda: f64,
    gamma: f64,
) -> Result<RocPoint> {
    validate_bell_weights(weights)?;
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain(format!(
            "Lagrange multiplier must be nonnegative, got {gamma}"
        )));
    }
    let (plus_p10, plus_p11) = block_contribution(weights[0], weights[1], lambda, gamma);
    let (minus_p10, minus_p11) = block_contribution(weights[2], weights[3], lambda, gamma);
    RocPoint::new(plus_p10 + minus_p10, plus_p11 + minus_p11, Some(gamma))
}

/// Brute-force NP optimum: the largest detection probability reachable at
/// a false-alarm budget, maximized over binary projective measurements.
///
/// Single-qubit pairs are solved exactly by vector geometry on the Bloch
/// sphere: a rank-one projector (I + n.sigma)/2 gives the operating point
/// ((1 + n.r0)/2, (1 + n.r1)/2), so the optimum is max n.r1 over unit n
/// with n.r0 capped by the budget, together with the trivial projectors.
/// This route shares nothing with the Lagrange-operator machinery it
/// cross-checks. Two-qubit pairs fall back to the gamma-indexed family
/// (exact for the pure preparations the closed forms cover), located by
/// bisection on the nonincreasing p10(gamma), with a zero budget solved
/// exactly by the projector onto the kernel of rho0.
pub fn optimal_p11_at_false_alarm(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    p10_budget: f64,
) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p10_budget) {
        return Err(Error::Domain(format!(
            "false-alarm budget must be a probability, got {p10_budget}"
        )));
    }
    if rho0.dim() != rho1.dim() {
        return Err(Error::Dimension(
            "optimal_p11_at_false_alarm requires equal dimensions".to_string(),
        ));
    }
    let budget = p10_budget.clamp(0.0, 1.0);
    let slack = 1e-12;

    if rho0.dim() == 2 {
        return optimal_p11_qubit(rho0, rho1, budget);
    }

    if budget <= 1e-13 {
        // Exact zero-false-alarm optimum: project onto ker(rho0).
        let decomposition = eig_hermitian(rho0.matrix())?;
        let mut p11 = 0.0;
        for (value, vector) in decomposition
            .eigenvalues
            .iter()
            .zip(&decomposition.eigenvectors)
        {
            if *value <= DEFAULT_TOL {
                let projector = ComplexMatrix::outer(vector)?;
                p11 += outcome_probability(rho1.matrix(), &projector);
            }
        }
        return Ok(p11.clamp(0.0, 1.0));
    }

    let feasible = |gamma: f64| -> Result<(bool, f64)> {
        let (p10, p11) = roc_probabilities(rho0, rho1, gamma)?;
        Ok((p10 <= budget + slack, p11))
    };

    let (ok0, p11_at_zero) = feasible(0.0)?;
    if ok0 {
        return Ok(p11_at_zero);
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut hi_value;
    loop {
        let (ok, value) = feasible(hi)?;
        if ok {
            hi_value = value;
            break;
        }
        lo = hi;
        hi *= 10.0;
        if hi > 1e9 {
            // Extremely flat tail; accept the last point conservatively.
            hi_value = feasible(hi)?.1;
            break;
        }
    }
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        let (ok, value) = feasible(mid)?;
        if ok {
            hi = mid;
            hi_value = value;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * hi.max(1.0) {
            break;
        }
    }
    Ok(hi_value)
}

/// Exact single-qubit constrained optimum over projective measurements;
/// see [`optimal_p11_at_false_alarm`].
fn optimal_p11_qubit(rho0: &DensityMatrix, rho1: &DensityMatrix, budget: f64) -> Result<f64> {
    let r0 = crate::state::density_to_bloch(rho0)?;
    let r1 = crate::state::density_to_bloch(rho1)?;
    let r0 = [r0.r1, r0.r2, r0.r3];
    let r1 = [r1.r1, r1.r2, r1.r3];
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let norm0 = dot(&r0, &r0).sqrt();
    let norm1 = dot(&r1, &r1).sqrt();
    let cap = 2.0 * budget - 1.0;

    // Trivial projectors: Pi_1 = 0 always; Pi_1 = I only within budget 1.
    let mut best: f64 = 0.0;
    if budget >= 1.0 - 1e-12 {
        best = 1.0;
    }

    // Rank-one candidates.
    let rank_one = if norm0 <= 1e-14 {
        // Maximally mixed rho0: every direction has n.r0 = 0.
        if cap >= -1e-14 {
            Some(norm1)
        } else {
            None
        }
    } else if norm1 <= 1e-14 {
        if cap >= -norm0 - 1e-14 {
            Some(0.0)
        } else {
            None
        }
    } else if dot(&r0, &r1) / norm1 <= cap + 1e-14 {
        // The unconstrained maximizer n = r1/|r1| is within budget.
        Some(norm1)
    } else if cap >= -norm0 {
        // Constraint active: n.r0 = cap. Split r1 along r0 and across it;
        // the optimum tilts fully toward the transverse component.
        let along = dot(&r0, &r1) / norm0;
        let across = (norm1 * norm1 - along * along).max(0.0).sqrt();
        let cos = (cap / norm0).clamp(-1.0, 1.0);
        let sin = (1.0 - cos * cos).max(0.0).sqrt();
        Some(cos * along + sin * across)
    } else {
        // No rank-one projector meets the budget.
        None
    };
    if let Some(value) = rank_one {
        best = best.max(0.5 * (1.0 + value));
    }
    Ok(best.clamp(0.0, 1.0))
}
