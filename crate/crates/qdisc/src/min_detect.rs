//! Minimum-detectable-perturbation solvers.
//!
//! Closed forms for pure, mixed, and two-qubit preparations under the
//! absolute criterion (p11 >= 1/2) and the relative criterion
//! (p11/p10 >= delta), each validated against a bisection oracle driven by
//! the Neyman-Pearson engine.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::neyman_pearson::optimal_p11_at_false_alarm;
use crate::scenario::Scenario;

/// Detectability criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetectionCriterion {
    /// Detectable when the optimal detection probability reaches 1/2.
    Absolute,
    /// Detectable when p11 >= delta p10 with delta > 1.
    Relative { delta: f64 },
}

impl DetectionCriterion {
    pub fn relative(delta: f64) -> Result<Self> {
        if !delta.is_finite() || delta <= 1.0 {
            return Err(Error::Domain(format!(
                "relative criterion requires delta > 1, got {delta}"
            )));
        }
        Ok(DetectionCriterion::Relative { delta })
    }

    fn satisfied(&self, p11: f64, p10: f64) -> bool {
        match self {
            DetectionCriterion::Absolute => p11 >= 0.5,
            DetectionCriterion::Relative { delta } => p11 >= delta * p10,
        }
    }
}

/// Result of a minimum-detectable-perturbation solve.
///
/// `lambda_min = None` means the criterion is unreachable for every
/// lambda in [0, pi/2]; this is distinct from `Some(0.0)`, where the
/// criterion holds for arbitrarily small amplitudes. `constraint_ok`
/// reports whether the preparation restriction of the relevant closed form
/// is satisfied, and `closed_form` whether the value came from the closed
/// form (false when a formula left its real domain and the numeric oracle
/// supplied the value).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaMinResult {
    pub lambda_min: Option<f64>,
    pub constraint_ok: bool,
    pub closed_form: bool,
}

impl LambdaMinResult {
    fn detectable(lambda: f64) -> Self {
        Self {
            lambda_min: Some(lambda),
            constraint_ok: true,
            closed_form: true,
        }
    }

    fn not_detectable() -> Self {
        Self {
            lambda_min: None,
            constraint_ok: false,
            closed_form: true,
        }
    }
}

fn check_p10(p10: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p10) {
        return Err(Error::Domain(format!(
            "false-alarm probability must lie in [0,1], got {p10}"
        )));
    }
    Ok(p10.clamp(0.0, 1.0))
}

fn check_r1(r1: f64) -> Result<f64> {
    if !r1.is_finite() || r1.abs() > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "generator projection r1 must lie in [-1,1], got {r1}"
        )));
    }
    Ok(r1.clamp(-1.0, 1.0))
}

/// Turns a required sin^2(lambda) into a result, flagging saturation at
/// pi/2 and unreachable requirements.
fn from_sin_sq(sin_sq: f64) -> LambdaMinResult {
    if sin_sq > 1.0 + 1e-12 {
        LambdaMinResult::not_detectable()
    } else if sin_sq >= 1.0 - 1e-12 {
        LambdaMinResult::detectable(FRAC_PI_2)
    } else {
        LambdaMinResult::detectable(sin_sq.max(0.0).sqrt().asin())
    }
}

/// Minimum detectable amplitude for a pure preparation under the absolute
/// criterion: lambda_m = arcsin sqrt([1/2 - sqrt(p10 (1-p10))]/(1-r1^2))
/// for p10 <= 1/2, subject to r1^2 <= 1/2 + sqrt(p10 (1-p10)).
///
/// For p10 > 1/2 the detection probability already meets the threshold at
/// lambda = 0. A preparation along the generator axis (r1^2 = 1) is blind
/// to the perturbation and yields NotDetectable for any real requirement.
pub fn lambda_min_pure_absolute(r1: f64, p10: f64) -> Result<LambdaMinResult> {
    let p10 = check_p10(p10)?;
    let r1 = check_r1(r1)?;
    if p10 >= 0.5 {
        return Ok(LambdaMinResult::detectable(0.0));
    }
    let bracket = 0.5 - (p10 * (1.0 - p10)).sqrt();
    let transverse = 1.0 - r1 * r1;
    if transverse <= 1e-14 {
        return Ok(LambdaMinResult::not_detectable());
    }
    Ok(from_sin_sq(bracket / transverse))
}

/// Minimum detectable amplitude for a pure preparation under the relative
/// criterion: lambda_m = arcsin sqrt(p10 [sqrt(1 - delta p10)
/// - sqrt(delta (1-p10))]^2 / (1-r1^2)) on its real domain p10 <= 1/delta,
/// subject to r1^2 <= 1 - p10 [..]^2.
///
/// Outside the real domain the closed form is inapplicable (flagged via
/// `closed_form = false`) and the numeric oracle decides; there the
/// requirement p11 >= delta p10 > 1 is unreachable.
pub fn lambda_min_pure_relative(r1: f64, p10: f64, delta: f64) -> Result<LambdaMinResult> {
    let p10 = check_p10(p10)?;
    let r1 = check_r1(r1)?;
    let criterion = DetectionCriterion::relative(delta)?;
    if p10 == 0.0 {
        // p11 >= delta * 0 holds for any amplitude.
        return Ok(LambdaMinResult::detectable(0.0));
    }
    if 1.0 - delta * p10 < 0.0 {
        let scenario = pure_scenario(r1)?;
        let numeric = lambda_min_numeric(&scenario, &criterion, p10)?;
        return Ok(LambdaMinResult {
            closed_form: false,
            ..numeric.result
        });
    }
    let alpha_required =
        p10 * ((1.0 - delta * p10).sqrt() - (delta * (1.0 - p10)).sqrt()).powi(2);
    let transverse = 1.0 - r1 * r1;
    if transverse <= 1e-14 {
        return Ok(if alpha_required <= 0.0 {
            LambdaMinResult::detectable(0.0)
        } else {
            LambdaMinResult::not_detectable()
        });
    }
    Ok(from_sin_sq(alpha_required / transverse))
}

/// Minimum detectable amplitude for a strictly mixed preparation under the
/// absolute criterion:
/// sin^2(lambda_m) = [1/2 - (1/2) sqrt((r^2 - 1 + 4 p10 (1-p10))/r^2)]
///                   / (1 - r1^2/r^2),
/// subject to r1^2 <= r^2 [1/2 + (1/2) sqrt((r^2 - 1 + 4 p10 (1-p10))/r^2)].
///
/// A negative radicand (r^2 < (1 - 2 p10)^2) means the mixed plateau never
/// reaches 1/2: NotDetectable. At r^2 = 1 the expression reduces exactly
/// to the pure form.
pub fn lambda_min_mixed(r_sq: f64, r1: f64, p10: f64) -> Result<LambdaMinResult> {
    if !(r_sq > 0.0) || r_sq > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "squared Bloch norm must lie in (0,1], got {r_sq}"
        )));
    }
    let r_sq = r_sq.min(1.0);
    let r1 = check_r1(r1)?;
    if r1 * r1 > r_sq + 1e-12 {
        return Err(Error::Domain(format!(
            "r1^2 = {} exceeds r^2 = {r_sq}",
            r1 * r1
        )));
    }
    let p10 = check_p10(p10)?;
    if p10 >= 0.5 {
        return Ok(LambdaMinResult::detectable(0.0));
    }
    let radicand = (r_sq - 1.0 + 4.0 * p10 * (1.0 - p10)) / r_sq;
    if radicand < 0.0 {
        return Ok(LambdaMinResult::not_detectable());
    }
    let bracket = 0.5 - 0.5 * radicand.sqrt();
    let transverse = 1.0 - (r1 * r1) / r_sq;
    if bracket <= 1e-15 {
        return Ok(LambdaMinResult::detectable(0.0));
    }
    if transverse <= 1e-14 {
        return Ok(LambdaMinResult::not_detectable());
    }
    Ok(from_sin_sq(bracket / transverse))
}

/// Minimum detectable amplitude for two-qubit preparations in the optimal
/// class: lambda_m = arcsin sqrt(1/2 - sqrt(p10 (1-p10))), independent of
/// the preparation; it ranges from pi/4 at p10 = 0 down to 0 at p10 = 1/2.
pub fn lambda_min_two_qubit(p10: f64) -> Result<LambdaMinResult> {
    let p10 = check_p10(p10)?;
    if p10 >= 0.5 {
        return Ok(LambdaMinResult::detectable(0.0));
    }
    let bracket = 0.5 - (p10 * (1.0 - p10)).sqrt();
    Ok(from_sin_sq(bracket))
}

/// How the numeric solver located the threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveMethod {
    /// The detectability predicate was monotone on a coarse grid and the
    /// threshold was bisected to 1e-8.
    Bisection,
    /// The monotonicity check failed; the first satisfying grid point of a
    /// dense scan is reported together with its resolution.
    GridScan { resolution: f64 },
}

/// Numeric minimum-detectable-perturbation result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericLambdaMin {
    pub result: LambdaMinResult,
    pub method: SolveMethod,
}

const BISECTION_ITERATIONS: usize = 60;
const COARSE_GRID: usize = 48;
const FALLBACK_GRID: usize = 10_000;

fn pure_scenario(r1: f64) -> Result<Scenario> {
    use crate::scenario::Preparation;
    use crate::state::BlochVector;
    let transverse = (1.0 - r1 * r1).max(0.0).sqrt();
    Ok(Scenario::new(
        Preparation::Bloch(BlochVector::new(r1, 0.0, transverse)?),
        crate::linalg::Axis::X,
        None,
    )?)
}

/// Independent bisection oracle: the smallest lambda in [0, pi/2] whose
/// NP-optimal detection probability at the given false-alarm budget
/// satisfies the criterion, to absolute tolerance 1e-8.
///
/// The predicate is checked for monotonicity on a coarse grid first; a
/// non-monotone predicate falls back to a dense grid scan with reported
/// resolution.
pub fn lambda_min_numeric(
    scenario: &Scenario,
    criterion: &DetectionCriterion,
    p10: f64,
) -> Result<NumericLambdaMin> {
    let p10 = check_p10(p10)?;
    let rho0 = scenario.initial_state()?;
    let predicate = |lambda: f64| -> Result<bool> {
        let rho1 = crate::state::apply_unitary(&rho0, &scenario.perturbation_unitary(lambda)?)?;
        let p11 = optimal_p11_at_false_alarm(&rho0, &rho1, p10)?;
        Ok(criterion.satisfied(p11, p10))
    };

    let mut values = Vec::with_capacity(COARSE_GRID + 1);
    for i in 0..=COARSE_GRID {
        let lambda = FRAC_PI_2 * i as f64 / COARSE_GRID as f64;
        values.push((lambda, predicate(lambda)?));
    }
    let first_true = values.iter().position(|(_, ok)| *ok);
    let monotone = match first_true {
        Some(index) => values[index..].iter().all(|(_, ok)| *ok),
        None => true,
    };

    if !monotone {
        // Dense scan; report the first satisfying point and its resolution.
        let step = FRAC_PI_2 / FALLBACK_GRID as f64;
        for i in 0..=FALLBACK_GRID {
            let lambda = step * i as f64;
            if predicate(lambda)? {
                return Ok(NumericLambdaMin {
                    result: LambdaMinResult {
                        lambda_min: Some(lambda),
                        constraint_ok: true,
                        closed_form: false,
                    },
                    method: SolveMethod::GridScan { resolution: step },
                });
            }
        }
        return Ok(NumericLambdaMin {
            result: LambdaMinResult {
                lambda_min: None,
                constraint_ok: false,
                closed_form: false,
            },
            method: SolveMethod::GridScan {
                resolution: step,
            },
        });
    }

    let Some(first_true) = first_true else {
        return Ok(NumericLambdaMin {
            result: LambdaMinResult {
                lambda_min: None,
                constraint_ok: false,
                closed_form: false,
            },
            method: SolveMethod::Bisection,
        });
    };
    if first_true == 0 {
        return Ok(NumericLambdaMin {
            result: LambdaMinResult {
                lambda_min: Some(0.0),
                constraint_ok: true,
                closed_form: false,
            },
            method: SolveMethod::Bisection,
        });
    }

    let mut lo = values[first_true - 1].0;
    let mut hi = values[first_true].0;
    for _ in 0..BISECTION_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if predicate(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(NumericLambdaMin {
        result: LambdaMinResult {
            lambda_min: Some(hi),
            constraint_ok: true,
            closed_form: false,
        },
        method: SolveMethod::Bisection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Axis;
    use crate::scenario::Preparation;
    use crate::state::{BellLabel, BlochVector};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn pure_absolute_landmarks() {
        let at_zero = lambda_min_pure_absolute(0.0, 0.0).unwrap();
        assert_abs_diff_eq!(at_zero.lambda_min.unwrap(), FRAC_PI_4, epsilon = 1e-12);
        assert!(at_zero.constraint_ok);

        let at_half = lambda_min_pure_absolute(0.0, 0.5).unwrap();
        assert_abs_diff_eq!(at_half.lambda_min.unwrap(), 0.0, epsilon = 1e-15);

        // Above 1/2 the criterion is free.
        let above = lambda_min_pure_absolute(0.3, 0.7).unwrap();
        assert_abs_diff_eq!(above.lambda_min.unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn pure_absolute_oracle_agreement() {
        let r1 = 0.5;
        let p10 = 0.1;
        let closed = lambda_min_pure_absolute(r1, p10).unwrap();
        let scenario = pure_scenario(r1).unwrap();
        let numeric =
            lambda_min_numeric(&scenario, &DetectionCriterion::Absolute, p10).unwrap();
        assert_eq!(numeric.method, SolveMethod::Bisection);
        assert_abs_diff_eq!(
            closed.lambda_min.unwrap(),
            numeric.result.lambda_min.unwrap(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn pure_absolute_saturation_and_blindness() {
        // Saturated preparation bound: lambda_m = pi/2.
        let p10 = 0.1f64;
        let r1 = (0.5 + (p10 * (1.0 - p10)).sqrt()).sqrt();
        let saturated = lambda_min_pure_absolute(r1, p10).unwrap();
        assert!(saturated.constraint_ok);
        assert_abs_diff_eq!(
            saturated.lambda_min.unwrap(),
            std::f64::consts::FRAC_PI_2,
            epsilon = 1e-6
        );

        // Slightly beyond the bound: unreachable.
        let beyond = lambda_min_pure_absolute(r1 + 1e-4, p10).unwrap();
        assert_eq!(beyond.lambda_min, None);
        assert!(!beyond.constraint_ok);

        // Generator eigenstate with a nonzero requirement.
        let blind = lambda_min_pure_absolute(1.0, 0.2).unwrap();
        assert_eq!(blind.lambda_min, None);
    }

    #[test]
    fn pure_relative_examples() {
        let vacuous = lambda_min_pure_relative(0.0, 0.0, 4.0).unwrap();
        assert_abs_diff_eq!(vacuous.lambda_min.unwrap(), 0.0, epsilon = 1e-15);

        // In-domain point against the oracle (Fig. 5 uses delta = 4).
        let closed = lambda_min_pure_relative(0.0, 0.05, 4.0).unwrap();
        assert!(closed.closed_form);
        let scenario = pure_scenario(0.0).unwrap();
        let numeric = lambda_min_numeric(
            &scenario,
            &DetectionCriterion::relative(4.0).unwrap(),
            0.05,
        )
        .unwrap();
        assert_abs_diff_eq!(
            closed.lambda_min.unwrap(),
            numeric.result.lambda_min.unwrap(),
            epsilon = 1e-6
        );

        // In-domain point with a larger p10; still on the closed form.
        let wide = lambda_min_pure_relative(0.0, 0.2, 4.0).unwrap();
        assert!(wide.closed_form);
        assert_abs_diff_eq!(wide.lambda_min.unwrap(), 0.6f64.asin(), epsilon = 1e-12);

        // Out of the real domain (delta p10 > 1): delegated to the oracle,
        // where p11 >= delta p10 > 1 is unreachable.
        let outside = lambda_min_pure_relative(0.0, 0.3, 4.0).unwrap();
        assert!(!outside.closed_form);
        assert_eq!(outside.lambda_min, None);

        assert!(lambda_min_pure_relative(0.0, 0.1, 0.9).is_err());
    }

    #[test]
    fn mixed_examples() {
        // Pure limit reduces to the pure formula.
        for p10 in [0.0, 0.1, 0.3, 0.45] {
            let mixed = lambda_min_mixed(1.0, 0.0, p10).unwrap();
            let pure = lambda_min_pure_absolute(0.0, p10).unwrap();
            assert_abs_diff_eq!(
                mixed.lambda_min.unwrap(),
                pure.lambda_min.unwrap(),
                epsilon = 1e-12
            );
        }

        // r^2 = 0.8, p10 = 0: the plateau cannot reach 1/2.
        let unreachable = lambda_min_mixed(0.8, 0.0, 0.0).unwrap();
        assert_eq!(unreachable.lambda_min, None);

        // Finite case against the oracle.
        let closed = lambda_min_mixed(0.8, 0.0, 0.4).unwrap();
        let scenario = Scenario::new(
            Preparation::Bloch(BlochVector::new(0.0, 0.0, 0.8f64.sqrt()).unwrap()),
            Axis::X,
            None,
        )
        .unwrap();
        let numeric =
            lambda_min_numeric(&scenario, &DetectionCriterion::Absolute, 0.4).unwrap();
        assert_abs_diff_eq!(
            closed.lambda_min.unwrap(),
            numeric.result.lambda_min.unwrap(),
            epsilon = 1e-6
        );

        assert!(lambda_min_mixed(0.5, 0.9, 0.2).is_err());
        assert!(lambda_min_mixed(0.0, 0.0, 0.2).is_err());
    }

    #[test]
    fn mixed_limit_to_pure() {
        for p10 in [0.05, 0.2, 0.4] {
            let nearly_pure = lambda_min_mixed(1.0 - 1e-9, 0.0, p10).unwrap();
            let pure = lambda_min_pure_absolute(0.0, p10).unwrap();
            assert_abs_diff_eq!(
                nearly_pure.lambda_min.unwrap(),
                pure.lambda_min.unwrap(),
                epsilon = 1e-6
            );
        }
    }

    #[test]
    fn two_qubit_examples() {
        assert_abs_diff_eq!(
            lambda_min_two_qubit(0.0).unwrap().lambda_min.unwrap(),
            FRAC_PI_4,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            lambda_min_two_qubit(0.5).unwrap().lambda_min.unwrap(),
            0.0,
            epsilon = 1e-15
        );
        // Coincides with the pure r1 = 0 solver everywhere.
        for p10 in [0.0, 0.1, 0.25, 0.4, 0.5] {
            assert_abs_diff_eq!(
                lambda_min_two_qubit(p10).unwrap().lambda_min.unwrap(),
                lambda_min_pure_absolute(0.0, p10)
                    .unwrap()
                    .lambda_min
                    .unwrap(),
                epsilon = 1e-12
            );
        }
        // p10 = 0.25 against the singlet oracle.
        let scenario = Scenario::new(Preparation::Bell(BellLabel::PsiMinus), Axis::X, None).unwrap();
        let numeric =
            lambda_min_numeric(&scenario, &DetectionCriterion::Absolute, 0.25).unwrap();
        assert_abs_diff_eq!(
            lambda_min_two_qubit(0.25).unwrap().lambda_min.unwrap(),
            numeric.result.lambda_min.unwrap(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn numeric_detects_generator_eigenstate_as_blind() {
        let scenario = Scenario::new(
            Preparation::Bloch(BlochVector::new(1.0, 0.0, 0.0).unwrap()),
            Axis::X,
            None,
        )
        .unwrap();
        let numeric =
            lambda_min_numeric(&scenario, &DetectionCriterion::Absolute, 0.2).unwrap();
        assert_eq!(numeric.result.lambda_min, None);
    }

    #[test]
    fn numeric_boundary_is_sharp() {
        // Just above the threshold the criterion holds, just below it fails.
        let scenario = pure_scenario(0.0).unwrap();
        let p10 = 0.1;
        let numeric = lambda_min_numeric(&scenario, &DetectionCriterion::Absolute, p10)
            .unwrap()
            .result
            .lambda_min
            .unwrap();
        let rho0 = scenario.initial_state().unwrap();
        let p11_at = |lambda: f64| {
            let rho1 = crate::state::apply_unitary(
                &rho0,
                &scenario.perturbation_unitary(lambda).unwrap(),
            )
            .unwrap();
            optimal_p11_at_false_alarm(&rho0, &rho1, p10).unwrap()
        };
        assert!(p11_at(numeric + 1e-6) >= 0.5);
        assert!(p11_at(numeric - 1e-6) < 0.5);
        assert_abs_diff_eq!(p11_at(numeric), 0.5, epsilon = 1e-7);
    }
}
