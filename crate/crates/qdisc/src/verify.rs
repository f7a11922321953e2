//! Closed-form-versus-oracle verification suite.
//!
//! Every closed form in the crate is swept against its spectral oracle on
//! a deterministic parameter grid and the maximum deviation is reported
//! per formula. Two rows are expected deviations rather than passes: the
//! Bell-diagonal error formula in its verbatim printed variant, and the
//! phase-flip output weight whose printed expression contains an undefined
//! symbol; both are documented source anomalies arbitrated by the oracle.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::bayes::{
    helstrom_pe, pe_bell_diagonal, pe_pure_overlap, pe_single_qubit, pe_single_qubit_purity,
    pe_two_qubit_singlet, BellDiagonalVariant, Priors,
};
use crate::error::Result;
use crate::linalg::{identity2, tensor, Axis, DEFAULT_TOL};
use crate::min_detect::{
    lambda_min_mixed, lambda_min_numeric, lambda_min_pure_absolute, lambda_min_pure_relative,
    lambda_min_two_qubit, DetectionCriterion,
};
use crate::neyman_pearson::{
    characteristic_bell_diagonal, characteristic_mixed, log_spaced_gammas, mixed_critical_gammas,
    mixed_kappa_sq, np_mixed_parametric, p11_pure, roc_point, roc_sweep, MixedRegime,
    WindowRegime,
};
use crate::noise::{apply_channel, pe_noisy, pe_noisy_oracle, NoiseSpec};
use crate::scenario::{Preparation, Scenario};
use crate::state::{
    apply_unitary, bell_diagonal, bell_state, bloch_to_density, unitary_perturbation, BellLabel,
    BlochVector,
};

/// Outcome of one verification row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    /// A documented source anomaly: the formula is supposed to disagree
    /// with the oracle, and did.
    ExpectedDeviation,
    Fail,
}

/// One row of the verification table.
#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: String,
    pub points: usize,
    pub max_delta: f64,
    /// Pass rows: the allowed deviation. Expected-deviation rows: the
    /// deviation that must be exceeded somewhere for the row to count as
    /// confirming the anomaly.
    pub tolerance: f64,
    pub status: CheckStatus,
    pub worst: String,
    pub note: String,
}

/// Full verification report.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub rows: Vec<CheckRow>,
}

impl VerificationReport {
    /// True when every row passed and both documented anomalies showed up.
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|row| row.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows
            .iter()
            .filter(|row| row.status == CheckStatus::Fail)
    }
}

/// Deterministic splitmix64 stream for reproducible parameter sampling.
struct ParameterStream(u64);

impl ParameterStream {
    fn new(seed: u64) -> Self {
        Self(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    fn bloch_in_ball(&mut self) -> BlochVector {
        loop {
            let r1 = self.range(-1.0, 1.0);
            let r2 = self.range(-1.0, 1.0);
            let r3 = self.range(-1.0, 1.0);
            if r1 * r1 + r2 * r2 + r3 * r3 <= 1.0 {
                return BlochVector::new(r1, r2, r3).expect("inside the ball");
            }
        }
    }

    fn bell_weights(&mut self) -> [f64; 4] {
        let raw = [
            self.uniform() + 1e-6,
            self.uniform() + 1e-6,
            self.uniform() + 1e-6,
            self.uniform() + 1e-6,
        ];
        let sum: f64 = raw.iter().sum();
        [raw[0] / sum, raw[1] / sum, raw[2] / sum, raw[3] / sum]
    }
}

/// Running maximum over sampled deviations plus its parameter tag.
struct WorstCase {
    points: usize,
    max_delta: f64,
    worst: String,
}

impl WorstCase {
    fn new() -> Self {
        Self {
            points: 0,
            max_delta: 0.0,
            worst: String::from("-"),
        }
    }

    fn record(&mut self, delta: f64, describe: impl FnOnce() -> String) {
        self.points += 1;
        if delta > self.max_delta {
            self.max_delta = delta;
            self.worst = describe();
        }
    }

    fn into_row(self, name: &str, tolerance: f64, note: &str) -> CheckRow {
        let status = if self.max_delta <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckRow {
            name: name.to_string(),
            points: self.points,
            max_delta: self.max_delta,
            tolerance,
            status,
            worst: self.worst,
            note: note.to_string(),
        }
    }

    fn into_expected_deviation_row(self, name: &str, min_deviation: f64, note: &str) -> CheckRow {
        let status = if self.max_delta >= min_deviation {
            CheckStatus::ExpectedDeviation
        } else {
            // The anomaly failed to show: the suite has lost sensitivity.
            CheckStatus::Fail
        };
        CheckRow {
            name: name.to_string(),
            points: self.points,
            max_delta: self.max_delta,
            tolerance: min_deviation,
            status,
            worst: self.worst,
            note: note.to_string(),
        }
    }
}

fn two_qubit_perturbation(lambda: f64) -> Result<crate::linalg::ComplexMatrix> {
    tensor(&unitary_perturbation(lambda, Axis::X), &identity2())
}

fn check_pe_single_qubit(grid: usize, tol: f64) -> Result<CheckRow> {
    let mut stream = ParameterStream::new(0x51b1);
    let mut worst = WorstCase::new();
    for _ in 0..grid.pow(3).max(1000) {
        let r = stream.bloch_in_ball();
        let lambda = stream.range(0.0, PI);
        let z0 = stream.uniform();
        let priors = Priors::new(z0, 1.0 - z0)?;
        let rho0 = bloch_to_density(&r);
        let rho1 = apply_unitary(&rho0, &unitary_perturbation(lambda, Axis::X))?;
        let closed = pe_single_qubit(&r, lambda, &priors)?;
        let oracle = helstrom_pe(&rho0, &rho1, &priors)?.pe;
        worst.record((closed - oracle).abs(), || {
            format!(
                "r=({:.4},{:.4},{:.4}) lambda={lambda:.4} z0={z0:.4}",
                r.r1, r.r2, r.r3
            )
        });
    }
    Ok(worst.into_row("bayes/pe_single_qubit", tol, "Bloch closed form vs Helstrom"))
}

fn check_pe_purity_form(grid: usize, tol: f64) -> Result<CheckRow> {
    let mut stream = ParameterStream::new(0x9u64);
    let mut worst = WorstCase::new();
    for _ in 0..grid.pow(3).max(1000) {
        let mu = stream.range(0.5, 1.0);
        let r_sq = 2.0 * mu - 1.0;
        let r1 = stream.range(-r_sq.sqrt(), r_sq.sqrt());
        let lambda = stream.range(0.0, PI);
        let transverse = (r_sq - r1 * r1).max(0.0).sqrt();
        let r = BlochVector::new(r1, 0.0, transverse)?;
        let rho0 = bloch_to_density(&r);
        let rho1 = apply_unitary(&rho0, &unitary_perturbation(lambda, Axis::X))?;
        let closed = pe_single_qubit_purity(mu, r1, lambda)?;
        let oracle = helstrom_pe(&rho0, &rho1, &Priors::equal())?.pe;
        worst.record((closed - oracle).abs(), || {
            format!("mu={mu:.5} r1={r1:.5} lambda={lambda:.5}")
        });
    }
    Ok(worst.into_row(
        "bayes/pe_single_qubit_purity",
        tol,
        "purity closed form vs Helstrom (equal priors)",
    ))
}

fn check_pe_pure_overlap(grid: usize, tol: f64) -> Result<CheckRow> {
    let mut stream = ParameterStream::new(0xACE);
    let mut worst = WorstCase::new();
    for _ in 0..grid.pow(3).max(1000) {
        let r1 = stream.range(-1.0, 1.0);
        let r = BlochVector::new(r1, 0.0, (1.0 - r1 * r1).max(0.0).sqrt())?;
        let lambda = stream.range(0.0, PI);
        let z0 = stream.uniform();
        let priors = Priors::new(z0, 1.0 - z0)?;
        let rho0 = bloch_to_density(&r);
        let rho1 = apply_unitary(&rho0, &unitary_perturbation(lambda, Axis::X))?;
        let kappa_sq = crate::state::overlap(&rho0, &rho1)?;
        let closed = pe_pure_overlap(kappa_sq, &priors)?;
        let oracle = helstrom_pe(&rho0, &rho1, &priors)?.pe;
        worst.record((closed - oracle).abs(), || {
            format!("r1={r1:.5} lambda={lambda:.5} z0={z0:.5}")
        });
    }
    Ok(worst.into_row(
        "bayes/pe_pure_overlap",
        tol,
        "overlap closed form vs Helstrom on pure pairs",
    ))
}

fn check_pe_singlet(grid: usize, tol: f64) -> Result<CheckRow> {
    let mut worst = WorstCase::new();
    let steps = grid.pow(2).max(400);
    let side = (steps as f64).sqrt() as usize;
    let rho0 = bell_state(BellLabel::PsiMinus);
    for i in 0..side {
        let lambda = PI * i as f64 / (side - 1).max(1) as f64;
        let rho1 = apply_unitary(&rho0, &two_qubit_perturbation(lambda)?)?;
        for j in 0..side {
            let z0 = 0.02 + 0.96 * j as f64 / (side - 1).max(1) as f64;
            let priors = Priors::new(z0, 1.0 - z0)?;
            let closed = pe_two_qubit_singlet(lambda, &priors);
            let oracle = helstrom_pe(&rho0, &rho1, &priors)?.pe;
            worst.record((closed - oracle).abs(), || {
                format!("lambda={lambda:.5} z0={z0:.5}")
            });
        }
    }
    Ok(worst.into_row(
        "bayes/pe_two_qubit_singlet",
        tol,
        "singlet closed form vs Helstrom",
    ))
}

fn check_pe_bell_diagonal(grid: usize, tol: f64) -> Result<(CheckRow, CheckRow)> {
    let mut stream = ParameterStream::new(0xBE11);
    let mut corrected = WorstCase::new();
    let mut printed = WorstCase::new();
    let mut weight_sets: Vec<[f64; 4]> = vec![[0.1, 0.2, 0.1, 0.6]];
    for _ in 0..(grid.pow(2) / 2).max(60) {
        weight_sets.push(stream.bell_weights());
    }
    let lambdas: Vec<f64> = (0..grid.max(8))
        .map(|i| 0.05 + (PI - 0.1) * i as f64 / (grid.max(8) - 1) as f64)
        .collect();
    for weights in &weight_sets {
        let rho0 = bell_diagonal(weights)?;
        for &lambda in &lambdas {
            let rho1 = apply_unitary(&rho0, &two_qubit_perturbation(lambda)?)?;
            let oracle = helstrom_pe(&rho0, &rho1, &Priors::equal())?.pe;
            let describe = || {
                format!(
                    "weights=({:.4},{:.4},{:.4},{:.4}) lambda={lambda:.4}",
                    weights[0], weights[1], weights[2], weights[3]
                )
            };
            let value = pe_bell_diagonal(weights, lambda, BellDiagonalVariant::Corrected)?;
            corrected.record((value - oracle).abs(), describe);
            let value = pe_bell_diagonal(weights, lambda, BellDiagonalVariant::AsPrinted)?;
            printed.record((value - oracle).abs(), describe);
        }
    }
    Ok((
        corrected.into_row(
            "bayes/pe_bell_diagonal[corrected]",
            tol,
            "block-spectrum form vs Helstrom",
        ),
        printed.into_expected_deviation_row(
            "bayes/pe_bell_diagonal[as_printed]",
            1e-3,
            "verbatim printed form uses |p1-p3| where the block spectrum yields |p2-p3|",
        ),
    ))
}

fn check_pe_noisy(grid: usize, tol: f64) -> Result<Vec<CheckRow>> {
    let side = (grid as f64).max(10.0) as usize;
    let mut rows = Vec::new();
    for (label, make) in [
        (
            "noise/pe_noisy[bit_flip]",
            (|p, q| NoiseSpec::BitFlip { p, q }) as fn(f64, f64) -> NoiseSpec,
        ),
        ("noise/pe_noisy[phase_flip]", |p, q| NoiseSpec::PhaseFlip {
            p,
            q,
        }),
        ("noise/pe_noisy[bit_phase_flip]", |p, q| {
            NoiseSpec::BitPhaseFlip { p, q }
        }),
        ("noise/pe_noisy[depolarizing]", |p, _q| {
            NoiseSpec::Depolarizing { p }
        }),
    ] {
        let mut worst = WorstCase::new();
        for i in 0..side {
            let p = i as f64 / (side - 1) as f64;
            for j in 0..side {
                let q = j as f64 / (side - 1) as f64;
                for k in 0..side {
                    let lambda = FRAC_PI_2 * k as f64 / (side - 1) as f64;
                    let spec = make(p, q);
                    let closed = pe_noisy(&spec, lambda)?;
                    let oracle = pe_noisy_oracle(&spec, lambda)?;
                    worst.record((closed - oracle).abs(), || {
                        format!("p={p:.4} q={q:.4} lambda={lambda:.4}")
                    });
                }
                if matches!(make(0.0, 0.0), NoiseSpec::Depolarizing { .. }) {
                    break; // single-parameter family: skip the q loop
                }
            }
        }
        rows.push(worst.into_row(label, tol, "closed form vs channel->perturbation->Helstrom"));
    }

    // Phase-flip constancy in (p, q).
    let mut constancy = WorstCase::new();
    for lambda in [0.3, 0.8, 1.3] {
        let reference = pe_noisy(&NoiseSpec::PhaseFlip { p: 0.0, q: 0.0 }, lambda)?;
        for i in 0..side {
            for j in 0..side {
                let p = i as f64 / (side - 1) as f64;
                let q = j as f64 / (side - 1) as f64;
                let value = pe_noisy(&NoiseSpec::PhaseFlip { p, q }, lambda)?;
                constancy.record((value - reference).abs(), || {
                    format!("p={p:.4} q={q:.4} lambda={lambda:.4}")
                });
            }
        }
    }
    rows.push(constancy.into_row(
        "noise/phase_flip_constancy",
        1e-12,
        "phase-flip error probability is independent of (p, q)",
    ));

    // The printed phi- weight q(1-p) + p(1-a) carries an undefined symbol
    // a. Reading a := p (the only other symbol in scope) disagrees with
    // the Kraus-applied channel; the consistent reading is a = q, which is
    // what completeness fixes and what the implementation uses.
    let mut anomaly = WorstCase::new();
    let phi_plus = bell_state(BellLabel::PhiPlus);
    let phi_minus = bell_state(BellLabel::PhiMinus);
    for i in 0..side {
        for j in 0..side {
            let p = i as f64 / (side - 1) as f64;
            let q = j as f64 / (side - 1) as f64;
            let channel = NoiseSpec::PhaseFlip { p, q }.channel()?;
            let out = apply_channel(&phi_plus, &channel)?;
            let actual = (out.matrix() * phi_minus.matrix()).trace().re;
            let printed_with_a_as_p = q * (1.0 - p) + p * (1.0 - p);
            anomaly.record((printed_with_a_as_p - actual).abs(), || {
                format!("p={p:.4} q={q:.4}")
            });
        }
    }
    rows.push(anomaly.into_expected_deviation_row(
        "noise/phase_flip_weight[as_printed]",
        1e-6,
        "printed weight q(1-p)+p(1-a) has undefined a; weight is computed by completeness (a = q)",
    ));
    Ok(rows)
}

fn check_p11_pure(tol: f64) -> Result<CheckRow> {
    let mut worst = WorstCase::new();
    for kappa_sq in [0.25f64, 0.5, 0.75, 0.9] {
        let lambda = kappa_sq.sqrt().acos();
        let r = BlochVector::new(0.0, 0.0, 1.0)?;
        let rho0 = bloch_to_density(&r);
        let rho1 = apply_unitary(&rho0, &unitary_perturbation(lambda, Axis::X))?;
        let grid = log_spaced_gammas(1e-4, 1e4, 512)?;
        let curve = roc_sweep(&rho0, &rho1, &grid)?;
        for point in curve.points() {
            let closed = p11_pure(kappa_sq, point.p10)?;
            worst.record((closed - point.p11).abs(), || {
                format!("kappa_sq={kappa_sq:.4} p10={:.6}", point.p10)
            });
        }
    }
    Ok(worst.into_row(
        "np/p11_pure",
        tol,
        "pure characteristic vs 512-point ROC sweep",
    ))
}

fn check_np_mixed(grid: usize, tol: f64) -> Result<CheckRow> {
    let mut stream = ParameterStream::new(0x313);
    let mut worst = WorstCase::new();
    for _ in 0..grid.pow(2).max(120) {
        let r_sq = stream.range(0.05, 0.95);
        let r1 = stream.range(-0.9, 0.9) * r_sq.sqrt();
        let lambda = stream.range(0.05, FRAC_PI_2);
        let r = BlochVector::new(r1, 0.0, (r_sq - r1 * r1).max(0.0).sqrt())?;
        let rho0 = bloch_to_density(&r);
        let rho1 = apply_unitary(&rho0, &unitary_perturbation(lambda, Axis::X))?;
        let kappa_sq = mixed_kappa_sq(r.norm_sq(), r1 * r1, lambda)?;
        if kappa_sq > 1.0 - 1e-9 {
            continue;
        }
        let (lo, hi) = mixed_critical_gammas(r.norm_sq(), kappa_sq)?;
        for t in [0.02, 0.25, 0.5, 0.75, 0.98] {
            let gamma = lo + (hi - lo) * t;
            let closed = np_mixed_parametric(&r, lambda, gamma)?;
            if closed.regime != WindowRegime::Inside {
                continue;
            }
            let oracle = roc_point(&rho0, &rho1, gamma)?;
            let delta = (closed.point.p10 - oracle.p10)
                .abs()
                .max((closed.point.p11 - oracle.p11).abs());
            worst.record(delta, || {
                format!("r_sq={r_sq:.4} r1={r1:.4} lambda={lambda:.4} gamma={gamma:.4}")
            });
        }
    }
    Ok(worst.into_row(
        "np/np_mixed_parametric",
        tol,
        "parametric (p10, p11) vs spectral ROC point at matched gamma",
    ))
}

fn check_characteristic_mixed(grid: usize, tol_arc: f64) -> Result<(CheckRow, CheckRow)> {
    let mut arc = WorstCase::new();
    let mut breakpoints = WorstCase::new();
    let configs: [(f64, f64, f64); 3] = [(0.8, 0.0, 0.8), (0.5, 0.1, 0.6), (0.3, 0.0, 0.4)];
    for (r_sq, r1_sq, kappa_sq) in configs {
        // lambda realizing the requested overlap for this preparation.
        let sin_sq = (1.0 - kappa_sq) / (1.0 - r1_sq / r_sq);
        let lambda = sin_sq.sqrt().asin();
        let r = BlochVector::new(r1_sq.sqrt(), 0.0, (r_sq - r1_sq).sqrt())?;
        let rho0 = bloch_to_density(&r);
        let rho1 = apply_unitary(&rho0, &unitary_perturbation(lambda, Axis::X))?;
        let (gamma_lo, gamma_hi) = mixed_critical_gammas(r_sq, kappa_sq)?;

        // Breakpoints and plateau against oracle points hugging the
        // critical multipliers.
        let closed_hi = np_mixed_parametric(&r, lambda, gamma_hi * (1.0 - 1e-9))?.point;
        let oracle_hi = roc_point(&rho0, &rho1, gamma_hi * (1.0 - 1e-9))?;
        breakpoints.record(
            (closed_hi.p10 - oracle_hi.p10)
                .abs()
                .max((closed_hi.p11 - oracle_hi.p11).abs()),
            || format!("r_sq={r_sq} kappa_sq={kappa_sq} gamma_plus"),
        );
        let closed_lo = np_mixed_parametric(&r, lambda, gamma_lo * (1.0 + 1e-9))?.point;
        let oracle_lo = roc_point(&rho0, &rho1, gamma_lo * (1.0 + 1e-9))?;
        breakpoints.record(
            (closed_lo.p10 - oracle_lo.p10)
                .abs()
                .max((closed_lo.p11 - oracle_lo.p11).abs()),
            || format!("r_sq={r_sq} kappa_sq={kappa_sq} gamma_minus"),
        );

        // Arc: characteristic at the oracle's own p10 reproduces its p11.
        for gamma in log_spaced_gammas(gamma_lo * 1.02, gamma_hi * 0.98, grid.max(24))? {
            let oracle = roc_point(&rho0, &rho1, gamma)?;
            let closed = characteristic_mixed(r_sq, r1_sq, lambda, oracle.p10)?;
            if closed.regime == MixedRegime::Arc {
                arc.record((closed.p11 - oracle.p11).abs(), || {
                    format!("r_sq={r_sq} kappa_sq={kappa_sq} gamma={gamma:.5}")
                });
            }
        }
    }
    Ok((
        arc.into_row(
            "np/characteristic_mixed[arc]",
            tol_arc,
            "middle branch p11* vs oracle at matched p10",
        ),
        breakpoints.into_row(
            "np/characteristic_mixed[breakpoints]",
            1e-6,
            "window edges from eq1/critical multipliers vs oracle",
        ),
    ))
}

fn check_characteristic_bell_diagonal(grid: usize, tol: f64) -> Result<CheckRow> {
    let mut stream = ParameterStream::new(0xD1A6);
    let mut worst = WorstCase::new();
    let mut weight_sets = vec![[0.1, 0.2, 0.1, 0.6], [0.4, 0.1, 0.3, 0.2]];
    for _ in 0..(grid / 3).max(2) {
        weight_sets.push(stream.bell_weights());
    }
    for weights in &weight_sets {
        let lambda = stream.range(0.1, FRAC_PI_2);
        let rho0 = bell_diagonal(weights)?;
        let rho1 = apply_unitary(&rho0, &two_qubit_perturbation(lambda)?)?;
        let mut criticals = Vec::new();
        for (pa, pb) in [(weights[0], weights[1]), (weights[2], weights[3])] {
            if let crate::neyman_pearson::BlockCriticals::Window {
                gamma_minus,
                gamma_plus,
                ..
            } = crate::neyman_pearson::xi_and_critical_gammas(pa, pb, lambda)?
            {
                criticals.push(gamma_minus);
                criticals.push(gamma_plus);
            }
        }
        for gamma in crate::neyman_pearson::default_gamma_grid(&criticals) {
            let closed = characteristic_bell_diagonal(weights, lambda, gamma)?;
            let oracle = roc_point(&rho0, &rho1, gamma)?;
            let delta = (closed.p10 - oracle.p10)
                .abs()
                .max((closed.p11 - oracle.p11).abs());
            worst.record(delta, || {
                format!(
                    "weights=({:.3},{:.3},{:.3},{:.3}) lambda={lambda:.4} gamma={gamma:.5}",
                    weights[0], weights[1], weights[2], weights[3]
                )
            });
        }
    }
    Ok(worst.into_row(
        "np/characteristic_bell_diagonal",
        tol,
        "per-block characteristic vs spectral ROC point",
    ))
}

fn lambda_min_delta(closed: Option<f64>, numeric: Option<f64>) -> Option<f64> {
    match (closed, numeric) {
        (Some(a), Some(b)) => Some((a - b).abs()),
        (None, None) => Some(0.0),
        // One side finite, the other not: treat as a unit-size deviation.
        _ => Some(1.0),
    }
}

fn check_lambda_min_solvers(grid: usize, tol: f64) -> Result<Vec<CheckRow>> {
    let count = (2 * grid * grid).clamp(200, 400);
    let mut rows = Vec::new();

    // Pure absolute.
    let mut stream = ParameterStream::new(0x1a);
    let mut worst = WorstCase::new();
    for _ in 0..count {
        let r1 = stream.range(-0.85, 0.85);
        let p10 = stream.range(0.0, 0.5);
        let closed = lambda_min_pure_absolute(r1, p10)?;
        let scenario = Scenario::new(
            Preparation::Bloch(BlochVector::new(r1, 0.0, (1.0 - r1 * r1).sqrt())?),
            Axis::X,
            None,
        )?;
        let numeric = lambda_min_numeric(&scenario, &DetectionCriterion::Absolute, p10)?;
        if let Some(delta) = lambda_min_delta(closed.lambda_min, numeric.result.lambda_min) {
            worst.record(delta, || format!("r1={r1:.4} p10={p10:.4}"));
        }
    }
    rows.push(worst.into_row(
        "min_detect/lambda_min_pure_absolute",
        tol,
        "closed form vs bisection oracle",
    ));

    // Pure relative at delta in {4, 8}.
    let mut stream = ParameterStream::new(0x1b);
    let mut worst = WorstCase::new();
    for i in 0..count {
        let delta_param = if i % 2 == 0 { 4.0 } else { 8.0 };
        let r1 = stream.range(-0.7, 0.7);
        let p10 = stream.range(0.0, 1.0 / delta_param);
        let closed = lambda_min_pure_relative(r1, p10, delta_param)?;
        if !closed.closed_form {
            continue;
        }
        let scenario = Scenario::new(
            Preparation::Bloch(BlochVector::new(r1, 0.0, (1.0 - r1 * r1).sqrt())?),
            Axis::X,
            None,
        )?;
        let numeric = lambda_min_numeric(
            &scenario,
            &DetectionCriterion::relative(delta_param)?,
            p10,
        )?;
        if let Some(delta) = lambda_min_delta(closed.lambda_min, numeric.result.lambda_min) {
            worst.record(delta, || {
                format!("r1={r1:.4} p10={p10:.4} delta={delta_param}")
            });
        }
    }
    rows.push(worst.into_row(
        "min_detect/lambda_min_pure_relative",
        tol,
        "closed form vs bisection oracle (delta = 4, 8)",
    ));

    // Mixed absolute.
    let mut stream = ParameterStream::new(0x1c);
    let mut worst = WorstCase::new();
    for _ in 0..count {
        let r_sq = stream.range(0.1, 1.0);
        let r1 = stream.range(-0.8, 0.8) * r_sq.sqrt();
        let p10 = stream.range(0.0, 0.5);
        let closed = lambda_min_mixed(r_sq, r1, p10)?;
        let scenario = Scenario::new(
            Preparation::Bloch(BlochVector::new(
                r1,
                0.0,
                (r_sq - r1 * r1).max(0.0).sqrt(),
            )?),
            Axis::X,
            None,
        )?;
        let numeric = lambda_min_numeric(&scenario, &DetectionCriterion::Absolute, p10)?;
        if let Some(delta) = lambda_min_delta(closed.lambda_min, numeric.result.lambda_min) {
            worst.record(delta, || format!("r_sq={r_sq:.4} r1={r1:.4} p10={p10:.4}"));
        }
    }
    rows.push(worst.into_row(
        "min_detect/lambda_min_mixed",
        tol,
        "closed form vs bisection oracle",
    ));

    // Two-qubit (singlet scenario), fewer points: 4x4 spectral solves.
    let mut worst = WorstCase::new();
    let two_qubit_count = count.min(200);
    let scenario = Scenario::new(Preparation::Bell(BellLabel::PsiMinus), Axis::X, None)?;
    for i in 0..two_qubit_count {
        let p10 = 0.5 * i as f64 / (two_qubit_count - 1) as f64;
        let closed = lambda_min_two_qubit(p10)?;
        let numeric = lambda_min_numeric(&scenario, &DetectionCriterion::Absolute, p10)?;
        if let Some(delta) = lambda_min_delta(closed.lambda_min, numeric.result.lambda_min) {
            worst.record(delta, || format!("p10={p10:.4}"));
        }
    }
    rows.push(worst.into_row(
        "min_detect/lambda_min_two_qubit",
        tol,
        "closed form vs bisection oracle on the singlet",
    ));
    Ok(rows)
}

/// Runs the full closed-form-versus-oracle suite.
///
/// `grid` controls sampling density (cubed for the cheap scalar checks);
/// `default_tol` is the acceptance threshold for the checks specified at
/// the crate default of 1e-10 and is overridable through the CLI
/// environment variable.
pub fn run_verification(grid: usize, default_tol: f64) -> Result<VerificationReport> {
    let grid = grid.max(4);
    let mut rows = Vec::new();
    rows.push(check_pe_single_qubit(grid, 1e-9)?);
    rows.push(check_pe_purity_form(grid, 1e-9)?);
    rows.push(check_pe_pure_overlap(grid, 1e-9)?);
    rows.push(check_pe_singlet(grid, 1e-9)?);
    let (corrected, printed) = check_pe_bell_diagonal(grid, default_tol)?;
    rows.push(corrected);
    rows.push(printed);
    rows.extend(check_pe_noisy(grid, default_tol)?);
    rows.push(check_p11_pure(1e-6)?);
    rows.push(check_np_mixed(grid, 1e-9)?);
    let (arc, breakpoints) = check_characteristic_mixed(grid, 1e-9)?;
    rows.push(arc);
    rows.push(breakpoints);
    rows.push(check_characteristic_bell_diagonal(grid, 1e-9)?);
    rows.extend(check_lambda_min_solvers(grid, 1e-6)?);
    Ok(VerificationReport { rows })
}

/// Default verification entry point with the crate tolerance.
pub fn run_default_verification(grid: usize) -> Result<VerificationReport> {
    run_verification(grid, DEFAULT_TOL)
}
