//! Two-qubit Kraus noise channels and the closed-form error probabilities
//! for the noisy discrimination pipeline (noise on both qubits, then the
//! possible perturbation on qubit one, equal priors, phi+ input).

use crate::bayes::{helstrom_pe, Priors};
use crate::error::{Error, Result};
use crate::linalg::{identity2, pauli, tensor, Axis, ComplexMatrix};
use crate::state::{apply_unitary, bell_state, unitary_perturbation, BellLabel, DensityMatrix};

const COMPLETENESS_TOL: f64 = 1e-10;

/// The four noise families studied here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    Depolarizing,
}

/// A noise channel with its parameters; p and q are the (independent)
/// noise probabilities on the first and second qubit respectively, and the
/// depolarizing family takes a single strength p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseSpec {
    BitFlip { p: f64, q: f64 },
    PhaseFlip { p: f64, q: f64 },
    BitPhaseFlip { p: f64, q: f64 },
    Depolarizing { p: f64 },
}

impl NoiseSpec {
    pub fn kind(&self) -> ChannelKind {
        match self {
            NoiseSpec::BitFlip { .. } => ChannelKind::BitFlip,
            NoiseSpec::PhaseFlip { .. } => ChannelKind::PhaseFlip,
            NoiseSpec::BitPhaseFlip { .. } => ChannelKind::BitPhaseFlip,
            NoiseSpec::Depolarizing { .. } => ChannelKind::Depolarizing,
        }
    }

    pub fn channel(&self) -> Result<KrausChannel> {
        match *self {
            NoiseSpec::BitFlip { p, q } => bit_flip_channel(p, q),
            NoiseSpec::PhaseFlip { p, q } => phase_flip_channel(p, q),
            NoiseSpec::BitPhaseFlip { p, q } => bit_phase_flip_channel(p, q),
            NoiseSpec::Depolarizing { p } => depolarizing_channel(p),
        }
    }
}

/// A completely positive trace-preserving map given by Kraus operators
/// satisfying sum E†E = I.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    kind: ChannelKind,
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(kind: ChannelKind, operators: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = match operators.first() {
            Some(op) => op.dim(),
            None => {
                return Err(Error::InvalidState(
                    "a channel needs at least one Kraus operator".to_string(),
                ))
            }
        };
        if operators.iter().any(|op| op.dim() != dim) {
            return Err(Error::Dimension(
                "Kraus operators must share a dimension".to_string(),
            ));
        }
        let mut completeness = ComplexMatrix::zeros(dim)?;
        for op in &operators {
            completeness = &completeness + &(&op.adjoint() * op);
        }
        if completeness.max_abs_diff(&ComplexMatrix::identity(dim)?) > COMPLETENESS_TOL {
            return Err(Error::InvalidState(
                "Kraus operators violate the completeness relation".to_string(),
            ));
        }
        Ok(Self { kind, operators })
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }
}

fn check_probability(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::Domain(format!(
            "{name} must lie in [0,1], got {value}"
        )));
    }
    Ok(())
}

/// Four-operator product channel with weights sqrt(pq), sqrt(p(1-q)),
/// sqrt((1-p)q), sqrt((1-p)(1-q)) on I x I, I x s, s x I, s x s. Note the
/// weight convention: p multiplies the identity on the first qubit.
fn pauli_product_channel(kind: ChannelKind, sigma: &ComplexMatrix, p: f64, q: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    check_probability("q", q)?;
    let id = identity2();
    let operators = vec![
        tensor(&id, &id)?.scale((p * q).sqrt()),
        tensor(&id, sigma)?.scale((p * (1.0 - q)).sqrt()),
        tensor(sigma, &id)?.scale(((1.0 - p) * q).sqrt()),
        tensor(sigma, sigma)?.scale(((1.0 - p) * (1.0 - q)).sqrt()),
    ];
    KrausChannel::new(kind, operators)
}

/// Bit-flip noise: sigma_1 on either qubit.
pub fn bit_flip_channel(p: f64, q: f64) -> Result<KrausChannel> {
    pauli_product_channel(ChannelKind::BitFlip, &pauli(Axis::X), p, q)
}

/// Phase-flip noise: sigma_3 on either qubit.
pub fn phase_flip_channel(p: f64, q: f64) -> Result<KrausChannel> {
    pauli_product_channel(ChannelKind::PhaseFlip, &pauli(Axis::Z), p, q)
}

/// Bit-phase-flip noise: sigma_2 on either qubit.
pub fn bit_phase_flip_channel(p: f64, q: f64) -> Result<KrausChannel> {
    pauli_product_channel(ChannelKind::BitPhaseFlip, &pauli(Axis::Y), p, q)
}

/// Two-qubit depolarizing channel rho -> (p/4) I + (1-p) rho, realized as
/// the uniform Pauli-pair twirl: weight p/16 on each of the 15 non-identity
/// sigma_i x sigma_j plus an adjusted identity weight 1 - 15p/16.
pub fn depolarizing_channel(p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    let id = identity2();
    let singles = [
        id.clone(),
        pauli(Axis::X),
        pauli(Axis::Y),
        pauli(Axis::Z),
    ];
    let mut operators = Vec::with_capacity(16);
    for (i, a) in singles.iter().enumerate() {
        for (j, b) in singles.iter().enumerate() {
            let weight = if i == 0 && j == 0 {
                1.0 - 15.0 * p / 16.0
            } else {
                p / 16.0
            };
            operators.push(tensor(a, b)?.scale(weight.sqrt()));
        }
    }
    KrausChannel::new(ChannelKind::Depolarizing, operators)
}

/// Applies the channel: rho -> sum E rho E†.
pub fn apply_channel(rho: &DensityMatrix, channel: &KrausChannel) -> Result<DensityMatrix> {
    if rho.dim() != channel.dim() {
        return Err(Error::Dimension(format!(
            "state dim {} does not match channel dim {}",
            rho.dim(),
            channel.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(rho.dim())?;
    for op in channel.operators() {
        out = &out + &(&(op * rho.matrix()) * &op.adjoint());
    }
    DensityMatrix::new(out)
}

/// Closed-form error probability for the noisy pipeline with phi+ input
/// and the sigma_1 generator at equal priors:
/// bit flip (1 - |(2p-1)(2q-1)| |sin l|)/2, phase flip and bit-phase flip
/// (1 - |sin l|)/2 independently of (p, q), depolarizing
/// (1 - (1-p) |sin l|)/2.
pub fn pe_noisy(spec: &NoiseSpec, lambda: f64) -> Result<f64> {
    let sin = lambda.sin().abs();
    match *spec {
        NoiseSpec::BitFlip { p, q } => {
            check_probability("p", p)?;
            check_probability("q", q)?;
            Ok(0.5 * (1.0 - ((2.0 * p - 1.0) * (2.0 * q - 1.0)).abs() * sin))
        }
        NoiseSpec::PhaseFlip { p, q } | NoiseSpec::BitPhaseFlip { p, q } => {
            check_probability("p", p)?;
            check_probability("q", q)?;
            Ok(0.5 * (1.0 - sin))
        }
        NoiseSpec::Depolarizing { p } => {
            check_probability("p", p)?;
            Ok(0.5 * (1.0 - (1.0 - p) * sin))
        }
    }
}

/// Spectral-oracle error probability for the same pipeline: noise applied
/// to phi+, then the perturbation on qubit one, then the Helstrom bound.
pub fn pe_noisy_oracle(spec: &NoiseSpec, lambda: f64) -> Result<f64> {
    let channel = spec.channel()?;
    let noisy = apply_channel(&bell_state(BellLabel::PhiPlus), &channel)?;
    let u = tensor(&unitary_perturbation(lambda, Axis::X), &identity2())?;
    let perturbed = apply_unitary(&noisy, &u)?;
    Ok(helstrom_pe(&noisy, &perturbed, &Priors::equal())?.pe)
}
