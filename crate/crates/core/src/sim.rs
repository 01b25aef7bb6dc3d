//! Statevector evaluation of QHC gates.
//!
//! Measurement is modeled by exact basis probabilities; no shots are sampled.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexScalar, MAX_DIM};
use crate::synth::{bit_label, QhcGate};

/// Allowed deviation of `sum |a_i|^2` from 1.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Probability slack for reporting a single basis outcome.
pub const DEFAULT_DECODE_TOLERANCE: f64 = 1e-6;

/// Largest unitarity defect accepted by [`apply`].
pub const APPLY_UNITARITY_TOLERANCE: f64 = 1e-9;

/// Normalized amplitudes over a `2^N`-dimensional computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<ComplexScalar>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<ComplexScalar>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 || dim > MAX_DIM || !dim.is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "dimension must be a power of two up to {MAX_DIM}, got {dim}"
            )));
        }
        if amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "squared norm {norm_sqr} is not 1"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Standard basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidState(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amplitudes = vec![ComplexScalar::new(0.0, 0.0); dim];
        amplitudes[index] = ComplexScalar::new(1.0, 0.0);
        Self::new(amplitudes)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[ComplexScalar] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecodedOutcome {
    Basis { label: String, probability: f64 },
    Superposed { probabilities: Vec<f64> },
}

impl DecodedOutcome {
    pub fn label(&self) -> Option<&str> {
        match self {
            DecodedOutcome::Basis { label, .. } => Some(label),
            DecodedOutcome::Superposed { .. } => None,
        }
    }
}

/// The all-zeros register `|0...0>` on `output_qubits` qubits.
pub fn initial_state(output_qubits: usize) -> StateVector {
    StateVector::basis(1 << output_qubits, 0).expect("supported register size")
}

pub fn apply(u: &ComplexMatrix, psi: &StateVector) -> Result<StateVector> {
    if u.dim() != psi.dim() {
        return Err(Error::Dimension {
            expected: u.dim(),
            found: psi.dim(),
        });
    }
    let defect = u.unitarity_defect();
    if defect > APPLY_UNITARITY_TOLERANCE {
        return Err(Error::NonUnitary {
            defect,
            tolerance: APPLY_UNITARITY_TOLERANCE,
        });
    }
    StateVector::new(u.mul_vec(psi.amplitudes())?)
}

pub fn decode(psi: &StateVector, tolerance: f64) -> DecodedOutcome {
    let probabilities = psi.probabilities();
    let peak = probabilities
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, &p)| (i, p));
    match peak {
        Some((index, probability)) if probability >= 1.0 - tolerance => DecodedOutcome::Basis {
            label: bit_label(index, psi.qubits()),
            probability,
        },
        _ => DecodedOutcome::Superposed { probabilities },
    }
}

/// Applies `U(sum of inputs)` to `|0...0>` and decodes the result. Inputs may
/// be any finite reals.
pub fn evaluate_continuous(gate: &QhcGate, inputs: &[f64]) -> Result<DecodedOutcome> {
    evaluate_continuous_with(gate, inputs, DEFAULT_DECODE_TOLERANCE)
}

pub fn evaluate_continuous_with(
    gate: &QhcGate,
    inputs: &[f64],
    tolerance: f64,
) -> Result<DecodedOutcome> {
    let u = gate.unitary_for_inputs(inputs)?;
    let out = apply(&u, &initial_state(gate.output_qubits()))?;
    Ok(decode(&out, tolerance))
}
