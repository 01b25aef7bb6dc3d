//! Truth-table synthesis of QHC gates.
//!
//! A table is synthesizable when its output depends only on the Hamming
//! weight of the input and the weight-ordered outputs walk a single cycle of
//! basis states starting at `|0...0>`. The gate is then `U(s) = exp(-i s H)`,
//! where `H` is the principal-branch generator of that cycle permutation and
//! `s` is the input sum.
//!
//! Bit labels are big-endian: the first character of a label is the most
//! significant bit of its basis index, so `"01"` is index 1 and `"10"` is
//! index 2.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    cycle_spectrum, exp_from_spectrum, ComplexMatrix, ComplexScalar, SpectralDecomposition, MAX_DIM,
};

/// Largest supported number of Boolean inputs.
pub const MAX_INPUTS: usize = 16;

/// Largest supported number of output qubits.
pub const MAX_OUTPUT_QUBITS: usize = MAX_DIM.trailing_zeros() as usize;

/// Big-endian bit string of `value` with `width` characters.
pub fn bit_label(value: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|b| if (value >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`bit_label`]; `None` on any character other than `0`/`1`.
pub fn parse_bit_label(label: &str) -> Option<usize> {
    label.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Some(acc << 1),
        '1' => Some((acc << 1) | 1),
        _ => None,
    })
}

/// Total map from `k`-bit inputs to `N`-bit output basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    input_count: usize,
    output_qubits: usize,
    outputs: Vec<usize>,
}

impl TruthTable {
    /// `outputs[x]` is the output index for the input whose big-endian
    /// value is `x`.
    pub fn new(input_count: usize, output_qubits: usize, outputs: Vec<usize>) -> Result<Self> {
        if input_count == 0 || input_count > MAX_INPUTS {
            return Err(Error::Validation {
                row: None,
                message: format!("inputs must be in 1..={MAX_INPUTS}, got {input_count}"),
            });
        }
        if output_qubits == 0 || output_qubits > MAX_OUTPUT_QUBITS {
            return Err(Error::Validation {
                row: None,
                message: format!(
                    "output_qubits must be in 1..={MAX_OUTPUT_QUBITS}, got {output_qubits}"
                ),
            });
        }
        if outputs.len() != 1 << input_count {
            return Err(Error::Validation {
                row: None,
                message: format!(
                    "expected {} rows for {input_count} inputs, got {}",
                    1usize << input_count,
                    outputs.len()
                ),
            });
        }
        if let Some((x, &o)) = outputs
            .iter()
            .enumerate()
            .find(|(_, &o)| o >= 1 << output_qubits)
        {
            return Err(Error::Validation {
                row: Some(x),
                message: format!("output index {o} does not fit in {output_qubits} qubits"),
            });
        }
        Ok(Self {
            input_count,
            output_qubits,
            outputs,
        })
    }

    pub fn from_fn(
        input_count: usize,
        output_qubits: usize,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        if input_count > MAX_INPUTS {
            return Self::new(input_count, output_qubits, Vec::new());
        }
        Self::new(
            input_count,
            output_qubits,
            (0..1 << input_count).map(f).collect(),
        )
    }

    pub fn input_count(&self) -> usize {
        self.input_count
    }

    pub fn output_qubits(&self) -> usize {
        self.output_qubits
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn output(&self, input: usize) -> usize {
        self.outputs[input]
    }

    pub fn input_label(&self, input: usize) -> String {
        bit_label(input, self.input_count)
    }

    pub fn output_label(&self, input: usize) -> String {
        bit_label(self.outputs[input], self.output_qubits)
    }

    pub fn distinct_outputs(&self) -> usize {
        self.outputs.iter().collect::<BTreeSet<_>>().len()
    }
}

/// The two-input half-adder table: weight 0, 1, 2 map to `00`, `01`, `11`.
pub fn half_adder_table() -> TruthTable {
    TruthTable::new(2, 2, vec![0b00, 0b01, 0b01, 0b11]).expect("valid table")
}

/// The three-input full-adder table with outputs `00`, `01`, `10`, `11` for
/// input weights 0 through 3.
pub fn full_adder_table() -> TruthTable {
    TruthTable::from_fn(3, 2, |x| x.count_ones() as usize).expect("valid table")
}

/// Full-adder variant with row `110 -> 11`, the one row where the
/// alternative printed table disagrees with the gate. Not synthesizable.
pub fn full_adder_variant_table() -> TruthTable {
    TruthTable::from_fn(3, 2, |x| {
        if x == 0b110 {
            0b11
        } else {
            x.count_ones() as usize
        }
    })
    .expect("valid table")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryProfile {
    pub is_symmetric: bool,
    /// Output index for each input weight `0..=k`; present iff symmetric.
    pub weight_outputs: Option<Vec<usize>>,
    #[serde(skip)]
    conflict: Option<(usize, usize)>,
    #[serde(skip)]
    input_count: usize,
}

impl SymmetryProfile {
    /// First pair of equal-weight inputs with different outputs, if any.
    pub fn conflict(&self) -> Option<(usize, usize)> {
        self.conflict
    }
}

pub fn analyze_symmetry(table: &TruthTable) -> SymmetryProfile {
    let k = table.input_count();
    let mut first_of_weight: Vec<Option<usize>> = vec![None; k + 1];
    for x in 0..1usize << k {
        let w = x.count_ones() as usize;
        match first_of_weight[w] {
            None => first_of_weight[w] = Some(x),
            Some(y) if table.output(y) != table.output(x) => {
                return SymmetryProfile {
                    is_symmetric: false,
                    weight_outputs: None,
                    conflict: Some((y, x)),
                    input_count: k,
                };
            }
            Some(_) => {}
        }
    }
    let weight_outputs = first_of_weight
        .into_iter()
        .map(|x| table.output(x.expect("every weight 0..=k occurs")))
        .collect();
    SymmetryProfile {
        is_symmetric: true,
        weight_outputs: Some(weight_outputs),
        conflict: None,
        input_count: k,
    }
}

/// Cyclic orbit of basis indices starting at the all-zeros state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclePermutation {
    dim: usize,
    orbit: Vec<usize>,
}

impl CyclePermutation {
    pub fn new(dim: usize, orbit: Vec<usize>) -> Result<Self> {
        if orbit.first() != Some(&0) {
            return Err(Error::InvalidOrbit("orbit must start at index 0".into()));
        }
        // reuse the orbit checks of the spectrum builder
        cycle_spectrum(&orbit, dim)?;
        Ok(Self { dim, orbit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    /// `images[j]` is where the permutation sends basis index `j`.
    pub fn images(&self) -> Vec<usize> {
        let mut images: Vec<usize> = (0..self.dim).collect();
        let len = self.orbit.len();
        for (k, &idx) in self.orbit.iter().enumerate() {
            images[idx] = self.orbit[(k + 1) % len];
        }
        images
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::permutation(&self.images()).expect("orbit is valid")
    }
}

/// Shortest cycle reproducing the weight-ordered outputs from `|0...0>`.
pub fn find_cycle(profile: &SymmetryProfile, output_qubits: usize) -> Result<CyclePermutation> {
    let outputs = profile.weight_outputs.as_deref().ok_or_else(|| {
        let (a, b) = profile.conflict.unwrap_or_default();
        Error::NotSymmetric {
            first: bit_label(a, profile.input_count),
            second: bit_label(b, profile.input_count),
        }
    })?;
    if outputs.first() != Some(&0) {
        return Err(Error::InitialStateMismatch {
            found: outputs
                .first()
                .map(|&o| bit_label(o, output_qubits))
                .unwrap_or_default(),
        });
    }
    let len = (1..=outputs.len())
        .find(|&len| {
            let distinct = outputs[..len].iter().collect::<BTreeSet<_>>().len() == len;
            distinct
                && outputs
                    .iter()
                    .enumerate()
                    .all(|(s, &o)| o == outputs[s % len])
        })
        .ok_or_else(|| {
            let labels: Vec<String> = outputs
                .iter()
                .map(|&o| bit_label(o, output_qubits))
                .collect();
            Error::NonEmbeddable(format!(
                "weight outputs ({}) revisit a state before closing a cycle",
                labels.join(", ")
            ))
        })?;
    CyclePermutation::new(1 << output_qubits, outputs[..len].to_vec())
}

/// A synthesized gate: the cycle, its spectrum, and the evaluator `U(s)`.
#[derive(Debug, Clone)]
pub struct QhcGate {
    cycle: CyclePermutation,
    spectrum: SpectralDecomposition,
    input_count: usize,
}

impl QhcGate {
    pub fn new(cycle: CyclePermutation, input_count: usize) -> Result<Self> {
        let spectrum = cycle_spectrum(cycle.orbit(), cycle.dim())?;
        Ok(Self {
            cycle,
            spectrum,
            input_count,
        })
    }

    pub fn cycle(&self) -> &CyclePermutation {
        &self.cycle
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn input_count(&self) -> usize {
        self.input_count
    }

    pub fn dim(&self) -> usize {
        self.cycle.dim()
    }

    pub fn output_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// Hermitian generator `H` with `U(s) = exp(-i s H)`.
    pub fn generator(&self) -> ComplexMatrix {
        self.spectrum.generator()
    }

    pub fn unitary(&self, sum: f64) -> Result<ComplexMatrix> {
        exp_from_spectrum(&self.spectrum, sum)
    }

    pub fn unitary_for_inputs(&self, inputs: &[f64]) -> Result<ComplexMatrix> {
        if inputs.len() != self.input_count {
            return Err(Error::InvalidParameter(format!(
                "gate takes {} inputs, got {}",
                self.input_count,
                inputs.len()
            )));
        }
        if let Some(v) = inputs.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "input must be finite, got {v}"
            )));
        }
        self.unitary(inputs.iter().sum())
    }
}

pub fn synthesize(table: &TruthTable) -> Result<QhcGate> {
    let profile = analyze_symmetry(table);
    let cycle = find_cycle(&profile, table.output_qubits())?;
    QhcGate::new(cycle, table.input_count())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowRecord {
    pub input: String,
    pub expected: String,
    pub obtained: String,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<RowRecord>,
    pub pass: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn failing_rows(&self) -> impl Iterator<Item = &RowRecord> {
        self.rows
            .iter()
            .filter(|r| r.obtained != r.expected || r.max_deviation > self.tolerance)
    }
}

/// Applies `U(weight(x))` to `|0...0>` for every input `x` and compares the
/// result entrywise with the expected basis vector.
pub fn verify(gate: &QhcGate, table: &TruthTable, tolerance: f64) -> Result<VerificationReport> {
    if gate.input_count() != table.input_count() {
        return Err(Error::Dimension {
            expected: gate.input_count(),
            found: table.input_count(),
        });
    }
    if gate.dim() != 1 << table.output_qubits() {
        return Err(Error::Dimension {
            expected: gate.dim(),
            found: 1 << table.output_qubits(),
        });
    }
    // one unitary per weight
    let columns: Vec<Vec<ComplexScalar>> = (0..=table.input_count())
        .map(|w| gate.unitary(w as f64).map(|u| u.column(0)))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(table.outputs().len());
    let mut pass = true;
    let mut max_deviation: f64 = 0.0;
    for x in 0..table.outputs().len() {
        let column = &columns[x.count_ones() as usize];
        let expected = table.output(x);
        let deviation = column
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let target = if i == expected { 1.0 } else { 0.0 };
                (a - ComplexScalar::new(target, 0.0)).norm()
            })
            .fold(0.0, f64::max);
        let obtained = column
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .map(|(i, _)| i)
            .expect("non-empty column");
        pass &= obtained == expected && deviation <= tolerance;
        max_deviation = max_deviation.max(deviation);
        rows.push(RowRecord {
            input: table.input_label(x),
            expected: table.output_label(x),
            obtained: bit_label(obtained, table.output_qubits()),
            max_deviation: deviation,
        });
    }
    Ok(VerificationReport {
        rows,
        pass,
        max_deviation,
        tolerance,
    })
}

/// `ceil(log2 O)` for `O` distinct output labels.
pub fn qubit_count(table: &TruthTable) -> usize {
    let distinct = table.distinct_outputs();
    (usize::BITS - (distinct - 1).leading_zeros()) as usize
}
