//! Document formats and reports used by the command-line front end.
//!
//! Truth tables are JSON objects of the form
//!
//! ```json
//! {"inputs": 2, "output_qubits": 2, "rows": [
//!   {"in": "00", "out": "00"},
//!   {"in": "01", "out": "01"},
//!   {"in": "10", "out": "01"},
//!   {"in": "11", "out": "11"}
//! ]}
//! ```
//!
//! Matrices are emitted either as JSON
//! (`{"dim": d, "entries": [[{"re": x, "im": y}, ...], ...]}`, row-major) or
//! as CSV with one row per line and `a+bi` cells. JSON numbers use the
//! shortest representation that parses back to the same `f64`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexScalar};
use crate::synth::{
    bit_label, full_adder_table, half_adder_table, parse_bit_label, qubit_count, TruthTable,
    MAX_INPUTS, MAX_OUTPUT_QUBITS,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruthTableRow {
    #[serde(rename = "in")]
    pub input: String,
    pub out: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruthTableFile {
    pub inputs: usize,
    pub output_qubits: usize,
    pub rows: Vec<TruthTableRow>,
}

impl From<&TruthTable> for TruthTableFile {
    fn from(t: &TruthTable) -> Self {
        Self {
            inputs: t.input_count(),
            output_qubits: t.output_qubits(),
            rows: (0..t.outputs().len())
                .map(|x| TruthTableRow {
                    input: t.input_label(x),
                    out: t.output_label(x),
                })
                .collect(),
        }
    }
}

impl TryFrom<TruthTableFile> for TruthTable {
    type Error = Error;

    fn try_from(doc: TruthTableFile) -> Result<Self> {
        let k = doc.inputs;
        let n = doc.output_qubits;
        if k == 0 || k > MAX_INPUTS {
            return Err(Error::Validation {
                row: None,
                message: format!("\"inputs\" must be in 1..={MAX_INPUTS}, got {k}"),
            });
        }
        if n == 0 || n > MAX_OUTPUT_QUBITS {
            return Err(Error::Validation {
                row: None,
                message: format!("\"output_qubits\" must be in 1..={MAX_OUTPUT_QUBITS}, got {n}"),
            });
        }

        let mut outputs: Vec<Option<usize>> = vec![None; 1 << k];
        for (i, row) in doc.rows.iter().enumerate() {
            let input = parse_field(i, "in", &row.input, k)?;
            let out = parse_field(i, "out", &row.out, n)?;
            if outputs[input].replace(out).is_some() {
                return Err(Error::Validation {
                    row: Some(i),
                    message: format!("duplicate input \"{}\"", row.input),
                });
            }
        }

        let missing: Vec<String> = outputs
            .iter()
            .enumerate()
            .filter(|(_, o)| o.is_none())
            .map(|(x, _)| format!("\"{}\"", bit_label(x, k)))
            .collect();
        if !missing.is_empty() {
            return Err(Error::Validation {
                row: None,
                message: format!("missing row(s) for input {}", missing.join(", ")),
            });
        }
        TruthTable::new(k, n, outputs.into_iter().map(Option::unwrap).collect())
    }
}

fn parse_field(row: usize, field: &str, label: &str, width: usize) -> Result<usize> {
    let value = parse_bit_label(label).ok_or_else(|| Error::Parse {
        row: Some(row),
        message: format!("\"{field}\" value \"{label}\" contains a non-bit character"),
    })?;
    if label.len() != width {
        return Err(Error::Validation {
            row: Some(row),
            message: format!(
                "\"{field}\" value \"{label}\" has {} bits, expected {width}",
                label.len()
            ),
        });
    }
    Ok(value)
}

pub fn parse_truth_table(text: &str) -> Result<TruthTable> {
    let doc: TruthTableFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        row: None,
        message: e.to_string(),
    })?;
    doc.try_into()
}

/// Writes a truth table with one row object per line, rows in input order.
pub fn emit_truth_table(t: &TruthTable) -> String {
    let doc = TruthTableFile::from(t);
    let rows: Vec<String> = doc
        .rows
        .iter()
        .map(|r| format!("  {}", serde_json::to_string(r).expect("plain strings")))
        .collect();
    format!(
        "{{\"inputs\": {}, \"output_qubits\": {}, \"rows\": [\n{}\n]}}\n",
        doc.inputs,
        doc.output_qubits,
        rows.join(",\n")
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatrixFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(MatrixFormat::Json),
            "csv" => Ok(MatrixFormat::Csv),
            other => Err(Error::InvalidParameter(format!(
                "unknown matrix format '{other}' (expected json or csv)"
            ))),
        }
    }
}

impl fmt::Display for MatrixFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixFormat::Json => "json",
            MatrixFormat::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDocument {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub dim: usize,
    pub entries: Vec<Vec<EntryDocument>>,
}

impl From<&ComplexMatrix> for MatrixDocument {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.dim(),
            entries: m
                .rows()
                .map(|row| {
                    row.iter()
                        .map(|z| EntryDocument { re: z.re, im: z.im })
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<MatrixDocument> for ComplexMatrix {
    type Error = Error;

    fn try_from(doc: MatrixDocument) -> Result<Self> {
        if doc.entries.len() != doc.dim {
            return Err(Error::Dimension {
                expected: doc.dim,
                found: doc.entries.len(),
            });
        }
        ComplexMatrix::from_rows(
            doc.entries
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|e| ComplexScalar::new(e.re, e.im))
                        .collect()
                })
                .collect(),
        )
    }
}

fn csv_cell(z: &ComplexScalar) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

pub fn emit_matrix(m: &ComplexMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Json => {
            let mut out = serde_json::to_string(&MatrixDocument::from(m)).expect("finite entries");
            out.push('\n');
            out
        }
        MatrixFormat::Csv => m
            .rows()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(csv_cell).collect();
                cells.join(",") + "\n"
            })
            .collect(),
    }
}

pub fn parse_matrix_json(text: &str) -> Result<ComplexMatrix> {
    let doc: MatrixDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        row: None,
        message: e.to_string(),
    })?;
    doc.try_into()
}

fn parse_csv_cell(row: usize, cell: &str) -> Result<ComplexScalar> {
    let bad = || Error::Parse {
        row: Some(row),
        message: format!("cell \"{cell}\" is not of the form a+bi"),
    };
    let body = cell.trim().strip_suffix('i').ok_or_else(bad)?;
    // the imaginary sign is the last '+'/'-' not following an exponent marker
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, ch)| {
            (ch == '+' || ch == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E')
        })
        .map(|(i, _)| i)
        .last()
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im: f64 = body[split..].parse().map_err(|_| bad())?;
    Ok(ComplexScalar::new(re, im))
}

pub fn parse_matrix_csv(text: &str) -> Result<ComplexMatrix> {
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(r, line)| {
            line.split(',')
                .map(|cell| parse_csv_cell(r, cell))
                .collect()
        })
        .collect::<Result<Vec<Vec<_>>>>()?;
    ComplexMatrix::from_rows(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "QHC")]
    Qhc,
    ToffoliCnotHalf,
    ToffoliCnotFull,
    FredkinFull,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub scheme: Scheme,
    pub qubits: usize,
    pub hilbert_dim: usize,
    pub gate_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

impl ResourceReport {
    fn new(scheme: Scheme, qubits: usize, gate_count: usize, citation: Option<&str>) -> Self {
        Self {
            scheme,
            qubits,
            hilbert_dim: 1 << qubits,
            gate_count,
            citation: citation.map(str::to_owned),
        }
    }
}

const VEDRAL: &str = "Vedral, Barenco, Ekert, Phys. Rev. A 54, 147 (1996)";
const MOUTINHO: &str = "Moutinho et al., PRX Energy 2, 033002 (2023)";

/// QHC resource row plus the conventional baselines when the table is one of
/// the built-in adders.
pub fn resource_report(t: &TruthTable) -> Vec<ResourceReport> {
    // a single QHC gate evaluates the whole table
    let mut out = vec![ResourceReport::new(Scheme::Qhc, qubit_count(t), 1, None)];
    if *t == half_adder_table() {
        // Toffoli + CNOT
        out.push(ResourceReport::new(
            Scheme::ToffoliCnotHalf,
            3,
            2,
            Some(VEDRAL),
        ));
    } else if *t == full_adder_table() {
        // two Toffoli + two CNOT
        out.push(ResourceReport::new(
            Scheme::ToffoliCnotFull,
            4,
            4,
            Some(VEDRAL),
        ));
        out.push(ResourceReport::new(
            Scheme::FredkinFull,
            5,
            5,
            Some(MOUTINHO),
        ));
    }
    out
}
