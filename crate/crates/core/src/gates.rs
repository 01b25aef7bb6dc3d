//! Closed-form two-qubit adder unitaries and the explicit four-cycle
//! construction they are checked against.
//!
//! Both gates depend on their Boolean inputs only through the sum `s` of the
//! inputs. The half-adder acts as a three-cycle `|00> -> |01> -> |11>` with
//! `|10>` left untouched; the full-adder is the four-cycle
//! `|00> -> |01> -> |10> -> |11>`. In each case the closed form equals
//! `exp(-i s H)` with `H = i log R` on the principal branch.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cycle_spectrum, exp_from_spectrum, ComplexMatrix, SpectralDecomposition};

/// `A`, `B`, `F` entries of the half-adder unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfAdderCoefficients {
    pub a: f64,
    pub b: f64,
    pub f: f64,
}

impl HalfAdderCoefficients {
    pub fn from_sum(sum: f64) -> Self {
        let theta = 2.0 * PI * sum / 3.0;
        Self {
            a: (2.0 * theta.cos() + 1.0) / 3.0,
            b: (1.0 - theta.cos()) / 3.0,
            f: theta.sin() / 3f64.sqrt(),
        }
    }
}

/// `l`, `m`, `n`, `p`, `q` entries of the full-adder unitary.
///
/// `l` and `p + i q` are the same number `e^{i pi s}`; both are kept because
/// the matrix is written in terms of both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullAdderCoefficients {
    pub l: Complex64,
    pub m: f64,
    pub n: f64,
    pub p: f64,
    pub q: f64,
}

impl FullAdderCoefficients {
    pub fn from_sum(sum: f64) -> Self {
        let half = PI * sum / 2.0;
        let full = PI * sum;
        Self {
            l: Complex64::from_polar(1.0, full),
            m: half.cos(),
            n: half.sin(),
            p: full.cos(),
            q: full.sin(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateLabel {
    HalfAdder,
    FullAdder,
}

impl GateLabel {
    pub const ALL: [GateLabel; 2] = [GateLabel::HalfAdder, GateLabel::FullAdder];

    pub fn input_count(self) -> usize {
        match self {
            GateLabel::HalfAdder => 2,
            GateLabel::FullAdder => 3,
        }
    }

    /// Basis indices visited from `|00>` as the input sum increases.
    pub fn orbit(self) -> &'static [usize] {
        match self {
            GateLabel::HalfAdder => &[0, 1, 3],
            GateLabel::FullAdder => &[0, 1, 2, 3],
        }
    }

    pub fn cycle_length(self) -> usize {
        self.orbit().len()
    }

    /// Closed-form matrix as a function of the input sum.
    pub fn closed_form_at_sum(self, sum: f64) -> Result<ComplexMatrix> {
        check_finite(&[sum])?;
        Ok(match self {
            GateLabel::HalfAdder => half_adder_at_sum(sum),
            GateLabel::FullAdder => full_adder_at_sum(sum),
        })
    }

    /// Closed-form matrix for a full input vector (length must match
    /// [`Self::input_count`]).
    pub fn closed_form(self, inputs: &[f64]) -> Result<ComplexMatrix> {
        if inputs.len() != self.input_count() {
            return Err(Error::InvalidParameter(format!(
                "{self} takes {} inputs, got {}",
                self.input_count(),
                inputs.len()
            )));
        }
        check_finite(inputs)?;
        self.closed_form_at_sum(inputs.iter().sum())
    }
}

impl fmt::Display for GateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateLabel::HalfAdder => "half-adder",
            GateLabel::FullAdder => "full-adder",
        })
    }
}

impl FromStr for GateLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half-adder" => Ok(GateLabel::HalfAdder),
            "full-adder" => Ok(GateLabel::FullAdder),
            other => Err(Error::InvalidParameter(format!("unknown gate '{other}'"))),
        }
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(Error::InvalidParameter(format!(
            "input must be finite, got {v}"
        ))),
        None => Ok(()),
    }
}

fn half_adder_at_sum(sum: f64) -> ComplexMatrix {
    let HalfAdderCoefficients { a, b, f } = HalfAdderCoefficients::from_sum(sum);
    let (plus, minus) = (b + f, b - f);
    ComplexMatrix::from_real_rows(&[
        &[a, minus, 0.0, plus],
        &[plus, a, 0.0, minus],
        &[0.0, 0.0, 1.0, 0.0],
        &[minus, plus, 0.0, a],
    ])
    .expect("finite 4x4")
}

fn full_adder_at_sum(sum: f64) -> ComplexMatrix {
    let FullAdderCoefficients { l, m, n, p, q } = FullAdderCoefficients::from_sum(sum);
    let one = Complex64::new(1.0, 0.0);
    let pq = Complex64::new(p, q);
    let diag = l + 2.0 * m + one;
    let below = Complex64::new(2.0 * n, 0.0) - pq + one;
    let across = l - 2.0 * m + one;
    let above = Complex64::new(-2.0 * n, 0.0) - pq + one;
    ComplexMatrix::from_rows(vec![
        vec![diag, above, across, below],
        vec![below, diag, above, across],
        vec![across, below, diag, above],
        vec![above, across, below, diag],
    ])
    .expect("finite 4x4")
    .scale(Complex64::new(0.25, 0.0))
}

/// Two-qubit half-adder unitary `U(alpha, beta)`.
pub fn half_adder_closed_form(alpha: f64, beta: f64) -> Result<ComplexMatrix> {
    GateLabel::HalfAdder.closed_form(&[alpha, beta])
}

/// Two-qubit full-adder unitary `U(alpha, gamma, beta)`, including the 1/4 factor.
pub fn full_adder_closed_form(alpha: f64, gamma: f64, beta: f64) -> Result<ComplexMatrix> {
    GateLabel::FullAdder.closed_form(&[alpha, gamma, beta])
}

/// The four-cycle `R = |01><00| + |10><01| + |11><10| + |00><11|`.
pub fn appendix_r() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[0.0, 0.0, 0.0, 1.0],
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
    .expect("4x4 permutation")
}

pub fn appendix_spectrum() -> SpectralDecomposition {
    cycle_spectrum(GateLabel::FullAdder.orbit(), 4).expect("valid orbit")
}

/// `H = i log R` on the principal branch.
pub fn appendix_h() -> ComplexMatrix {
    appendix_spectrum().generator()
}

/// Maximum entrywise gap between the closed form and `exp(-i s H)` built from
/// the gate's cycle spectrum, over `grid_points` uniform sums in `[0, L]`.
pub fn cross_validate(kind: GateLabel, grid_points: usize) -> Result<f64> {
    if grid_points < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid needs at least 2 points, got {grid_points}"
        )));
    }
    let spectrum = cycle_spectrum(kind.orbit(), 4)?;
    let span = kind.cycle_length() as f64;
    let mut worst: f64 = 0.0;
    for i in 0..grid_points {
        let s = span * i as f64 / (grid_points - 1) as f64;
        let closed = kind.closed_form_at_sum(s)?;
        let spectral = exp_from_spectrum(&spectrum, s)?;
        worst = worst.max(closed.max_abs_diff(&spectral)?);
    }
    Ok(worst)
}
