//! Dense complex matrices sized for a handful of qubits, and the exact
//! spectral decomposition of cycle permutations.
//!
//! A permutation that shifts an orbit `o_0 -> o_1 -> ... -> o_{L-1} -> o_0`
//! and fixes every other basis index is diagonalized by discrete-Fourier
//! vectors supported on the orbit. Its eigenvalues are the `L`-th roots of
//! unity, whose principal angles lie in `(-pi, pi]`. No iterative eigensolver
//! is involved, so the decomposition is exact up to the rounding of `cos` and
//! `sin`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Largest supported Hilbert-space dimension (six qubits).
pub const MAX_DIM: usize = 64;

/// Tolerance for algebraic identities such as `R^4 = I` or `H = H^dagger`.
pub const ALGEBRAIC_TOLERANCE: f64 = 1e-12;

/// Tolerance for comparing two independently evaluated forms of one matrix.
pub const CROSS_FORM_TOLERANCE: f64 = 1e-9;

const ZERO: ComplexScalar = Complex64::new(0.0, 0.0);
const ONE: ComplexScalar = Complex64::new(1.0, 0.0);

/// Square complex matrix stored row-major. Immutable once built.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<ComplexScalar>,
}

impl ComplexMatrix {
    /// Builds a `dim x dim` matrix from row-major entries.
    pub fn new(dim: usize, entries: Vec<ComplexScalar>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidParameter(format!(
                "matrix dimension must be in 1..={MAX_DIM}, got {dim}"
            )));
        }
        if entries.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite entry at ({}, {})",
                pos / dim,
                pos % dim
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<ComplexScalar>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = ONE;
        }
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{images[j]}`.
    pub fn permutation(images: &[usize]) -> Result<Self> {
        let dim = images.len();
        let mut seen = vec![false; dim];
        for &i in images {
            if i >= dim || seen[i] {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a permutation of 0..{dim}"
                )));
            }
            seen[i] = true;
        }
        let mut entries = vec![ZERO; dim * dim];
        for (col, &row) in images.iter().enumerate() {
            entries[row * dim + col] = ONE;
        }
        Self::new(dim, entries)
    }

    /// Trusted constructor for values computed from finite inputs.
    pub(crate) fn from_fn(dim: usize, f: impl Fn(usize, usize) -> ComplexScalar) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        debug_assert!(entries.iter().all(|z| z.is_finite()));
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> ComplexScalar {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[ComplexScalar] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn column(&self, col: usize) -> Vec<ComplexScalar> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ComplexScalar]> {
        self.entries.chunks(self.dim)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let n = self.dim;
        Ok(Self::from_fn(n, |r, c| {
            (0..n).map(|k| self.get(r, k) * other.get(k, c)).sum()
        }))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, factor: ComplexScalar) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self^k` by repeated multiplication; `k = 0` gives the identity.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = acc.matmul(self).expect("same dimension");
        }
        acc
    }

    pub fn mul_vec(&self, v: &[ComplexScalar]) -> Result<Vec<ComplexScalar>> {
        self.check_dim(v.len())?;
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other.dim)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Max-entry norm of `A^dagger A - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.adjoint().matmul(self).expect("same dimension");
        gram.max_abs_diff(&Self::identity(self.dim))
            .expect("same dimension")
    }

    /// Max-entry norm of `A - A^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint()).expect("same dimension")
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dim,
                found,
            })
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  {}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

pub fn unitarity_defect(a: &ComplexMatrix) -> f64 {
    a.unitarity_defect()
}

/// Eigen-decomposition of a unitary with unimodular eigenvalues `e^{i phi_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    dim: usize,
    eigenangles: Vec<f64>,
    eigenvectors: Vec<Vec<ComplexScalar>>,
    fixed_subspace_indices: Vec<usize>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Principal eigenangles in `(-pi, pi]`, paired with [`Self::eigenvectors`].
    pub fn eigenangles(&self) -> &[f64] {
        &self.eigenangles
    }

    pub fn eigenvectors(&self) -> &[Vec<ComplexScalar>] {
        &self.eigenvectors
    }

    /// Basis indices whose standard basis vector is an eigenvector with angle 0.
    pub fn fixed_subspace_indices(&self) -> &[usize] {
        &self.fixed_subspace_indices
    }

    /// Max over `(i, j)` of `|<v_i, v_j> - delta_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, vi) in self.eigenvectors.iter().enumerate() {
            for (j, vj) in self.eigenvectors.iter().enumerate() {
                let inner: ComplexScalar = vi.iter().zip(vj).map(|(a, b)| a.conj() * b).sum();
                let delta = if i == j { ONE } else { ZERO };
                worst = worst.max((inner - delta).norm());
            }
        }
        worst
    }

    /// `sum_j w_j v_j v_j^dagger` for per-eigenvector weights `w_j`.
    fn weighted_sum(&self, weights: &[ComplexScalar]) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |r, c| {
            self.eigenvectors
                .iter()
                .zip(weights)
                .map(|(v, w)| w * v[r] * v[c].conj())
                .sum()
        })
    }

    /// Rebuilds the decomposed unitary `sum_j e^{i phi_j} v_j v_j^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let weights: Vec<_> = self
            .eigenangles
            .iter()
            .map(|&phi| Complex64::from_polar(1.0, phi))
            .collect();
        self.weighted_sum(&weights)
    }

    /// Hermitian generator `H = i log U = sum_j (-phi_j) v_j v_j^dagger`,
    /// so that `U = exp(-i H)` on the principal branch.
    pub fn generator(&self) -> ComplexMatrix {
        let weights: Vec<_> = self
            .eigenangles
            .iter()
            .map(|&phi| Complex64::new(-phi, 0.0))
            .collect();
        self.weighted_sum(&weights)
    }
}

/// Principal angle of `e^{2 pi i m / len}` in `(-pi, pi]`.
fn principal_angle(m: usize, len: usize) -> f64 {
    let m = m % len;
    if 2 * m == len {
        PI
    } else if 2 * m < len {
        2.0 * PI * m as f64 / len as f64
    } else {
        -2.0 * PI * (len - m) as f64 / len as f64
    }
}

/// `e^{2 pi i m / len}`, exact on quarter turns.
fn root_of_unity(m: usize, len: usize) -> ComplexScalar {
    let m = m % len;
    if (4 * m).is_multiple_of(len) {
        match 4 * m / len {
            0 => ONE,
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, principal_angle(m, len))
    }
}

/// Spectral decomposition of the permutation that shifts `orbit` cyclically
/// (`orbit[k] -> orbit[k+1]`, last back to first) and fixes all other indices.
///
/// Orbit eigenvector `j` has component `w^{-jk} / sqrt(L)` on `orbit[k]`, with
/// `w = e^{2 pi i / L}` and eigenvalue `w^j`. The orbit eigenvectors come
/// first, ordered by `j`, followed by the fixed standard basis vectors in
/// ascending index order.
pub fn cycle_spectrum(orbit: &[usize], dim: usize) -> Result<SpectralDecomposition> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidOrbit(format!(
            "dimension must be in 1..={MAX_DIM}, got {dim}"
        )));
    }
    if orbit.is_empty() {
        return Err(Error::InvalidOrbit("orbit is empty".into()));
    }
    let mut on_orbit = vec![false; dim];
    for &idx in orbit {
        if idx >= dim {
            return Err(Error::InvalidOrbit(format!(
                "index {idx} out of range for dimension {dim}"
            )));
        }
        if on_orbit[idx] {
            return Err(Error::InvalidOrbit(format!("index {idx} repeated")));
        }
        on_orbit[idx] = true;
    }

    let len = orbit.len();
    let norm = 1.0 / (len as f64).sqrt();
    let mut eigenangles = Vec::with_capacity(dim);
    let mut eigenvectors = Vec::with_capacity(dim);
    for j in 0..len {
        let mut v = vec![ZERO; dim];
        for (k, &idx) in orbit.iter().enumerate() {
            v[idx] = root_of_unity(j * k, len).conj() * norm;
        }
        eigenangles.push(principal_angle(j, len));
        eigenvectors.push(v);
    }

    let mut fixed_subspace_indices: Vec<usize> = (0..dim).filter(|&i| !on_orbit[i]).collect();
    for &i in &fixed_subspace_indices {
        let mut v = vec![ZERO; dim];
        v[i] = ONE;
        eigenangles.push(0.0);
        eigenvectors.push(v);
    }
    if len == 1 {
        fixed_subspace_indices.push(orbit[0]);
        fixed_subspace_indices.sort_unstable();
    }

    Ok(SpectralDecomposition {
        dim,
        eigenangles,
        eigenvectors,
        fixed_subspace_indices,
    })
}

/// `U(s) = exp(-i s H) = sum_j e^{i s phi_j} v_j v_j^dagger`.
pub fn exp_from_spectrum(spec: &SpectralDecomposition, s: f64) -> Result<ComplexMatrix> {
    if !s.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "evolution parameter must be finite, got {s}"
        )));
    }
    let weights: Vec<_> = spec
        .eigenangles
        .iter()
        .map(|&phi| Complex64::from_polar(1.0, s * phi))
        .collect();
    Ok(spec.weighted_sum(&weights))
}
