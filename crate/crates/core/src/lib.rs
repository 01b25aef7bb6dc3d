//! Quantum Hamiltonian Computing (QHC) gate synthesis.
//!
//! A QHC gate encodes classical Boolean inputs as the evolution parameter of a
//! single unitary `U(s) = exp(-i s H)` acting on the all-zeros register. For
//! truth tables whose output depends only on the Hamming weight of the input,
//! `H` is the Hermitian generator `i log P` of a cyclic permutation `P` that
//! walks the output labels, so the whole table is evaluated by one gate on
//! `ceil(log2 O)` qubits where `O` is the number of distinct outputs.
//!
//! Modules:
//!
//! - [`linalg`]: small dense complex matrices and exact spectra of cycle permutations.
//! - [`gates`]: closed-form two-qubit half-adder and full-adder unitaries.
//! - [`synth`]: truth tables, symmetry analysis, cycle search, synthesis and verification.
//! - [`sim`]: statevectors, basis decoding and continuous-input evaluation.
//! - [`io`]: truth-table documents, matrix emission and resource reports.

pub mod error;
pub mod gates;
pub mod io;
pub mod linalg;
pub mod sim;
pub mod synth;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexScalar, SpectralDecomposition};
