//! Independent oracles shared by the integration suites.

#![allow(dead_code)]

use itertools::Itertools;
use qhc::synth::TruthTable;

/// Every symmetric table with `k` inputs and `n` output qubits, as
/// `(weight_outputs, table)`.
pub fn symmetric_tables(k: usize, n: usize) -> Vec<(Vec<usize>, TruthTable)> {
    (0..k + 1)
        .map(|_| 0..1usize << n)
        .multi_cartesian_product()
        .map(|wo| {
            let table = TruthTable::from_fn(k, n, |x| wo[x.count_ones() as usize]).unwrap();
            (wo, table)
        })
        .collect()
}

/// All permutations `P` of `0..2^n` (as image lists) with
/// `P^w(0) = weight_outputs[w]` for every weight `w`.
pub fn brute_force_permutations(weight_outputs: &[usize], n: usize) -> Vec<Vec<usize>> {
    let dim = 1usize << n;
    (0..dim)
        .permutations(dim)
        .filter(|images| {
            let mut state = 0usize;
            weight_outputs.iter().all(|&want| {
                let ok = state == want;
                state = images[state];
                ok
            })
        })
        .collect()
}

/// Smallest `n` with `2^n >= distinct`, by counting.
pub fn min_qubits(distinct: usize) -> usize {
    let mut n = 0;
    while (1usize << n) < distinct {
        n += 1;
    }
    n
}

/// Boolean input vector for the big-endian input index `x`.
pub fn bits(x: usize, k: usize) -> Vec<f64> {
    (0..k).rev().map(|b| ((x >> b) & 1) as f64).collect()
}
