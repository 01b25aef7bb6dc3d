//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p qhc --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fs;
use std::process::{Command, ExitCode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qhc::gates::{
    appendix_h, appendix_r, appendix_spectrum, cross_validate, full_adder_closed_form,
    half_adder_closed_form, GateLabel,
};
use qhc::io::{emit_matrix, parse_matrix_json, resource_report, MatrixFormat, Scheme};
use qhc::linalg::{cycle_spectrum, exp_from_spectrum, ComplexMatrix};
use qhc::sim::{apply, initial_state};
use qhc::synth::{
    full_adder_table, full_adder_variant_table, half_adder_table, qubit_count, synthesize, verify,
    TruthTable,
};

use common::{bits, brute_force_permutations, min_qubits, symmetric_tables};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Probability of basis index `target` after applying `u` to `|00>`.
fn target_probability(u: &ComplexMatrix, target: usize) -> Result<f64, String> {
    let out = apply(u, &initial_state(2)).map_err(err)?;
    Ok(out.probabilities()[target])
}

fn half_adder_truth_table() -> Check {
    let expected = [0b00, 0b01, 0b01, 0b11];
    let mut worst: f64 = 1.0;
    for (x, &want) in expected.iter().enumerate() {
        let b = bits(x, 2);
        let u = half_adder_closed_form(b[0], b[1]).map_err(err)?;
        let p = target_probability(&u, want)?;
        ensure(p >= 1.0 - 1e-9, || format!("input {b:?}: P(target) = {p}"))?;
        worst = worst.min(p);
    }
    Ok(format!("min target probability {worst:.15}"))
}

fn full_adder_truth_table() -> Check {
    let table = full_adder_table();
    let mut worst: f64 = 1.0;
    for x in 0..8 {
        let b = bits(x, 3);
        let u = full_adder_closed_form(b[0], b[1], b[2]).map_err(err)?;
        let p = target_probability(&u, table.output(x))?;
        ensure(p >= 1.0 - 1e-9, || format!("input {b:?}: P(target) = {p}"))?;
        worst = worst.min(p);
    }
    ensure(table.output(0b110) == 0b10, || {
        "row 110 must map to 10".into()
    })?;

    // the alternative row 110 -> 11 must be rejected
    let u = full_adder_closed_form(1.0, 1.0, 0.0).map_err(err)?;
    let p11 = target_probability(&u, 0b11)?;
    ensure(p11 < 1.0 - 1e-9, || {
        format!("110 -> 11 unexpectedly holds (P = {p11})")
    })?;
    let gate = synthesize(&table).map_err(err)?;
    let report = verify(&gate, &full_adder_variant_table(), 1e-9).map_err(err)?;
    let failing: Vec<_> = report.failing_rows().map(|r| r.input.clone()).collect();
    ensure(!report.pass && failing == ["110"], || {
        format!("variant table failures {failing:?}, expected [\"110\"]")
    })?;
    Ok(format!(
        "min target probability {worst:.15}; 110 -> 11 fails (P = {p11:.1e})"
    ))
}

fn appendix_algebra() -> Check {
    let r = appendix_r();
    let i4 = ComplexMatrix::identity(4);
    let d_pow = r.pow(4).max_abs_diff(&i4).map_err(err)?;
    let d_gram = r
        .adjoint()
        .matmul(&r)
        .map_err(err)?
        .max_abs_diff(&i4)
        .map_err(err)?;
    let h = appendix_h();
    let d_herm = h.hermiticity_defect();
    let d_exp = exp_from_spectrum(&appendix_spectrum(), 1.0)
        .map_err(err)?
        .max_abs_diff(&r)
        .map_err(err)?;
    ensure(d_pow <= 1e-12, || format!("|R^4 - I| = {d_pow}"))?;
    ensure(d_gram <= 1e-12, || format!("|R'R - I| = {d_gram}"))?;
    ensure(d_herm <= 1e-12, || format!("|H - H'| = {d_herm}"))?;
    ensure(d_exp <= 1e-12, || format!("|exp(-iH) - R| = {d_exp}"))?;
    let angles = appendix_spectrum().eigenangles().to_vec();
    ensure(angles == [0.0, PI / 2.0, PI, -PI / 2.0], || {
        format!("eigenangles {angles:?}")
    })?;
    Ok(format!(
        "R^4 {d_pow:.1e}, R'R {d_gram:.1e}, H-H' {d_herm:.1e}, exp(-iH)-R {d_exp:.1e}"
    ))
}

fn closed_form_spectral_equivalence() -> Check {
    let half = cross_validate(GateLabel::HalfAdder, 101).map_err(err)?;
    let full = cross_validate(GateLabel::FullAdder, 101).map_err(err)?;
    ensure(half <= 1e-9, || format!("half-adder gap {half}"))?;
    ensure(full <= 1e-9, || format!("full-adder gap {full}"))?;
    Ok(format!("half-adder {half:.1e}, full-adder {full:.1e}"))
}

fn synthesis_round_trip() -> Check {
    for (label, table) in [
        (GateLabel::HalfAdder, half_adder_table()),
        (GateLabel::FullAdder, full_adder_table()),
    ] {
        let gate = synthesize(&table).map_err(err)?;
        for x in 0..table.outputs().len() {
            let inputs = bits(x, label.input_count());
            let closed = label.closed_form(&inputs).map_err(err)?;
            let synth = gate.unitary_for_inputs(&inputs).map_err(err)?;
            let gap = closed.max_abs_diff(&synth).map_err(err)?;
            ensure(gap <= 1e-9, || {
                format!("{label} input {inputs:?}: gap {gap}")
            })?;
        }
    }

    let mut checked = 0;
    let mut embeddable = 0;
    for k in 1..=3 {
        for n in 1..=2 {
            for (wo, table) in symmetric_tables(k, n) {
                checked += 1;
                let valid = brute_force_permutations(&wo, n);
                match synthesize(&table) {
                    Ok(gate) => {
                        embeddable += 1;
                        let u1 = gate.unitary(1.0).map_err(err)?;
                        let matched = valid.iter().any(|images| {
                            let p = ComplexMatrix::permutation(images).unwrap();
                            u1.max_abs_diff(&p).unwrap() <= 1e-12
                        });
                        ensure(matched, || format!("{wo:?}: U(1) matches no permutation"))?;
                    }
                    Err(e) => ensure(valid.is_empty(), || {
                        format!("{wo:?}: rejected ({e}) but brute force found {valid:?}")
                    })?,
                }
            }
        }
    }
    Ok(format!(
        "adders match closed forms; oracle agrees on {checked} symmetric tables ({embeddable} embeddable)"
    ))
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_unitary: f64 = 0.0;
    for label in GateLabel::ALL {
        for _ in 0..100 {
            let inputs: Vec<f64> = (0..label.input_count())
                .map(|_| rng.gen_range(-10.0..10.0))
                .collect();
            let d = label.closed_form(&inputs).map_err(err)?.unitarity_defect();
            ensure(d <= 1e-12, || format!("{label} {inputs:?}: defect {d}"))?;
            worst_unitary = worst_unitary.max(d);
        }
    }

    let mut worst_group: f64 = 0.0;
    for label in GateLabel::ALL {
        let spec = cycle_spectrum(label.orbit(), 4).map_err(err)?;
        for _ in 0..50 {
            let s1: f64 = rng.gen_range(-4.0..4.0);
            let s2: f64 = rng.gen_range(-4.0..4.0);
            let lhs = exp_from_spectrum(&spec, s1)
                .and_then(|a| a.matmul(&exp_from_spectrum(&spec, s2)?))
                .map_err(err)?;
            let rhs = exp_from_spectrum(&spec, s1 + s2).map_err(err)?;
            let d = lhs.max_abs_diff(&rhs).map_err(err)?;
            ensure(d <= 1e-10, || {
                format!("{label} ({s1}, {s2}): group law gap {d}")
            })?;
            worst_group = worst_group.max(d);
        }
    }

    let mut worst_sum: f64 = 0.0;
    for label in GateLabel::ALL {
        for _ in 0..20 {
            let a: Vec<f64> = (0..label.input_count())
                .map(|_| rng.gen_range(-3.0..3.0))
                .collect();
            // same sum, different split
            let shift: f64 = rng.gen_range(-1.0..1.0);
            let mut b = a.clone();
            b[0] += shift;
            b[1] -= shift;
            let d = label
                .closed_form(&a)
                .map_err(err)?
                .max_abs_diff(&label.closed_form(&b).map_err(err)?)
                .map_err(err)?;
            ensure(d <= 1e-12, || format!("{label} {a:?} vs {b:?}: gap {d}"))?;
            worst_sum = worst_sum.max(d);
        }
    }
    Ok(format!(
        "unitarity {worst_unitary:.1e}, group law {worst_group:.1e}, sum-only {worst_sum:.1e}"
    ))
}

fn resource_reports() -> Check {
    let half = resource_report(&half_adder_table());
    ensure(
        half.len() == 2
            && half[0].scheme == Scheme::Qhc
            && half[0].qubits == 2
            && half[0].hilbert_dim == 4
            && half[1].qubits == 3,
        || format!("half-adder report {half:?}"),
    )?;
    let full = resource_report(&full_adder_table());
    ensure(
        full.len() == 3
            && full[0].qubits == 2
            && full[1].scheme == Scheme::ToffoliCnotFull
            && full[1].qubits == 4
            && full[2].scheme == Scheme::FredkinFull
            && full[2].qubits == 5
            && full[2].gate_count == 5,
        || format!("full-adder report {full:?}"),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let k = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=3);
        let outputs: Vec<usize> = (0..1 << k).map(|_| rng.gen_range(0..1 << n)).collect();
        let distinct = outputs.iter().collect::<BTreeSet<_>>().len();
        let table = TruthTable::new(k, n, outputs).map_err(err)?;
        let got = qubit_count(&table);
        ensure(got == min_qubits(distinct), || {
            format!("{distinct} distinct outputs: qubit_count {got}")
        })?;
    }
    Ok("half 2 vs 3 qubits; full 2 vs 4 and 5 qubits; 20 random tables agree".into())
}

fn cli_contract() -> Check {
    let bin = env!("CARGO_BIN_EXE_qhc");
    let out = Command::new(bin)
        .args(["verify", "--gate", "full-adder"])
        .output()
        .map_err(err)?;
    ensure(out.status.code() == Some(0), || {
        format!("verify exit {:?}", out.status.code())
    })?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(err)?;
    let dev = v["max_deviation"].as_f64().unwrap_or(f64::INFINITY);
    ensure(dev <= 1e-9, || format!("verify max deviation {dev}"))?;

    let dir = tempfile::TempDir::new().map_err(err)?;
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"inputs": 2, "output_qubits": 2, "rows": [
  {"in": "00", "out": "00"},
  {"in": "01", "out": "0x"},
  {"in": "10", "out": "01"},
  {"in": "11", "out": "11"}
]}"#,
    )
    .map_err(err)?;
    let out = Command::new(bin)
        .args(["synth", "--table", bad.to_str().unwrap()])
        .output()
        .map_err(err)?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(2), || {
        format!("malformed exit {:?}", out.status.code())
    })?;
    ensure(stderr.contains("row 1"), || {
        format!("no row diagnostic: {stderr}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for label in GateLabel::ALL {
        let m = label
            .closed_form_at_sum(rng.gen_range(-4.0..4.0))
            .map_err(err)?;
        let back = parse_matrix_json(&emit_matrix(&m, MatrixFormat::Json)).map_err(err)?;
        let exact = m
            .entries()
            .iter()
            .zip(back.entries())
            .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits());
        ensure(exact, || {
            format!("{label} matrix JSON round trip not bit-exact")
        })?;
    }
    Ok(format!("verify exit 0 (max deviation {dev:.1e}); malformed exit 2 with row diagnostic; JSON bit-exact"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 half-adder truth table", half_adder_truth_table),
        ("AC2 full-adder truth table", full_adder_truth_table),
        ("AC3 four-cycle algebra", appendix_algebra),
        (
            "AC4 closed-form/spectral equivalence",
            closed_form_spectral_equivalence,
        ),
        (
            "AC5 synthesis round-trip + brute-force oracle",
            synthesis_round_trip,
        ),
        ("AC6 property suites", property_suites),
        ("AC7 resource report", resource_reports),
        ("AC8 CLI contract", cli_contract),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
