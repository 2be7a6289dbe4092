//! Verification-operation behavior: correlation structure, degeneracy,
//! completeness at micro scale, and fault sensitivity of the reports.

use stabprep::circuit::Gate;
use stabprep::dense::run_circuit;
use stabprep::lattice::*;
use stabprep::pauli::{PauliString, Sign};
use stabprep::synth::*;
use stabprep::verify::*;

fn uniform() -> CouplingSpec {
    CouplingSpec::default()
}

#[test]
fn correlation_suite_trestle_examples() {
    let model = build_trestle(3, &uniform()).unwrap();
    let q = QuantumNumbers::random(&model, 2);
    for engine in [Engine::Dense, Engine::Tableau] {
        let report = correlation_suite(&model, &q, engine).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
        // Spot values: ⟨S_z²⟩ = 3/2 and a vanishing two-point correlator.
        let spin = report.checks.iter().find(|c| c.check == "total-spin-sq Z").unwrap();
        assert!((spin.measured - 1.5).abs() < 1e-9);
        let pair = report.checks.iter().find(|c| c.check == "twopoint ZZ q1 q2").unwrap();
        assert_eq!(pair.expected, 0.0);
        assert!(pair.pass);
    }
}

#[test]
fn correlation_suite_covers_torus_pair_products() {
    let model = build_torus(2, 2, &uniform()).unwrap();
    let q = QuantumNumbers::random(&model, 8);
    let report = correlation_suite(&model, &q, Engine::Tableau).unwrap();
    assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
    assert!(report.checks.iter().any(|c| c.check.starts_with("pairprod")));
}

#[test]
fn fault_injection_flips_exactly_the_anticommuting_terms() {
    let model = build_cylinder(2, 2, &uniform()).unwrap();
    let q = QuantumNumbers::random(&model, 21);
    let prep = cylinder_circuit(&model, &q).unwrap();
    let mut state = run_circuit(&prep.circuit, &prep.input).unwrap();

    // Corrupt the finished state with a stray X gate.
    let corrupted_qubit = 3;
    state.apply_gate(&Gate::X { q: corrupted_qubit }).unwrap();

    let report = term_check_dense(&model, &q, &state).unwrap();
    let x_probe = PauliString::x_string(model.n_qubits(), &[corrupted_qubit]).unwrap();
    for (record, term) in report.checks.iter().zip(model.terms()) {
        let anticommutes = !term.pauli.commutes(&x_probe).unwrap();
        assert_eq!(
            !record.pass,
            anticommutes,
            "term {} (support {:?})",
            term.label,
            term.pauli.support()
        );
    }
    assert!(report.failures().count() > 0);
}

#[test]
fn trestle_micro_completeness() {
    // Every assignment yields one state; together they form an orthonormal
    // basis, and the formula energies reproduce the exact spectrum.
    for n in 2..=3 {
        let model = build_trestle(n, &uniform()).unwrap();
        let labels: Vec<String> = model.term_labels().map(str::to_string).collect();
        let mut states = Vec::new();
        let mut energies = Vec::new();
        for pattern in 0..(1usize << (2 * n)) {
            let mut values = std::collections::BTreeMap::new();
            for (bit, label) in labels.iter().enumerate() {
                let sign = if pattern >> bit & 1 == 1 { Sign::Minus } else { Sign::Plus };
                values.insert(label.clone(), sign);
            }
            let q = QuantumNumbers::from_values(&model, values, None).unwrap();
            let prep = trestle_circuit(&model, &q).unwrap();
            states.push(run_circuit(&prep.circuit, &prep.input).unwrap());
            energies.push(energy(&model, &q).unwrap());
        }
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let overlap = a.overlap(b).unwrap().norm();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (overlap - expected).abs() < 1e-9,
                    "N={n}: gram[{i}][{j}] = {overlap}"
                );
            }
        }
        energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let spectrum = hamiltonian_spectrum(&model).unwrap();
        assert_eq!(energies.len(), spectrum.len());
        for (e, s) in energies.iter().zip(&spectrum) {
            assert!((e - s).abs() < 1e-9, "N={n}: {e} vs {s}");
        }
    }
}

#[test]
fn torus_sector_energies_appear_in_spectrum() {
    let model = build_torus(2, 2, &uniform()).unwrap();
    let spectrum = hamiltonian_spectrum(&model).unwrap();
    for seed in 0..20 {
        let q = QuantumNumbers::random(&model, seed);
        let e = energy(&model, &q).unwrap();
        assert!(
            spectrum.iter().any(|s| (s - e).abs() < 1e-9),
            "sector energy {e} not in spectrum"
        );
    }
}

#[test]
fn torus_degeneracy_axis_selection() {
    let model = build_torus(2, 2, &uniform()).unwrap();
    let base = QuantumNumbers::random(&model, 5);

    // theta = 0 selects the z strings, theta_u = pi/2 moves chi onto the
    // x-column string.
    let report = torus_degeneracy_check(&model, &base).unwrap();
    assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());

    let rotated = base
        .clone()
        .with_sector(TorusSector { theta_u: std::f64::consts::FRAC_PI_2, ..Default::default() })
        .unwrap();
    let report = torus_degeneracy_check(&model, &rotated).unwrap();
    assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
    let z_row = report
        .checks
        .iter()
        .find(|c| c.check == "logical z-row (chi=+1,zeta=+1)")
        .unwrap();
    assert_eq!(z_row.expected, 0.0);
    let x_col = report
        .checks
        .iter()
        .find(|c| c.check == "logical x-col (chi=+1,zeta=+1)")
        .unwrap();
    assert!((x_col.expected - 1.0).abs() < 1e-12);
}

#[test]
fn torus_span_and_theta_independence() {
    let model = build_torus(2, 2, &uniform()).unwrap();
    let base = QuantumNumbers::random(&model, 13);
    let thetas = [(0.0, 0.0), (0.7, 1.1), (1.9, 2.6), (std::f64::consts::PI, 0.3)];
    let report = superposition_span_check(&model, &base, &thetas).unwrap();
    assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn logical_strings_commute_with_all_terms() {
    let model = build_torus(3, 2, &uniform()).unwrap();
    let logicals = torus_logicals(&model).unwrap();
    for term in model.terms() {
        for op in [&logicals.z_row, &logicals.x_col, &logicals.z_col, &logicals.x_row] {
            assert!(term.pauli.commutes(op).unwrap(), "term {}", term.label);
        }
    }
    // The two strings of each missing qubit anticommute pairwise.
    assert!(!logicals.z_row.commutes(&logicals.x_col).unwrap());
    assert!(!logicals.z_col.commutes(&logicals.x_row).unwrap());
    assert!(logicals.z_row.commutes(&logicals.z_col).unwrap());
    assert!(logicals.z_row.commutes(&logicals.x_row).unwrap());
}

#[test]
fn eigenstate_check_reports_energy_consistency() {
    let model = build_sheet(3, 2, &uniform()).unwrap();
    let q = QuantumNumbers::random(&model, 77);
    let report = eigenstate_check(&model, &q, Engine::Dense).unwrap();
    assert!(report.all_pass());
    assert!(report.checks.iter().any(|c| c.check == "energy"));
    // One record per term plus the energy line.
    assert_eq!(report.checks.len(), model.terms().len() + 1);
}

#[test]
fn all_plus_uniform_negative_couplings_reach_ground_energy() {
    // With all couplings at −1, the all-plus sector sits at the bottom of
    // the spectrum.
    for model in [
        build_trestle(3, &uniform()).unwrap(),
        build_sheet(2, 2, &uniform()).unwrap(),
        build_torus(2, 2, &uniform()).unwrap(),
    ] {
        let q = QuantumNumbers::all_plus(&model);
        let e = energy(&model, &q).unwrap();
        let spectrum = hamiltonian_spectrum(&model).unwrap();
        assert!((e - spectrum[0]).abs() < 1e-9, "{}", model.geometry().name());
    }
}
