//! Cross-oracle agreement: circuit-built states against the analytic state
//! constructions, and the dense engine against the tableau engine.

use stabprep::dense::{run_circuit, DenseState};
use stabprep::lattice::*;
use stabprep::pauli::{Axis, PauliString, Sign};
use stabprep::synth::*;
use stabprep::tableau::Tableau;
use stabprep::verify::*;

const LN2: f64 = std::f64::consts::LN_2;

fn uniform() -> CouplingSpec {
    CouplingSpec::default()
}

/// The desk-scale instance list used across the suites.
fn clifford_instances() -> Vec<ModelSpec> {
    let mut instances = Vec::new();
    for n in 2..=6 {
        instances.push(build_trestle(n, &uniform()).unwrap());
    }
    instances.push(build_graph(3, &[(1, 2), (2, 3)], &uniform()).unwrap());
    instances.push(build_graph(4, &[(1, 2), (1, 3), (1, 4)], &uniform()).unwrap());
    instances.push(build_graph(3, &[(1, 2), (2, 3), (3, 1)], &uniform()).unwrap());
    instances.push(build_graph(4, &[(1, 2), (1, 3), (2, 4), (3, 4)], &uniform()).unwrap());
    for (n1, n2) in [(2, 2), (3, 2)] {
        instances.push(build_cylinder(n1, n2, &uniform()).unwrap());
        instances.push(build_sheet(n1, n2, &uniform()).unwrap());
    }
    instances.push(build_torus(2, 2, &uniform()).unwrap());
    instances
}

#[test]
fn trestle_circuit_matches_matrix_product_state() {
    for n in 2..=6 {
        let model = build_trestle(n, &uniform()).unwrap();
        for seed in 0..20 {
            let q = QuantumNumbers::random(&model, seed);
            let prep = trestle_circuit(&model, &q).unwrap();
            let circuit_state = run_circuit(&prep.circuit, &prep.input).unwrap();
            let oracle = mps_trestle_state(n, &q).unwrap();
            let fidelity = circuit_state.fidelity(&oracle).unwrap();
            assert!(
                fidelity >= 1.0 - TOL_FIDELITY,
                "trestle N={n} seed={seed}: fidelity {fidelity}"
            );
        }
    }
}

#[test]
fn graph_circuit_matches_tensor_amplitudes() {
    let graphs: [(usize, &[(usize, usize)]); 4] = [
        (3, &[(1, 2), (2, 3)]),
        (4, &[(1, 2), (1, 3), (1, 4)]),
        (3, &[(1, 2), (2, 3), (3, 1)]),
        (4, &[(1, 2), (1, 3), (2, 4), (3, 4)]),
    ];
    for (nodes, bonds) in graphs {
        let model = build_graph(nodes, bonds, &uniform()).unwrap();
        for seed in 0..20 {
            let q = QuantumNumbers::random(&model, seed);
            let prep = graph_circuit(&model, &q).unwrap();
            let circuit_state = run_circuit(&prep.circuit, &prep.input).unwrap();
            let oracle = graph_state_amplitudes(&model, &q).unwrap();
            let fidelity = circuit_state.fidelity(&oracle).unwrap();
            assert!(
                fidelity >= 1.0 - TOL_FIDELITY,
                "graph {nodes} nodes seed={seed}: fidelity {fidelity}"
            );
        }
    }
}

fn pauli_probe_set(n: usize, seed: u64) -> Vec<PauliString> {
    let mut probes = Vec::new();
    for q in 0..n {
        for axis in Axis::ALL {
            probes.push(PauliString::single(n, q, axis).unwrap());
        }
    }
    for q1 in 0..n {
        for q2 in q1 + 1..n {
            for a1 in Axis::ALL {
                for a2 in Axis::ALL {
                    let p = PauliString::single(n, q1, a1)
                        .unwrap()
                        .multiply(&PauliString::single(n, q2, a2).unwrap())
                        .unwrap();
                    probes.push(p);
                }
            }
        }
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..25 {
        let mut p = PauliString::identity(n);
        for q in 0..n {
            match rng.next_u64() % 4 {
                0 => {}
                1 => p = p.multiply(&PauliString::single(n, q, Axis::X).unwrap()).unwrap(),
                2 => p = p.multiply(&PauliString::single(n, q, Axis::Y).unwrap()).unwrap(),
                _ => p = p.multiply(&PauliString::single(n, q, Axis::Z).unwrap()).unwrap(),
            }
        }
        if rng.next_u64() & 1 == 1 {
            p = p.negated();
        }
        probes.push(p);
    }
    probes
}

#[test]
fn engines_agree_on_every_pauli_expectation() {
    for model in clifford_instances() {
        let n = model.n_qubits();
        assert!(n <= 12);
        for seed in 0..5 {
            let q = QuantumNumbers::random(&model, seed);
            let prep = prepare(&model, &q).unwrap();
            let dense = run_circuit(&prep.circuit, &prep.input).unwrap();
            let tableau = Tableau::run_circuit(&prep.circuit, &prep.input).unwrap();
            for probe in pauli_probe_set(n, seed) {
                let d = dense.expectation(&probe).unwrap();
                let t = tableau.expectation(&probe).unwrap() as f64;
                assert!(
                    (d - t).abs() < TOL_EIGEN,
                    "{} seed={seed} probe {probe}: dense {d} vs tableau {t}",
                    model.geometry().name()
                );
            }
        }
    }
}

#[test]
fn engines_agree_on_entropy() {
    let mut rng = SplitMix64::new(99);
    for model in clifford_instances() {
        let n = model.n_qubits();
        let q = QuantumNumbers::random(&model, 17);
        let prep = prepare(&model, &q).unwrap();
        let dense = run_circuit(&prep.circuit, &prep.input).unwrap();
        let tableau = Tableau::run_circuit(&prep.circuit, &prep.input).unwrap();
        // A handful of random proper subsets per instance.
        for _ in 0..8 {
            let size = 1 + (rng.next_u64() as usize) % (n - 1);
            let mut subset: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = (rng.next_u64() as usize) % (i + 1);
                subset.swap(i, j);
            }
            subset.truncate(size);
            let sd = dense.entropy(&subset).unwrap();
            let st = tableau.entropy(&subset).unwrap();
            assert!(
                (sd - st).abs() < TOL_ENTROPY,
                "{} subset {subset:?}: dense {sd} vs tableau {st}",
                model.geometry().name()
            );
        }
    }
}

#[test]
fn trestle_entropy_law_in_both_engines() {
    for n in 2..=6 {
        let model = build_trestle(n, &uniform()).unwrap();
        let q = QuantumNumbers::random(&model, n as u64);
        let prep = trestle_circuit(&model, &q).unwrap();
        let dense = run_circuit(&prep.circuit, &prep.input).unwrap();
        let tableau = Tableau::run_circuit(&prep.circuit, &prep.input).unwrap();
        // 1-based odd qubits are 0-based even indices.
        let odd: Vec<usize> = (0..2 * n).step_by(2).collect();
        let even: Vec<usize> = (1..2 * n).step_by(2).collect();
        let expected = (n as f64 - 1.0) * LN2;
        for subset in [&odd, &even] {
            let sd = dense.entropy(subset).unwrap();
            let st = tableau.entropy(subset).unwrap();
            assert!((sd - expected).abs() < TOL_ENTROPY, "N={n}: dense {sd}");
            assert!((st - expected).abs() < TOL_ENTROPY, "N={n}: tableau {st}");
        }
        // Entropy of a subset equals that of its complement for pure states.
        let sd = dense.entropy(&odd[..1]).unwrap();
        let sc = dense.entropy(&even.iter().copied().chain(odd[1..].iter().copied()).collect::<Vec<_>>()).unwrap();
        assert!((sd - sc).abs() < TOL_ENTROPY);
    }
}

#[test]
fn trestle_reduced_states_keep_one_collective_stabilizer() {
    // Tracing the even qubits leaves (1 + ∏ x σˣ_odd)/2^N, and symmetrically
    // for the odd qubits; one more trace gives the maximally mixed state.
    for n in 2..=5 {
        let model = build_trestle(n, &uniform()).unwrap();
        let q = QuantumNumbers::random(&model, 1000 + n as u64);
        let prep = trestle_circuit(&model, &q).unwrap();
        let tableau = Tableau::run_circuit(&prep.circuit, &prep.input).unwrap();

        let n_qubits = 2 * n;
        let odd: Vec<usize> = (0..n_qubits).step_by(2).collect();
        let even: Vec<usize> = (1..n_qubits).step_by(2).collect();
        let x_product: Sign = (1..=n)
            .map(|m| q.value(&format!("X{m}")).unwrap())
            .fold(Sign::Plus, |acc, s| acc * s);
        let z_product: Sign = (1..=n)
            .map(|m| q.value(&format!("Z{m}")).unwrap())
            .fold(Sign::Plus, |acc, s| acc * s);

        let odd_x = PauliString::x_string(n_qubits, &odd).unwrap();
        let even_z = PauliString::z_string(n_qubits, &even).unwrap();
        assert_eq!(tableau.expectation(&odd_x).unwrap(), x_product.as_i8());
        assert_eq!(tableau.expectation(&even_z).unwrap(), z_product.as_i8());

        // Dropping one qubit from the odd set leaves maximal mixing.
        let reduced: Vec<usize> = odd[1..].to_vec();
        let entropy = tableau.entropy(&reduced).unwrap();
        assert!((entropy - (n as f64 - 1.0) * LN2).abs() < TOL_ENTROPY);
    }
}

#[test]
fn tableau_engine_verifies_eigenstates() {
    for model in clifford_instances() {
        for seed in 0..5 {
            let q = QuantumNumbers::random(&model, seed);
            let report = eigenstate_check(&model, &q, Engine::Tableau).unwrap();
            assert!(
                report.all_pass(),
                "{} seed={seed}: {:?}",
                model.geometry().name(),
                report.failures().collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn dense_hamiltonian_expectation_matches_formula() {
    // Random couplings on the torus, with and without the puncture.
    let mut rng = SplitMix64::new(4242);
    for trial in 0..10 {
        let mut couplings = std::collections::BTreeMap::new();
        let reference = build_torus(2, 2, &uniform()).unwrap();
        for term in reference.terms() {
            couplings.insert(term.label.clone(), 2.0 * rng.next_f64() - 1.0);
        }
        let model = build_torus(2, 2, &CouplingSpec::PerTerm(couplings)).unwrap();
        let punctured = punctured_torus(&model, (1, 1), (1, 1)).unwrap();
        for seed in 0..10 {
            let q = QuantumNumbers::random(&model, 100 * trial + seed);
            let prep = torus_circuit(&model, &q).unwrap();
            let state = run_circuit(&prep.circuit, &prep.input).unwrap();
            for spec in [&model, &punctured] {
                let mut measured = 0.0;
                for term in spec.terms() {
                    measured += term.coupling * state.expectation(&term.pauli).unwrap();
                }
                let expected = energy(spec, &q).unwrap();
                assert!(
                    (measured - expected).abs() < TOL_ENERGY,
                    "trial {trial} seed {seed}: {measured} vs {expected}"
                );
            }
        }
    }
}

#[test]
fn dense_state_norm_is_preserved() {
    let model = build_torus(2, 2, &uniform()).unwrap();
    let q = QuantumNumbers::all_plus(&model)
        .with_sector(TorusSector { theta_u: 0.9, theta_v: 1.7, ..Default::default() })
        .unwrap();
    let prep = torus_circuit(&model, &q).unwrap();
    let state = run_circuit(&prep.circuit, &prep.input).unwrap();
    assert!((state.norm() - 1.0).abs() < 1e-12);
}

#[test]
fn dense_cap_is_enforced_end_to_end() {
    let model = build_torus(4, 3, &uniform()).unwrap(); // 24 qubits
    let q = QuantumNumbers::all_plus(&model);
    let prep = torus_circuit(&model, &q).unwrap();
    assert!(matches!(
        DenseState::init_product(&prep.input),
        Err(stabprep::dense::DenseError::TooManyQubits(24))
    ));
    // The tableau engine takes over seamlessly.
    let t = Tableau::run_circuit(&prep.circuit, &prep.input).unwrap();
    assert_eq!(t.expectations_report(&model).unwrap().len(), 24);
}
