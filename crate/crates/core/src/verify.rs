//! Independent oracles and claim checkers.
//!
//! Everything here is deliberately separate from the circuit path it checks:
//! the trestle states come from a matrix-product contraction, the graph
//! states from explicit tensor amplitudes, energies from the closed formula,
//! and small Hamiltonians from full matrix builds. Claim failures are data,
//! not exceptions: each check lands in a [`VerificationReport`] record with
//! the measured value, the expected value and the tolerance used.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::dense::{DenseError, DenseState, MAX_DENSE_QUBITS};
use crate::gf2;
use crate::lattice::{Geometry, ModelSpec};
use crate::pauli::{Axis, PauliError, PauliString, Sign};
use crate::synth::{self, QuantumNumbers, SynthError, TorusSector};
use crate::tableau::{Tableau, TableauError};

/// Tolerance for eigenstate and correlation expectations in the dense engine.
pub const TOL_EIGEN: f64 = 1e-10;
/// Tolerance for energies and sums of expectations.
pub const TOL_ENERGY: f64 = 1e-9;
/// Tolerance for entropies.
pub const TOL_ENTROPY: f64 = 1e-9;
/// Cross-oracle fidelities must reach 1 − TOL_FIDELITY.
pub const TOL_FIDELITY: f64 = 1e-10;
/// Tolerance for span residuals and orthogonality overlaps.
pub const TOL_SPAN: f64 = 1e-9;

/// Size cap for the matrix-product trestle oracle (N legs → 2N qubits).
pub const MPS_MAX_N: usize = 10;
/// Size cap (total qubits) for the graph amplitude oracle.
pub const GRAPH_AMPLITUDE_MAX_QUBITS: usize = 20;
/// Size cap for full Hamiltonian matrix builds.
pub const BRUTE_FORCE_MAX_QUBITS: usize = 10;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("instance too large for this oracle: {0} qubits exceeds cap {1}")]
    SizeCap(usize, usize),
    #[error("check requires a {0} model")]
    WrongGeometry(&'static str),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Dense(#[from] DenseError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Which simulation engine runs a check.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Engine {
    Dense,
    Tableau,
}

/// One verified claim.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub pass: bool,
    pub measured: f64,
    pub expected: f64,
    pub tol: f64,
}

/// Ordered list of check records.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn push(&mut self, check: String, measured: f64, expected: f64, tol: f64) {
        let pass = (measured - expected).abs() <= tol;
        self.checks.push(CheckRecord { check, pass, measured, expected, tol });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// A state built on one of the two engines, queried uniformly.
enum PreparedState {
    Dense(DenseState),
    Tableau(Box<Tableau>),
}

impl PreparedState {
    fn build(model: &ModelSpec, qnums: &QuantumNumbers, engine: Engine) -> Result<Self, VerifyError> {
        let prep = synth::prepare(model, qnums)?;
        match engine {
            Engine::Dense => Ok(PreparedState::Dense(crate::dense::run_circuit(
                &prep.circuit,
                &prep.input,
            )?)),
            Engine::Tableau => Ok(PreparedState::Tableau(Box::new(Tableau::run_circuit(
                &prep.circuit,
                &prep.input,
            )?))),
        }
    }

    fn expectation(&self, p: &PauliString) -> Result<f64, VerifyError> {
        match self {
            PreparedState::Dense(s) => Ok(s.expectation(p)?),
            PreparedState::Tableau(t) => Ok(t.expectation(p)? as f64),
        }
    }

    /// Expectations are exact in the tableau engine.
    fn tol(&self) -> f64 {
        match self {
            PreparedState::Dense(_) => TOL_EIGEN,
            PreparedState::Tableau(_) => 0.0,
        }
    }
}

// --- analytic state oracles ----------------------------------------------

/// Trestle eigenstate from the matrix-product contraction: nonzero
/// amplitudes sit on configurations with σ_{2n} = σ_{2n−1} z_n σ_{2n+1}
/// (indices periodic) and carry sign ∏_n x_n^{(1−σ_{2n+1})/2}, all with
/// magnitude 2^{−N/2}.
pub fn mps_trestle_state(n: usize, qnums: &QuantumNumbers) -> Result<DenseState, VerifyError> {
    if n > MPS_MAX_N {
        return Err(VerifyError::SizeCap(2 * n, 2 * MPS_MAX_N));
    }
    let n_qubits = 2 * n;
    let mut z = Vec::with_capacity(n);
    let mut x = Vec::with_capacity(n);
    for m in 1..=n {
        z.push(qnums.value(&format!("Z{m}"))?.as_f64());
        x.push(qnums.value(&format!("X{m}"))?.as_f64());
    }
    let scale = 0.5f64.powf(n as f64 / 2.0);
    let mut amps = vec![Complex64::ZERO; 1 << n_qubits];
    // Enumerate the odd-qubit configuration; the even qubits follow.
    for odd_bits in 0..(1usize << n) {
        let sigma_odd = |m: usize| -> f64 {
            // 1-based odd qubit 2m+1 for m = 0..N-1 is component m.
            if odd_bits >> (m % n) & 1 == 1 {
                -1.0
            } else {
                1.0
            }
        };
        let mut index = 0usize;
        let mut amp = scale;
        for m in 1..=n {
            let left = sigma_odd(m - 1); // σ_{2m-1}
            let right = sigma_odd(m % n); // σ_{2m+1}, periodic
            let even = left * z[m - 1] * right;
            if left < 0.0 {
                index |= 1 << (2 * m - 2);
            }
            if even < 0.0 {
                index |= 1 << (2 * m - 1);
            }
            if right < 0.0 {
                amp *= x[m - 1];
            }
        }
        amps[index] += Complex64::new(amp, 0.0);
    }
    Ok(DenseState::from_amplitudes(n_qubits, amps)?)
}

/// Graph eigenstate from the explicit tensor amplitudes: bond configurations
/// {τ} are free, site spins are fixed by σ_n = z_n ∏ τ over the bonds at n,
/// and the amplitude is 2^{−N_b/2} ∏ x^{(1−τ)/2}.
pub fn graph_state_amplitudes(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
) -> Result<DenseState, VerifyError> {
    let Geometry::Graph { nodes, bonds } = model.geometry() else {
        return Err(VerifyError::WrongGeometry("graph"));
    };
    let (nodes, bonds) = (*nodes, bonds.clone());
    let n_qubits = nodes + bonds.len();
    if n_qubits > GRAPH_AMPLITUDE_MAX_QUBITS {
        return Err(VerifyError::SizeCap(n_qubits, GRAPH_AMPLITUDE_MAX_QUBITS));
    }
    let mut z = Vec::with_capacity(nodes);
    for node in 1..=nodes {
        z.push(qnums.value(&format!("Z{node}"))?.as_f64());
    }
    let mut x = Vec::with_capacity(bonds.len());
    for &(a, b) in &bonds {
        x.push(qnums.value(&format!("X({a},{b})"))?.as_f64());
    }
    let scale = 0.5f64.powf(bonds.len() as f64 / 2.0);
    let mut amps = vec![Complex64::ZERO; 1 << n_qubits];
    for tau_bits in 0..(1usize << bonds.len()) {
        let mut index = tau_bits << nodes;
        let mut amp = scale;
        for (rank, _) in bonds.iter().enumerate() {
            if tau_bits >> rank & 1 == 1 {
                amp *= x[rank];
            }
        }
        for node in 1..=nodes {
            let mut sigma = z[node - 1];
            for (rank, &(a, b)) in bonds.iter().enumerate() {
                if (a == node || b == node) && tau_bits >> rank & 1 == 1 {
                    sigma = -sigma;
                }
            }
            if sigma < 0.0 {
                index |= 1 << (node - 1);
            }
        }
        amps[index] += Complex64::new(amp, 0.0);
    }
    Ok(DenseState::from_amplitudes(n_qubits, amps)?)
}

// --- energy ---------------------------------------------------------------

/// Eigenenergy of the sector. For the torus the two reference-plaquette
/// contributions enter as accumulation terms: coupling times the product of
/// all the *other* quantum numbers of the same type.
pub fn energy(model: &ModelSpec, qnums: &QuantumNumbers) -> Result<f64, VerifyError> {
    match model.torus_reference_labels() {
        None => {
            let mut e = 0.0;
            for term in model.terms() {
                e += term.coupling * qnums.value(&term.label)?.as_f64();
            }
            Ok(e)
        }
        Some((x_ref, z_ref)) => {
            let mut e = 0.0;
            let mut x_product = 1.0;
            let mut z_product = 1.0;
            for term in model.terms() {
                let value = qnums.value(&term.label)?.as_f64();
                if term.label == x_ref || term.label == z_ref {
                    continue;
                }
                e += term.coupling * value;
                if term.label.starts_with('X') {
                    x_product *= value;
                } else {
                    z_product *= value;
                }
            }
            let x_coupling = model.term(&x_ref).expect("reference term exists").coupling;
            let z_coupling = model.term(&z_ref).expect("reference term exists").coupling;
            Ok(e + x_coupling * x_product + z_coupling * z_product)
        }
    }
}

// --- eigenstate and correlation checks -------------------------------------

/// Per-term expectation records for an externally built dense state.
pub fn term_check_dense(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
    state: &DenseState,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::default();
    for term in model.terms() {
        let measured = state.expectation(&term.pauli)?;
        let expected = qnums.value(&term.label)?.as_f64();
        report.push(format!("term {}", term.label), measured, expected, TOL_EIGEN);
    }
    Ok(report)
}

/// Builds the eigenstate on the chosen engine and asserts every term's
/// expectation against its assigned quantum number, then the energy read off
/// the term expectations against the closed formula.
pub fn eigenstate_check(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
    engine: Engine,
) -> Result<VerificationReport, VerifyError> {
    let state = PreparedState::build(model, qnums, engine)?;
    let mut report = VerificationReport::default();
    let tol = state.tol();
    let mut measured_energy = 0.0;
    for term in model.terms() {
        let measured = state.expectation(&term.pauli)?;
        let expected = qnums.value(&term.label)?.as_f64();
        measured_energy += term.coupling * measured;
        report.push(format!("term {}", term.label), measured, expected, tol);
    }
    report.push("energy".into(), measured_energy, energy(model, qnums)?, TOL_ENERGY);
    Ok(report)
}

/// Correlation structure of an eigenstate: every one- and two-point Pauli
/// expectation vanishes, term expectations equal their quantum numbers,
/// products of terms factorize, and on the trestle the total-spin squares
/// equal N/2 for each axis.
pub fn correlation_suite(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
    engine: Engine,
) -> Result<VerificationReport, VerifyError> {
    let state = PreparedState::build(model, qnums, engine)?;
    let tol = state.tol();
    let n = model.n_qubits();
    let mut report = VerificationReport::default();

    let axis_name = |a: Axis| match a {
        Axis::X => "X",
        Axis::Y => "Y",
        Axis::Z => "Z",
    };

    for q in 0..n {
        for axis in Axis::ALL {
            let p = PauliString::single(n, q, axis)?;
            let measured = state.expectation(&p)?;
            report.push(
                format!("onepoint {} q{}", axis_name(axis), q + 1),
                measured,
                0.0,
                tol,
            );
        }
    }

    let mut same_axis_pair_sums = [0.0f64; 3];
    for q1 in 0..n {
        for q2 in q1 + 1..n {
            for (i, a1) in Axis::ALL.into_iter().enumerate() {
                for a2 in Axis::ALL {
                    let mut p = PauliString::single(n, q1, a1)?;
                    p = p.multiply(&PauliString::single(n, q2, a2)?)?;
                    let measured = state.expectation(&p)?;
                    if a1 == a2 {
                        same_axis_pair_sums[i] += measured;
                    }
                    report.push(
                        format!("twopoint {}{} q{} q{}", axis_name(a1), axis_name(a2), q1 + 1, q2 + 1),
                        measured,
                        0.0,
                        tol,
                    );
                }
            }
        }
    }

    for term in model.terms() {
        let measured = state.expectation(&term.pauli)?;
        report.push(
            format!("term {}", term.label),
            measured,
            qnums.value(&term.label)?.as_f64(),
            tol,
        );
    }

    // Products of conserved terms factorize into products of their numbers.
    let terms = model.terms();
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            let product = a.pauli.multiply(&b.pauli)?;
            let measured = state.expectation(&product)?;
            let expected = (qnums.value(&a.label)? * qnums.value(&b.label)?).as_f64();
            report.push(
                format!("pairprod {} {}", a.label, b.label),
                measured,
                expected,
                tol,
            );
        }
    }

    if let Geometry::Trestle { n: legs } = model.geometry() {
        // ⟨S_α²⟩ = (2N + Σ_{l1≠l2} ⟨σᵅσᵅ⟩)/4 = N/2 when pairs vanish.
        for (i, axis) in Axis::ALL.into_iter().enumerate() {
            let measured = (n as f64 + 2.0 * same_axis_pair_sums[i]) / 4.0;
            report.push(
                format!("total-spin-sq {}", axis_name(axis)),
                measured,
                *legs as f64 / 2.0,
                TOL_ENERGY,
            );
        }
    }

    Ok(report)
}

// --- torus degeneracy and superposition structure --------------------------

/// The four logical string operators of the torus with reference lines at 1.
pub struct TorusLogicals {
    /// ∏ σᶻ over the row-1 horizontal edges; pairs with χ·u_z.
    pub z_row: PauliString,
    /// ∏ σˣ over the column-1/2 horizontal edges; pairs with χ·u_x.
    pub x_col: PauliString,
    /// ∏ σᶻ over the column-1 vertical edges; pairs with ζ·v_z.
    pub z_col: PauliString,
    /// ∏ σˣ over the row-1/2 vertical edges; pairs with ζ·v_x.
    pub x_row: PauliString,
}

pub fn torus_logicals(model: &ModelSpec) -> Result<TorusLogicals, VerifyError> {
    let lay = model
        .planar_layout()
        .filter(|_| matches!(model.geometry(), Geometry::Torus { .. }))
        .ok_or(VerifyError::WrongGeometry("torus"))?;
    let n = model.n_qubits();
    let row1: Vec<usize> = (1..=lay.n1).map(|m| lay.horizontal(m, 1)).collect();
    let colh: Vec<usize> = (1..=lay.n2).map(|k| lay.horizontal(lay.n1, k)).collect();
    let colv: Vec<usize> = (1..=lay.n2).map(|k| lay.vertical(1, k)).collect();
    let rowv: Vec<usize> = (1..=lay.n1).map(|m| lay.vertical(m, 1)).collect();
    Ok(TorusLogicals {
        z_row: PauliString::z_string(n, &row1)?,
        x_col: PauliString::x_string(n, &colh)?,
        z_col: PauliString::z_string(n, &colv)?,
        x_row: PauliString::x_string(n, &rowv)?,
    })
}

fn dense_torus_state(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
    sector: TorusSector,
) -> Result<DenseState, VerifyError> {
    let qnums = qnums.clone().with_sector(sector)?;
    let prep = synth::torus_circuit(model, &qnums)?;
    Ok(crate::dense::run_circuit(&prep.circuit, &prep.input)?)
}

fn dense_hamiltonian_expectation(model: &ModelSpec, state: &DenseState) -> Result<f64, VerifyError> {
    let mut e = 0.0;
    for term in model.terms() {
        e += term.coupling * state.expectation(&term.pauli)?;
    }
    Ok(e)
}

fn sector_name(sector: &TorusSector) -> String {
    format!("(chi={:+},zeta={:+})", sector.chi.as_i8(), sector.zeta.as_i8())
}

/// Builds the four (χ, ζ) states of a sector and asserts mutual
/// orthogonality, equal energy, unchanged term expectations, and the logical
/// string expectations selected by the quantization axes.
pub fn torus_degeneracy_check(
    model: &ModelSpec,
    base: &QuantumNumbers,
) -> Result<VerificationReport, VerifyError> {
    if model.n_qubits() > MAX_DENSE_QUBITS {
        return Err(VerifyError::SizeCap(model.n_qubits(), MAX_DENSE_QUBITS));
    }
    let base_sector = *base.sector().ok_or(VerifyError::WrongGeometry("torus"))?;
    let logicals = torus_logicals(model)?;
    let mut report = VerificationReport::default();

    let sectors: Vec<TorusSector> = [
        (Sign::Plus, Sign::Plus),
        (Sign::Plus, Sign::Minus),
        (Sign::Minus, Sign::Plus),
        (Sign::Minus, Sign::Minus),
    ]
    .into_iter()
    .map(|(chi, zeta)| TorusSector { chi, zeta, ..base_sector })
    .collect();
    let states: Vec<DenseState> = sectors
        .iter()
        .map(|&s| dense_torus_state(model, base, s))
        .collect::<Result<_, _>>()?;

    for i in 0..4 {
        for j in i + 1..4 {
            report.push(
                format!(
                    "degeneracy orthogonality {}x{}",
                    sector_name(&sectors[i]),
                    sector_name(&sectors[j])
                ),
                states[i].fidelity(&states[j])?,
                0.0,
                TOL_SPAN,
            );
        }
    }

    let reference_energy = dense_hamiltonian_expectation(model, &states[0])?;
    for (sector, state) in sectors.iter().zip(&states) {
        let e = dense_hamiltonian_expectation(model, state)?;
        report.push(
            format!("degeneracy energy {}", sector_name(sector)),
            e,
            reference_energy,
            TOL_ENERGY,
        );

        let mut worst = 0.0f64;
        for term in model.terms() {
            let deviation =
                (state.expectation(&term.pauli)? - base.value(&term.label)?.as_f64()).abs();
            worst = worst.max(deviation);
        }
        report.push(
            format!("degeneracy terms {}", sector_name(sector)),
            worst,
            0.0,
            TOL_EIGEN,
        );

        // Eq.-(14) string expectations: the χ factor pairs u_z with the
        // z-row string and u_x with the x-column string; the ζ factor pairs
        // v_z with the z-column string and v_x with the x-row string.
        let chi = sector.chi.as_f64();
        let zeta = sector.zeta.as_f64();
        let (su, cu) = sector.theta_u.sin_cos();
        let (sv, cv) = sector.theta_v.sin_cos();
        for (name, op, expected) in [
            ("z-row", &logicals.z_row, chi * cu),
            ("x-col", &logicals.x_col, chi * su),
            ("z-col", &logicals.z_col, zeta * cv),
            ("x-row", &logicals.x_row, zeta * sv),
        ] {
            report.push(
                format!("logical {} {}", name, sector_name(sector)),
                state.expectation(op)?,
                expected,
                TOL_EIGEN,
            );
        }
    }
    Ok(report)
}

/// States for varying quantization axes stay inside the span of the four
/// (χ, ζ) reference states, remain eigenstates of every non-reference
/// plaquette, and keep the sector energy.
pub fn superposition_span_check(
    model: &ModelSpec,
    base: &QuantumNumbers,
    thetas: &[(f64, f64)],
) -> Result<VerificationReport, VerifyError> {
    if model.n_qubits() > MAX_DENSE_QUBITS {
        return Err(VerifyError::SizeCap(model.n_qubits(), MAX_DENSE_QUBITS));
    }
    let base_sector = *base.sector().ok_or(VerifyError::WrongGeometry("torus"))?;
    let (x_ref, z_ref) = model.torus_reference_labels().expect("torus");
    let mut report = VerificationReport::default();

    let basis: Vec<DenseState> = [
        (Sign::Plus, Sign::Plus),
        (Sign::Plus, Sign::Minus),
        (Sign::Minus, Sign::Plus),
        (Sign::Minus, Sign::Minus),
    ]
    .into_iter()
    .map(|(chi, zeta)| {
        dense_torus_state(
            model,
            base,
            TorusSector { chi, zeta, theta_u: 0.0, theta_v: 0.0 },
        )
    })
    .collect::<Result<_, _>>()?;
    let sector_energy = dense_hamiltonian_expectation(model, &basis[0])?;

    for &(theta_u, theta_v) in thetas {
        let sector = TorusSector { theta_u, theta_v, ..base_sector };
        let state = dense_torus_state(model, base, sector)?;
        let tag = format!("({theta_u},{theta_v})");

        // Projection residual onto the orthonormal reference span.
        let mut residual: Vec<Complex64> = state.amplitudes().to_vec();
        for reference in &basis {
            let coefficient = reference.overlap(&state)?;
            for (r, b) in residual.iter_mut().zip(reference.amplitudes()) {
                *r -= coefficient * b;
            }
        }
        let residual_norm = residual.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        report.push(format!("span residual {tag}"), residual_norm, 0.0, TOL_SPAN);

        let mut worst = 0.0f64;
        for term in model.terms() {
            if term.label == x_ref || term.label == z_ref {
                continue;
            }
            let deviation =
                (state.expectation(&term.pauli)? - base.value(&term.label)?.as_f64()).abs();
            worst = worst.max(deviation);
        }
        report.push(format!("span terms {tag}"), worst, 0.0, TOL_EIGEN);

        report.push(
            format!("span energy {tag}"),
            dense_hamiltonian_expectation(model, &state)?,
            sector_energy,
            TOL_ENERGY,
        );
    }
    Ok(report)
}

// --- brute-force matrix oracles --------------------------------------------

/// Dense 2^n × 2^n matrix of a signed Pauli string (test oracle; keep n small).
pub fn pauli_matrix(p: &PauliString) -> DMatrix<Complex64> {
    let n = p.n_qubits();
    let dim = 1usize << n;
    let mut x_flip = 0usize;
    let mut y_count = 0u32;
    for q in 0..n {
        if p.x_bit(q) {
            x_flip |= 1 << q;
        }
        if p.x_bit(q) && p.z_bit(q) {
            y_count += 1;
        }
    }
    let i_pow = [Complex64::ONE, Complex64::I, -Complex64::ONE, -Complex64::I][(y_count % 4) as usize];
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for b in 0..dim {
        let mut parity = 0u32;
        for q in 0..n {
            if p.z_bit(q) && b >> q & 1 == 1 {
                parity ^= 1;
            }
        }
        let sign = if parity == 0 { 1.0 } else { -1.0 };
        m[(b ^ x_flip, b)] = i_pow * sign * p.sign().as_f64();
    }
    m
}

/// Full Hamiltonian matrix Σ coupling·term, capped at 10 qubits.
pub fn hamiltonian_matrix(model: &ModelSpec) -> Result<DMatrix<Complex64>, VerifyError> {
    let n = model.n_qubits();
    if n > BRUTE_FORCE_MAX_QUBITS {
        return Err(VerifyError::SizeCap(n, BRUTE_FORCE_MAX_QUBITS));
    }
    let dim = 1usize << n;
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for term in model.terms() {
        h += pauli_matrix(&term.pauli) * Complex64::new(term.coupling, 0.0);
    }
    Ok(h)
}

/// Sorted eigenvalues of the full Hamiltonian (real symmetric for all models
/// built here).
pub fn hamiltonian_spectrum(model: &ModelSpec) -> Result<Vec<f64>, VerifyError> {
    let h = hamiltonian_matrix(model)?;
    let dim = h.nrows();
    let mut real = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            debug_assert!(h[(i, j)].im.abs() < 1e-12);
            real[(i, j)] = h[(i, j)].re;
        }
    }
    let mut eigenvalues: Vec<f64> = real.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(eigenvalues)
}

/// GF(2) rank of the model's term set in symplectic form; the number of
/// independent quantum numbers.
pub fn independent_term_rank(model: &ModelSpec) -> usize {
    let n = model.n_qubits();
    let w = n.div_ceil(64);
    gf2::rank(model.terms().iter().map(|t| {
        let mut row = vec![0u64; 2 * w];
        for q in 0..n {
            if t.pauli.x_bit(q) {
                row[q >> 6] |= 1 << (q & 63);
            }
            if t.pauli.z_bit(q) {
                row[w + (q >> 6)] |= 1 << (q & 63);
            }
        }
        row
    }))
}
