//! Exact state-vector simulator, the small-scale oracle engine.
//!
//! Amplitudes are indexed with qubit 0 as the least-significant bit. The
//! practical size cap is [`MAX_DENSE_QUBITS`]; anything larger belongs in the
//! tableau engine.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::pauli::{PauliString, Sign};

/// Hard cap on state-vector width (2^22 amplitudes, 64 MiB).
pub const MAX_DENSE_QUBITS: usize = 22;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Error, PartialEq)]
pub enum DenseError {
    #[error("state size mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("{0} qubits exceed the dense-engine cap of {MAX_DENSE_QUBITS}")]
    TooManyQubits(usize),
    #[error("amplitude vector has length {0}, expected {1}")]
    BadAmplitudeCount(usize, usize),
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("invalid qubit subset: {0}")]
    BadSubset(String),
    #[error("gate qubit {0} out of range for {1} qubits")]
    QubitOutOfRange(usize, usize),
}

/// Pure state of n qubits as a dense complex amplitude vector.
#[derive(Clone, Debug)]
pub struct DenseState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    /// Computational-basis product state, |+1⟩ ≡ |0⟩ per qubit.
    pub fn init_product(bits: &[Sign]) -> Result<DenseState, DenseError> {
        let n = bits.len();
        if n > MAX_DENSE_QUBITS {
            return Err(DenseError::TooManyQubits(n));
        }
        let mut index = 0usize;
        for (q, bit) in bits.iter().enumerate() {
            if bit.as_bit() {
                index |= 1 << q;
            }
        }
        let mut amps = vec![Complex64::ZERO; 1 << n];
        amps[index] = Complex64::ONE;
        Ok(DenseState { n_qubits: n, amps })
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<DenseState, DenseError> {
        if n_qubits > MAX_DENSE_QUBITS {
            return Err(DenseError::TooManyQubits(n_qubits));
        }
        if amps.len() != 1 << n_qubits {
            return Err(DenseError::BadAmplitudeCount(amps.len(), 1 << n_qubits));
        }
        let state = DenseState { n_qubits, amps };
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(DenseError::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_qubit(&self, q: usize) -> Result<(), DenseError> {
        if q >= self.n_qubits {
            Err(DenseError::QubitOutOfRange(q, self.n_qubits))
        } else {
            Ok(())
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<(), DenseError> {
        match *gate {
            Gate::H { q } => {
                self.check_qubit(q)?;
                self.map_pairs(q, |a, b| {
                    ((a + b) * FRAC_1_SQRT_2, (a - b) * FRAC_1_SQRT_2)
                });
            }
            Gate::X { q } => {
                self.check_qubit(q)?;
                self.map_pairs(q, |a, b| (b, a));
            }
            Gate::Z { q } => {
                self.check_qubit(q)?;
                self.map_pairs(q, |a, b| (a, -b));
            }
            Gate::Ry { q, theta } => {
                self.check_qubit(q)?;
                let (s, c) = (theta / 2.0).sin_cos();
                self.map_pairs(q, |a, b| (a * c - b * s, a * s + b * c));
            }
            Gate::Cnot { control, target } => {
                self.check_qubit(control)?;
                self.check_qubit(target)?;
                let (cm, tm) = (1usize << control, 1usize << target);
                for i in 0..self.amps.len() {
                    if i & cm != 0 && i & tm == 0 {
                        self.amps.swap(i, i | tm);
                    }
                }
            }
        }
        Ok(())
    }

    fn map_pairs(&mut self, q: usize, f: impl Fn(Complex64, Complex64) -> (Complex64, Complex64)) {
        let mask = 1usize << q;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let (lo, hi) = f(self.amps[i], self.amps[i | mask]);
                self.amps[i] = lo;
                self.amps[i | mask] = hi;
            }
        }
    }

    /// Applies a circuit layer by layer. Unitarity keeps the norm at 1; this
    /// is checked per layer in debug builds.
    pub fn run(&mut self, circuit: &Circuit) -> Result<(), DenseError> {
        if circuit.n_qubits() != self.n_qubits {
            return Err(DenseError::DimensionMismatch(circuit.n_qubits(), self.n_qubits));
        }
        for layer in circuit.layers() {
            for gate in layer {
                self.apply_gate(gate)?;
            }
            debug_assert!((self.norm() - 1.0).abs() < 1e-10);
        }
        Ok(())
    }

    /// Expectation value ⟨ψ|P|ψ⟩ of a signed Pauli string; real because P is
    /// Hermitian.
    pub fn expectation(&self, p: &PauliString) -> Result<f64, DenseError> {
        if p.n_qubits() != self.n_qubits {
            return Err(DenseError::DimensionMismatch(p.n_qubits(), self.n_qubits));
        }
        let mut x_flip = 0usize;
        let mut z_mask = 0usize;
        let mut y_count = 0u32;
        for q in 0..self.n_qubits {
            if p.x_bit(q) {
                x_flip |= 1 << q;
            }
            if p.z_bit(q) {
                z_mask |= 1 << q;
            }
            if p.x_bit(q) && p.z_bit(q) {
                y_count += 1;
            }
        }
        let i_pow = [
            Complex64::ONE,
            Complex64::I,
            -Complex64::ONE,
            -Complex64::I,
        ][(y_count % 4) as usize];
        let mut acc = Complex64::ZERO;
        for b in 0..self.amps.len() {
            let parity = ((b & z_mask).count_ones() & 1) as i32;
            let sign = if parity == 0 { 1.0 } else { -1.0 };
            acc += self.amps[b ^ x_flip].conj() * self.amps[b] * sign;
        }
        let value = acc * i_pow * p.sign().as_f64();
        debug_assert!(value.im.abs() < 1e-9);
        Ok(value.re)
    }

    pub fn overlap(&self, other: &DenseState) -> Result<Complex64, DenseError> {
        if other.n_qubits != self.n_qubits {
            return Err(DenseError::DimensionMismatch(other.n_qubits, self.n_qubits));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Global-phase-insensitive fidelity |⟨a|b⟩|.
    pub fn fidelity(&self, other: &DenseState) -> Result<f64, DenseError> {
        Ok(self.overlap(other)?.norm())
    }

    fn validate_subset(&self, subset: &[usize]) -> Result<Vec<usize>, DenseError> {
        if subset.is_empty() {
            return Err(DenseError::BadSubset("subset is empty".into()));
        }
        if subset.len() >= self.n_qubits {
            return Err(DenseError::BadSubset("subset must be proper".into()));
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != subset.len() {
            return Err(DenseError::BadSubset("subset has duplicates".into()));
        }
        if *sorted.last().unwrap() >= self.n_qubits {
            return Err(DenseError::BadSubset("subset index out of range".into()));
        }
        Ok(sorted)
    }

    /// Von Neumann entropy (nats) of the reduced state on `subset`.
    ///
    /// The state is reshaped across the cut and the entropy read off the
    /// singular values; for a pure state the result equals the entropy of
    /// the complement, so the smaller side is used internally.
    pub fn entropy(&self, subset: &[usize]) -> Result<f64, DenseError> {
        let sorted = self.validate_subset(subset)?;
        let complement: Vec<usize> = (0..self.n_qubits).filter(|q| !sorted.contains(q)).collect();
        let (rows, cols) = if sorted.len() <= complement.len() {
            (sorted, complement)
        } else {
            (complement, sorted)
        };
        let r = rows.len();
        let c = cols.len();
        let mut matrix = DMatrix::<Complex64>::zeros(1 << r, 1 << c);
        for (index, amp) in self.amps.iter().enumerate() {
            let mut row = 0usize;
            for (pos, &q) in rows.iter().enumerate() {
                row |= ((index >> q) & 1) << pos;
            }
            let mut col = 0usize;
            for (pos, &q) in cols.iter().enumerate() {
                col |= ((index >> q) & 1) << pos;
            }
            matrix[(row, col)] = *amp;
        }
        let singular = matrix.singular_values();
        let mut entropy = 0.0;
        for s in singular.iter() {
            let p = s * s;
            if p > 1e-14 {
                entropy -= p * p.ln();
            }
        }
        Ok(entropy)
    }
}

/// Prepares the input product state and runs the circuit over it.
pub fn run_circuit(circuit: &Circuit, input: &[Sign]) -> Result<DenseState, DenseError> {
    let mut state = DenseState::init_product(input)?;
    state.run(circuit)?;
    Ok(state)
}
