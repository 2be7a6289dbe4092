//! Stabilizer-tableau simulator for Clifford circuits at scale.
//!
//! The state is the +1 joint eigenstate of n signed, independent, mutually
//! commuting Pauli generators. Generators (and the paired destabilizers that
//! make expectation queries cheap) are stored as bit-packed GF(2) rows, one X
//! word block and one Z word block per row; gates conjugate all rows in
//! O(rows) word operations.
//!
//! Supported gates are H, CNOT, X, Z and R_y(0); any other rotation angle is
//! outside the Clifford group and is rejected.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::gf2;
use crate::lattice::ModelSpec;
use crate::pauli::{product_phase_exponent, words_for, PauliString, Sign};

#[derive(Debug, Error, PartialEq)]
pub enum TableauError {
    #[error("state size mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("unsupported non-Clifford gate: {0}")]
    UnsupportedGate(String),
    #[error("gate qubit {0} out of range for {1} qubits")]
    QubitOutOfRange(usize, usize),
    #[error("invalid qubit subset: {0}")]
    BadSubset(String),
}

/// Stabilizer state of n qubits: n destabilizer rows followed by n
/// stabilizer rows, with one sign bit per row.
#[derive(Clone, Debug)]
pub struct Tableau {
    n: usize,
    w: usize,
    /// X bits, 2n rows by w words.
    xs: Vec<u64>,
    /// Z bits, 2n rows by w words.
    zs: Vec<u64>,
    /// Sign bits for the 2n rows; a set bit means −1.
    signs: Vec<u64>,
}

impl Tableau {
    /// Computational-basis product state: stabilizers ±Z_q, destabilizers X_q.
    pub fn init_basis(bits: &[Sign]) -> Tableau {
        let n = bits.len();
        let w = words_for(n);
        let mut t = Tableau {
            n,
            w,
            xs: vec![0; 2 * n * w],
            zs: vec![0; 2 * n * w],
            signs: vec![0; (2 * n).div_ceil(64).max(1)],
        };
        for q in 0..n {
            t.xs[q * w + (q >> 6)] |= 1 << (q & 63); // destabilizer X_q
            t.zs[(n + q) * w + (q >> 6)] |= 1 << (q & 63); // stabilizer Z_q
            if bits[q] == Sign::Minus {
                t.flip_sign(n + q);
            }
        }
        t
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    fn sign_bit(&self, row: usize) -> bool {
        self.signs[row >> 6] >> (row & 63) & 1 == 1
    }

    fn flip_sign(&mut self, row: usize) {
        self.signs[row >> 6] ^= 1 << (row & 63);
    }

    fn x_bit(&self, row: usize, q: usize) -> bool {
        self.xs[row * self.w + (q >> 6)] >> (q & 63) & 1 == 1
    }

    fn z_bit(&self, row: usize, q: usize) -> bool {
        self.zs[row * self.w + (q >> 6)] >> (q & 63) & 1 == 1
    }

    fn check_qubit(&self, q: usize) -> Result<(), TableauError> {
        if q >= self.n {
            Err(TableauError::QubitOutOfRange(q, self.n))
        } else {
            Ok(())
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<(), TableauError> {
        match *gate {
            Gate::H { q } => {
                self.check_qubit(q)?;
                let (word, bit) = (q >> 6, 1u64 << (q & 63));
                for row in 0..2 * self.n {
                    let xi = row * self.w + word;
                    let x = self.xs[xi] & bit;
                    let z = self.zs[xi] & bit;
                    if x != 0 && z != 0 {
                        self.flip_sign(row); // Y → −Y
                    }
                    self.xs[xi] = (self.xs[xi] & !bit) | z;
                    self.zs[xi] = (self.zs[xi] & !bit) | x;
                }
            }
            Gate::X { q } => {
                self.check_qubit(q)?;
                for row in 0..2 * self.n {
                    if self.z_bit(row, q) {
                        self.flip_sign(row);
                    }
                }
            }
            Gate::Z { q } => {
                self.check_qubit(q)?;
                for row in 0..2 * self.n {
                    if self.x_bit(row, q) {
                        self.flip_sign(row);
                    }
                }
            }
            Gate::Ry { q, theta } => {
                self.check_qubit(q)?;
                if theta != 0.0 {
                    return Err(TableauError::UnsupportedGate(format!("ry({theta}) q[{q}]")));
                }
            }
            Gate::Cnot { control, target } => {
                self.check_qubit(control)?;
                self.check_qubit(target)?;
                for row in 0..2 * self.n {
                    let xc = self.x_bit(row, control);
                    let zc = self.z_bit(row, control);
                    let xt = self.x_bit(row, target);
                    let zt = self.z_bit(row, target);
                    if xc && zt && (xt == zc) {
                        self.flip_sign(row);
                    }
                    if xc {
                        let i = row * self.w + (target >> 6);
                        self.xs[i] ^= 1 << (target & 63);
                    }
                    if zt {
                        let i = row * self.w + (control >> 6);
                        self.zs[i] ^= 1 << (control & 63);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn run(&mut self, circuit: &Circuit) -> Result<(), TableauError> {
        if circuit.n_qubits() != self.n {
            return Err(TableauError::DimensionMismatch(circuit.n_qubits(), self.n));
        }
        for gate in circuit.gates() {
            self.apply_gate(gate)?;
            // Full invariant sweeps are quadratic, so only small tableaus get
            // them after every gate.
            #[cfg(debug_assertions)]
            if self.n <= 24 {
                self.debug_check_invariants();
            }
        }
        Ok(())
    }

    /// Prepares the input product state and runs the circuit over it.
    pub fn run_circuit(circuit: &Circuit, input: &[Sign]) -> Result<Tableau, TableauError> {
        let mut t = Tableau::init_basis(input);
        t.run(circuit)?;
        Ok(t)
    }

    fn row_words(&self, row: usize) -> (&[u64], &[u64]) {
        (
            &self.xs[row * self.w..(row + 1) * self.w],
            &self.zs[row * self.w..(row + 1) * self.w],
        )
    }

    fn row_commutes(&self, row: usize, px: &[u64], pz: &[u64]) -> bool {
        let (rx, rz) = self.row_words(row);
        let mut acc = 0u32;
        for i in 0..self.w {
            acc ^= (rx[i] & pz[i]).count_ones() & 1;
            acc ^= (rz[i] & px[i]).count_ones() & 1;
        }
        acc == 0
    }

    /// Stabilizer generator `i` as a signed Pauli string.
    pub fn stabilizer_row(&self, i: usize) -> PauliString {
        let (x, z) = self.row_words(self.n + i);
        let sign = if self.sign_bit(self.n + i) { Sign::Minus } else { Sign::Plus };
        PauliString::from_raw(self.n, x.to_vec(), z.to_vec(), sign)
    }

    /// Deterministic expectation of a signed Pauli string: ±1 when ±P is in
    /// the stabilizer group, 0 otherwise.
    pub fn expectation(&self, p: &PauliString) -> Result<i8, TableauError> {
        if p.n_qubits() != self.n {
            return Err(TableauError::DimensionMismatch(p.n_qubits(), self.n));
        }
        let px = p.x_words();
        let pz = p.z_words();
        for i in 0..self.n {
            if !self.row_commutes(self.n + i, px, pz) {
                return Ok(0);
            }
        }
        // P commutes with the whole group, so ±P is a product of generators;
        // generator i participates iff P anticommutes with destabilizer i.
        let mut acc_x = vec![0u64; self.w];
        let mut acc_z = vec![0u64; self.w];
        let mut acc_minus = false;
        let mut phase = 0u32;
        for i in 0..self.n {
            if !self.row_commutes(i, px, pz) {
                let (rx, rz) = self.row_words(self.n + i);
                phase = (phase + product_phase_exponent(&acc_x, &acc_z, rx, rz)) % 4;
                for k in 0..self.w {
                    acc_x[k] ^= rx[k];
                    acc_z[k] ^= rz[k];
                }
                acc_minus ^= self.sign_bit(self.n + i);
            }
        }
        debug_assert_eq!(phase % 2, 0, "group product acquired an odd i-power");
        debug_assert!(acc_x == px && acc_z == pz, "decomposition must reproduce P");
        let acc_sign = if acc_minus ^ (phase == 2) { Sign::Minus } else { Sign::Plus };
        Ok(if acc_sign == p.sign() { 1 } else { -1 })
    }

    /// Bipartite entanglement entropy (nats) across the cut around `subset`:
    /// (|A| − n + rank of the generators restricted to the complement)·ln 2.
    pub fn entropy(&self, subset: &[usize]) -> Result<f64, TableauError> {
        if subset.is_empty() {
            return Err(TableauError::BadSubset("subset is empty".into()));
        }
        if subset.len() >= self.n {
            return Err(TableauError::BadSubset("subset must be proper".into()));
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != subset.len() {
            return Err(TableauError::BadSubset("subset has duplicates".into()));
        }
        if *sorted.last().unwrap() >= self.n {
            return Err(TableauError::BadSubset("subset index out of range".into()));
        }
        let mut mask = vec![!0u64; self.w];
        if self.n & 63 != 0 {
            mask[self.w - 1] = (1u64 << (self.n & 63)) - 1;
        }
        for &q in &sorted {
            mask[q >> 6] &= !(1u64 << (q & 63));
        }
        let restricted = (0..self.n).map(|i| {
            let (x, z) = self.row_words(self.n + i);
            let mut row = Vec::with_capacity(2 * self.w);
            row.extend(x.iter().zip(&mask).map(|(a, m)| a & m));
            row.extend(z.iter().zip(&mask).map(|(a, m)| a & m));
            row
        });
        let rank = gf2::rank(restricted);
        Ok((sorted.len() + rank - self.n) as f64 * std::f64::consts::LN_2)
    }

    /// Batch expectation over all terms of a model.
    pub fn expectations_report(&self, model: &ModelSpec) -> Result<BTreeMap<String, i8>, TableauError> {
        let mut report = BTreeMap::new();
        for term in model.terms() {
            report.insert(term.label.clone(), self.expectation(&term.pauli)?);
        }
        Ok(report)
    }

    #[cfg(debug_assertions)]
    fn debug_check_invariants(&self) {
        // Stabilizer rows commute pairwise and stay independent; each
        // destabilizer anticommutes with its own stabilizer only.
        for i in 0..self.n {
            let (sx, sz) = {
                let (x, z) = self.row_words(self.n + i);
                (x.to_vec(), z.to_vec())
            };
            for j in 0..self.n {
                let expect_commute = i != j;
                debug_assert_eq!(
                    self.row_commutes(j, &sx, &sz),
                    expect_commute,
                    "destabilizer pairing broken at ({i},{j})"
                );
                if j > i {
                    debug_assert!(
                        self.row_commutes(self.n + j, &sx, &sz),
                        "stabilizer rows {i} and {j} anticommute"
                    );
                }
            }
        }
        let rank = gf2::rank((0..self.n).map(|i| {
            let (x, z) = self.row_words(self.n + i);
            let mut row = x.to_vec();
            row.extend_from_slice(z);
            row
        }));
        debug_assert_eq!(rank, self.n, "stabilizer rows lost independence");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;
    use crate::pauli::Axis;
    use approx::assert_abs_diff_eq;

    const LN2: f64 = std::f64::consts::LN_2;

    fn bell() -> Tableau {
        let circuit = Circuit::from_layers(
            2,
            vec![
                vec![Gate::H { q: 0 }],
                vec![Gate::Cnot { control: 0, target: 1 }],
            ],
        )
        .unwrap();
        Tableau::run_circuit(&circuit, &[Sign::Plus, Sign::Plus]).unwrap()
    }

    #[test]
    fn bell_state_stabilizers() {
        let t = bell();
        let rows: Vec<String> = (0..2).map(|i| t.stabilizer_row(i).to_string()).collect();
        assert!(rows.contains(&"X1 X2".to_string()));
        assert!(rows.contains(&"Z1 Z2".to_string()));
        assert_eq!(t.expectation(&PauliString::x_string(2, &[0, 1]).unwrap()).unwrap(), 1);
        assert_eq!(t.expectation(&PauliString::z_string(2, &[0, 1]).unwrap()).unwrap(), 1);
        assert_eq!(t.expectation(&PauliString::parse("Y1 Y2", 2).unwrap()).unwrap(), -1);
        assert_eq!(t.expectation(&PauliString::single(2, 0, Axis::Z).unwrap()).unwrap(), 0);
    }

    #[test]
    fn bell_entropy_is_ln2() {
        let t = bell();
        assert_abs_diff_eq!(t.entropy(&[0]).unwrap(), LN2, epsilon = 1e-12);
        assert_abs_diff_eq!(t.entropy(&[1]).unwrap(), LN2, epsilon = 1e-12);
    }

    #[test]
    fn basis_state_expectations() {
        let t = Tableau::init_basis(&[Sign::Minus, Sign::Plus]);
        let z1 = PauliString::single(2, 0, Axis::Z).unwrap();
        assert_eq!(t.expectation(&z1).unwrap(), -1);
        assert_eq!(t.expectation(&z1.clone().negated()).unwrap(), 1);
        assert_eq!(t.expectation(&PauliString::identity(2)).unwrap(), 1);
        assert_eq!(t.expectation(&PauliString::identity(2).negated()).unwrap(), -1);
        assert_eq!(t.expectation(&PauliString::single(2, 0, Axis::X).unwrap()).unwrap(), 0);
        assert_abs_diff_eq!(t.entropy(&[0]).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn x_and_z_gates_flip_signs() {
        let mut t = Tableau::init_basis(&[Sign::Plus]);
        t.apply_gate(&Gate::X { q: 0 }).unwrap();
        let z = PauliString::single(1, 0, Axis::Z).unwrap();
        assert_eq!(t.expectation(&z).unwrap(), -1);
        t.apply_gate(&Gate::H { q: 0 }).unwrap();
        t.apply_gate(&Gate::Z { q: 0 }).unwrap();
        let x = PauliString::single(1, 0, Axis::X).unwrap();
        assert_eq!(t.expectation(&x).unwrap(), 1);
    }

    #[test]
    fn ry_zero_is_identity_other_angles_rejected() {
        let mut t = Tableau::init_basis(&[Sign::Plus]);
        t.apply_gate(&Gate::Ry { q: 0, theta: 0.0 }).unwrap();
        let err = t.apply_gate(&Gate::Ry { q: 0, theta: 0.3 }).unwrap_err();
        assert_eq!(err, TableauError::UnsupportedGate("ry(0.3) q[0]".into()));
    }

    #[test]
    fn dimension_and_subset_errors() {
        let t = Tableau::init_basis(&[Sign::Plus, Sign::Plus]);
        let p = PauliString::identity(3);
        assert_eq!(t.expectation(&p).unwrap_err(), TableauError::DimensionMismatch(3, 2));
        assert!(matches!(t.entropy(&[]), Err(TableauError::BadSubset(_))));
        assert!(matches!(t.entropy(&[0, 1]), Err(TableauError::BadSubset(_))));
    }

    #[test]
    fn ghz_chain_crossing_word_boundary() {
        // 70 qubits forces two words per row block.
        let n = 70;
        let mut layers = vec![vec![Gate::H { q: 0 }]];
        for q in 1..n {
            layers.push(vec![Gate::Cnot { control: q - 1, target: q }]);
        }
        let circuit = Circuit::from_layers(n, layers).unwrap();
        let t = Tableau::run_circuit(&circuit, &vec![Sign::Plus; n]).unwrap();
        let all_x = PauliString::x_string(n, &(0..n).collect::<Vec<_>>()).unwrap();
        assert_eq!(t.expectation(&all_x).unwrap(), 1);
        let zz = PauliString::z_string(n, &[0, 69]).unwrap();
        assert_eq!(t.expectation(&zz).unwrap(), 1);
        assert_eq!(t.expectation(&PauliString::z_string(n, &[0]).unwrap()).unwrap(), 0);
        assert_abs_diff_eq!(t.entropy(&(0..35).collect::<Vec<_>>()).unwrap(), LN2, epsilon = 1e-12);
    }
}
