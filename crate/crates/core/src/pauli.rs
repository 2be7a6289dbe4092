//! Symplectic binary representation of signed n-qubit Pauli operators.
//!
//! A [`PauliString`] keeps one X bit and one Z bit per qubit, packed into
//! 64-bit words, plus an overall sign of ±1. The bit pair (x, z) encodes the
//! single-qubit factor I (0,0), X (1,0), Y (1,1) or Z (0,1), with Y in its
//! Hermitian form. Every operator handled by this crate is a real ±1-signed
//! product of such factors; a multiplication whose result would carry a phase
//! of ±i is rejected with [`PauliError::ImaginaryPhase`] instead of silently
//! tracking imaginary phases.
//!
//! Qubit indices are 0-based internally. The text form (`"Z1 Z2 Z3"`,
//! `"-Y2 X4"`) uses 1-based labels and is what model files and the CLI print.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

/// Errors from Pauli algebra.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("operator size mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("product carries an imaginary phase (odd power of i)")]
    ImaginaryPhase,
    #[error("qubit index {0} out of range for {1} qubits")]
    QubitOutOfRange(usize, usize),
    #[error("cannot parse pauli text {0:?}")]
    Parse(String),
}

/// A sign of ±1. Doubles as a qubit quantum number and a computational-basis
/// bit, with `Plus` ≡ |+1⟩ ≡ |0⟩ and `Minus` ≡ |−1⟩ ≡ |1⟩.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Basis bit under the |+⟩ ≡ |0⟩ convention.
    pub fn as_bit(self) -> bool {
        self == Sign::Minus
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Single-qubit Pauli axis.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

pub(crate) fn words_for(n_qubits: usize) -> usize {
    n_qubits.div_ceil(64)
}

/// Exponent of i (mod 4) picked up when multiplying the Hermitian canonical
/// forms a·b and rewriting the result in canonical form. Summed word-wise via
/// popcounts; the per-qubit contribution is
/// `x_a z_a + x_b z_b − x z + 2 z_a x_b` with `x = x_a⊕x_b`, `z = z_a⊕z_b`.
pub(crate) fn product_phase_exponent(xa: &[u64], za: &[u64], xb: &[u64], zb: &[u64]) -> u32 {
    let mut acc: i64 = 0;
    for i in 0..xa.len() {
        let (wxa, wza, wxb, wzb) = (xa[i], za[i], xb[i], zb[i]);
        acc += (wxa & wza).count_ones() as i64;
        acc += (wxb & wzb).count_ones() as i64;
        acc -= ((wxa ^ wxb) & (wza ^ wzb)).count_ones() as i64;
        acc += 2 * (wza & wxb).count_ones() as i64;
    }
    acc.rem_euclid(4) as u32
}

/// Signed n-qubit Pauli operator in symplectic (x-bits, z-bits, sign) form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    sign: Sign,
}

impl PauliString {
    /// The identity operator with sign +1.
    pub fn identity(n_qubits: usize) -> PauliString {
        let w = words_for(n_qubits);
        PauliString {
            n_qubits,
            x: vec![0; w],
            z: vec![0; w],
            sign: Sign::Plus,
        }
    }

    /// A single σ^axis factor on one qubit.
    pub fn single(n_qubits: usize, qubit: usize, axis: Axis) -> Result<PauliString, PauliError> {
        let mut p = PauliString::identity(n_qubits);
        p.set_factor(qubit, axis)?;
        Ok(p)
    }

    /// Product of σᶻ factors on the listed qubits (duplicates cancel).
    pub fn z_string(n_qubits: usize, qubits: &[usize]) -> Result<PauliString, PauliError> {
        let mut p = PauliString::identity(n_qubits);
        for &q in qubits {
            p.check_qubit(q)?;
            p.z[q >> 6] ^= 1 << (q & 63);
        }
        Ok(p)
    }

    /// Product of σˣ factors on the listed qubits (duplicates cancel).
    pub fn x_string(n_qubits: usize, qubits: &[usize]) -> Result<PauliString, PauliError> {
        let mut p = PauliString::identity(n_qubits);
        for &q in qubits {
            p.check_qubit(q)?;
            p.x[q >> 6] ^= 1 << (q & 63);
        }
        Ok(p)
    }

    pub(crate) fn from_raw(n_qubits: usize, x: Vec<u64>, z: Vec<u64>, sign: Sign) -> PauliString {
        debug_assert_eq!(x.len(), words_for(n_qubits));
        debug_assert_eq!(z.len(), words_for(n_qubits));
        PauliString { n_qubits, x, z, sign }
    }

    fn check_qubit(&self, q: usize) -> Result<(), PauliError> {
        if q >= self.n_qubits {
            Err(PauliError::QubitOutOfRange(q, self.n_qubits))
        } else {
            Ok(())
        }
    }

    fn set_factor(&mut self, qubit: usize, axis: Axis) -> Result<(), PauliError> {
        self.check_qubit(qubit)?;
        let (w, b) = (qubit >> 6, 1u64 << (qubit & 63));
        match axis {
            Axis::X => self.x[w] |= b,
            Axis::Y => {
                self.x[w] |= b;
                self.z[w] |= b;
            }
            Axis::Z => self.z[w] |= b,
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn with_sign(mut self, sign: Sign) -> PauliString {
        self.sign = sign;
        self
    }

    pub fn negated(mut self) -> PauliString {
        self.sign = self.sign.flipped();
        self
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q >> 6] >> (q & 63) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q >> 6] >> (q & 63) & 1 == 1
    }

    pub(crate) fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub(crate) fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// The factor acting on a qubit, or `None` for identity.
    pub fn axis_at(&self, q: usize) -> Option<Axis> {
        match (self.x_bit(q), self.z_bit(q)) {
            (false, false) => None,
            (true, false) => Some(Axis::X),
            (true, true) => Some(Axis::Y),
            (false, true) => Some(Axis::Z),
        }
    }

    /// True if every factor is identity, regardless of sign.
    pub fn is_identity_bits(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    /// Qubits carrying a non-identity factor, in ascending order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|&q| self.x_bit(q) || self.z_bit(q))
            .collect()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(&x, &z)| (x | z).count_ones() as usize)
            .sum()
    }

    fn check_dims(&self, other: &PauliString) -> Result<(), PauliError> {
        if self.n_qubits != other.n_qubits {
            Err(PauliError::DimensionMismatch(self.n_qubits, other.n_qubits))
        } else {
            Ok(())
        }
    }

    /// Operator product `self · other` with exact sign bookkeeping.
    ///
    /// Fails with [`PauliError::ImaginaryPhase`] when the product is not a
    /// real ±1-signed Pauli string (e.g. σᶻσˣ = iσʸ on a single qubit).
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        self.check_dims(other)?;
        let exponent = product_phase_exponent(&self.x, &self.z, &other.x, &other.z);
        let phase_sign = match exponent {
            0 => Sign::Plus,
            2 => Sign::Minus,
            _ => return Err(PauliError::ImaginaryPhase),
        };
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        Ok(PauliString {
            n_qubits: self.n_qubits,
            x,
            z,
            sign: self.sign * other.sign * phase_sign,
        })
    }

    /// True iff the symplectic inner product x_a·z_b + z_a·x_b vanishes mod 2.
    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        self.check_dims(other)?;
        let mut acc = 0u32;
        for i in 0..self.x.len() {
            acc ^= (self.x[i] & other.z[i]).count_ones() & 1;
            acc ^= (self.z[i] & other.x[i]).count_ones() & 1;
        }
        Ok(acc == 0)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            write!(f, "-")?;
        }
        if self.is_identity_bits() {
            return write!(f, "I");
        }
        let mut first = true;
        for q in 0..self.n_qubits {
            if let Some(axis) = self.axis_at(q) {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}{}", axis.letter(), q + 1)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl PauliString {
    /// Parses the text form against a fixed qubit count, e.g. `"Z1 Z2 Z3"`.
    pub fn parse(text: &str, n_qubits: usize) -> Result<PauliString, PauliError> {
        let mut rest = text.trim();
        let mut sign = Sign::Plus;
        if let Some(stripped) = rest.strip_prefix('-') {
            sign = Sign::Minus;
            rest = stripped.trim_start();
        } else if let Some(stripped) = rest.strip_prefix('+') {
            rest = stripped.trim_start();
        }
        let mut p = PauliString::identity(n_qubits);
        if rest == "I" || rest.is_empty() {
            return Ok(p.with_sign(sign));
        }
        for token in rest.split_whitespace() {
            let mut chars = token.chars();
            let axis = match chars.next() {
                Some('X') | Some('x') => Axis::X,
                Some('Y') | Some('y') => Axis::Y,
                Some('Z') | Some('z') => Axis::Z,
                _ => return Err(PauliError::Parse(text.to_string())),
            };
            let label: usize = chars
                .as_str()
                .parse()
                .map_err(|_| PauliError::Parse(text.to_string()))?;
            if label == 0 || label > n_qubits {
                return Err(PauliError::QubitOutOfRange(label, n_qubits));
            }
            if p.axis_at(label - 1).is_some() {
                return Err(PauliError::Parse(text.to_string()));
            }
            p.set_factor(label - 1, axis)?;
        }
        Ok(p.with_sign(sign))
    }
}

impl FromStr for Sign {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Sign, PauliError> {
        match s {
            "+1" | "+" | "1" | "plus" => Ok(Sign::Plus),
            "-1" | "-" | "minus" => Ok(Sign::Minus),
            _ => Err(PauliError::Parse(s.to_string())),
        }
    }
}
