//! Exact eigenstate preparation and verification for a family of
//! stabilizer-solvable spin models: the closed trestle, models on arbitrary
//! graphs, and the toric code on a cylinder, an open sheet and a torus.
//!
//! The crate builds each model's commuting term set ([`lattice`]), labels an
//! eigensector by one ±1 quantum number per term ([`synth::QuantumNumbers`]),
//! synthesizes the exact H/CNOT/R_y preparation circuit for that sector
//! ([`synth`]), and checks the result with two independent engines: a dense
//! state-vector simulator ([`dense`]) for small instances and a bit-packed
//! stabilizer tableau ([`tableau`]) for thousands of qubits. The [`verify`]
//! module holds the analytic oracles (matrix-product and tensor amplitudes,
//! energy formulas, degeneracy and correlation structure) that everything is
//! tested against.

pub mod circuit;
pub mod dense;
pub mod gf2;
pub mod lattice;
pub mod pauli;
pub mod synth;
pub mod tableau;
pub mod verify;

pub use circuit::{Circuit, Gate, GateCounts};
pub use dense::DenseState;
pub use lattice::{CouplingSpec, Geometry, ModelSpec};
pub use pauli::{Axis, PauliString, Sign};
pub use synth::{PreparedCircuit, QuantumNumbers, TorusSector};
pub use tableau::Tableau;
pub use verify::{Engine, VerificationReport};
