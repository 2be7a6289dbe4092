//! Circuit synthesis: turns a model plus a quantum-number assignment into a
//! layered circuit and the product input state it acts on.
//!
//! Every builder follows the same pattern: each conserved term's ±1 quantum
//! number is loaded into one input qubit (in the z basis for Z-type terms,
//! behind a Hadamard for X-type terms), and a fixed cascade of CNOT gates
//! spreads them into the joint eigenstate. The CNOT cascades come from
//! rewriting controlled-σᶻ-product operators as pairs of CNOT gates with a
//! shared target.
//!
//! # Schedules
//!
//! Layers are laid out directly rather than found by a general scheduler:
//!
//! * trestle: one Hadamard layer and two CNOT layers (depth 3 for any N);
//! * graph: one Hadamard layer, then bond→site CNOTs placed greedily, so the
//!   depth tracks the largest site degree and not the qubit count;
//! * cylinder/sheet: Hadamards (1 layer), the chain cascades along each
//!   horizontal column (N2−1 layers), then the star cascades, one level per
//!   three slot layers. Star cascades of different columns share only CNOT
//!   targets, so all columns run slot-aligned in parallel and the stage takes
//!   3·N2−1 layers; the total depth is 4·N2−1.
//! * torus: as the cylinder for the chain and star stages (restricted to
//!   rows ≥ 2), preceded by two stages of serial strings that sweep the
//!   accumulated operators onto the reference row and column. The two sweeps
//!   act on disjoint qubits and run in parallel, (N1−1)·N2 layers; strings
//!   run serially from column N1 down to column 2.

use std::collections::BTreeMap;
use std::ops::Range;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, ListScheduler};
use crate::lattice::{plaquette_label, star_label, Geometry, ModelSpec, PlanarLayout};
use crate::pauli::{PauliError, Sign};

/// Errors from quantum-number handling and circuit synthesis.
#[derive(Debug, Error)]
pub enum SynthError {
    #[error("no quantum number assigned for term {0:?}")]
    MissingValue(String),
    #[error("quantum numbers name unknown term {0:?}")]
    UnknownLabel(String),
    #[error("constraint violated: the {0} quantum numbers must multiply to +1")]
    ConstraintViolated(String),
    #[error("torus models need sector data (chi, zeta, theta_u, theta_v)")]
    MissingSector,
    #[error("sector data is only meaningful for torus models")]
    UnexpectedSector,
    #[error("geometry mismatch: this builder expects a {expected} model, got {got}")]
    GeometryMismatch { expected: &'static str, got: String },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// SplitMix64: a tiny, platform-independent seeded PRNG. Same seed, same
/// stream, everywhere; this is what makes CLI reports reproducible.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn next_sign(&mut self) -> Sign {
        if self.next_u64() & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// The two quantum numbers of the torus' missing qubits and the quantization
/// axes of their input states: u = (sin θ_u, 0, cos θ_u) and
/// v = (sin θ_v, 0, cos θ_v).
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct TorusSector {
    pub chi: Sign,
    pub zeta: Sign,
    pub theta_u: f64,
    pub theta_v: f64,
}

impl Default for TorusSector {
    fn default() -> Self {
        TorusSector {
            chi: Sign::Plus,
            zeta: Sign::Plus,
            theta_u: 0.0,
            theta_v: 0.0,
        }
    }
}

/// A ±1 assignment for every term of a model, plus the torus sector extras.
///
/// On the torus the two constraint products force the reference star (1,1)
/// and reference plaquette (3/2,1/2) values to equal the product of all the
/// others; assignments are validated against that at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumNumbers {
    values: BTreeMap<String, Sign>,
    sector: Option<TorusSector>,
}

impl QuantumNumbers {
    /// Every term +1; torus extras default to χ = ζ = +1, θ_u = θ_v = 0.
    pub fn all_plus(model: &ModelSpec) -> QuantumNumbers {
        let values = model
            .term_labels()
            .map(|l| (l.to_string(), Sign::Plus))
            .collect();
        QuantumNumbers {
            values,
            sector: default_sector(model),
        }
    }

    /// Seeded random assignment. Constrained (reference) values are fixed to
    /// the product of the free ones, so torus assignments are always valid.
    pub fn random(model: &ModelSpec, seed: u64) -> QuantumNumbers {
        let mut rng = SplitMix64::new(seed);
        let reference: Vec<String> = match model.torus_reference_labels() {
            Some((x, z)) => vec![x, z],
            None => vec![],
        };
        let mut values: BTreeMap<String, Sign> = model
            .term_labels()
            .map(|l| (l.to_string(), Sign::Plus))
            .collect();
        for term in model.terms() {
            if !reference.contains(&term.label) {
                values.insert(term.label.clone(), rng.next_sign());
            }
        }
        for constraint in model.constraints() {
            let mut product = Sign::Plus;
            let mut fix = None;
            for &i in constraint {
                let label = &model.terms()[i].label;
                if reference.contains(label) {
                    fix = Some(label.clone());
                } else {
                    product = product * values[label];
                }
            }
            if let Some(label) = fix {
                values.insert(label, product);
            }
        }
        let sector = match model.geometry() {
            Geometry::Torus { .. } => Some(TorusSector {
                chi: rng.next_sign(),
                zeta: rng.next_sign(),
                theta_u: 0.0,
                theta_v: 0.0,
            }),
            _ => None,
        };
        QuantumNumbers { values, sector }
    }

    /// Builds from explicit values, validating completeness, constraint
    /// products, and sector presence.
    pub fn from_values(
        model: &ModelSpec,
        values: BTreeMap<String, Sign>,
        sector: Option<TorusSector>,
    ) -> Result<QuantumNumbers, SynthError> {
        for label in values.keys() {
            if model.term(label).is_none() {
                return Err(SynthError::UnknownLabel(label.clone()));
            }
        }
        for term in model.terms() {
            if !values.contains_key(&term.label) {
                return Err(SynthError::MissingValue(term.label.clone()));
            }
        }
        let is_torus = matches!(model.geometry(), Geometry::Torus { .. });
        if is_torus && sector.is_none() {
            return Err(SynthError::MissingSector);
        }
        if !is_torus && sector.is_some() {
            return Err(SynthError::UnexpectedSector);
        }
        let q = QuantumNumbers { values, sector };
        q.check_constraints(model)?;
        Ok(q)
    }

    fn check_constraints(&self, model: &ModelSpec) -> Result<(), SynthError> {
        for constraint in model.constraints() {
            let mut product = Sign::Plus;
            for &i in constraint {
                product = product * self.values[&model.terms()[i].label];
            }
            if product != Sign::Plus {
                let family = if model.terms()[constraint[0]].label.starts_with('X') {
                    "X-type"
                } else {
                    "Z-type"
                };
                return Err(SynthError::ConstraintViolated(family.to_string()));
            }
        }
        Ok(())
    }

    /// Replaces the torus sector data; fails if there is none to replace.
    pub fn with_sector(mut self, sector: TorusSector) -> Result<QuantumNumbers, SynthError> {
        if self.sector.is_none() {
            return Err(SynthError::UnexpectedSector);
        }
        self.sector = Some(sector);
        Ok(self)
    }

    pub fn value(&self, label: &str) -> Result<Sign, SynthError> {
        self.values
            .get(label)
            .copied()
            .ok_or_else(|| SynthError::MissingValue(label.to_string()))
    }

    pub fn values(&self) -> &BTreeMap<String, Sign> {
        &self.values
    }

    pub fn sector(&self) -> Option<&TorusSector> {
        self.sector.as_ref()
    }
}

fn default_sector(model: &ModelSpec) -> Option<TorusSector> {
    match model.geometry() {
        Geometry::Torus { .. } => Some(TorusSector::default()),
        _ => None,
    }
}

/// One named section of a built circuit: a layer range plus its CNOT count.
/// Sections of a parallel stage may share the same layer range.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    pub name: &'static str,
    pub layers: Range<usize>,
    pub cnots: usize,
}

/// A synthesized circuit together with the product input state it expects
/// (one ±1 bit per qubit, |+1⟩ ≡ |0⟩) and per-stage analytics.
#[derive(Clone, Debug)]
pub struct PreparedCircuit {
    pub circuit: Circuit,
    pub input: Vec<Sign>,
    pub stages: Vec<Stage>,
}

impl PreparedCircuit {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    /// Depth of the layer span covered by the named stages.
    pub fn stage_depth(&self, names: &[&str]) -> usize {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for stage in &self.stages {
            if names.contains(&stage.name) {
                lo = lo.min(stage.layers.start);
                hi = hi.max(stage.layers.end);
            }
        }
        hi.saturating_sub(lo.min(hi))
    }
}

fn expect_geometry<'m, T>(
    model: &'m ModelSpec,
    expected: &'static str,
    extract: impl Fn(&'m Geometry) -> Option<T>,
) -> Result<T, SynthError> {
    extract(model.geometry()).ok_or_else(|| SynthError::GeometryMismatch {
        expected,
        got: model.geometry().name().to_string(),
    })
}

/// Circuit for the trestle eigenstates: N Hadamards and 2N CNOTs at depth 3.
pub fn trestle_circuit(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
) -> Result<PreparedCircuit, SynthError> {
    let n = expect_geometry(model, "trestle", |g| match *g {
        Geometry::Trestle { n } => Some(n),
        _ => None,
    })?;
    let n_qubits = 2 * n;
    let q = |l: usize| (l - 1) % n_qubits; // 1-based label to 0-based index

    let mut input = vec![Sign::Plus; n_qubits];
    for m in 1..=n {
        input[q(2 * m)] = qnums.value(&format!("Z{m}"))?;
        input[q(2 * m + 1)] = qnums.value(&format!("X{m}"))?;
    }

    let hadamards = (1..=n).map(|m| Gate::H { q: q(2 * m - 1) }).collect();
    let pair_cnots = (1..=n)
        .map(|m| Gate::Cnot { control: q(2 * m - 1), target: q(2 * m) })
        .collect();
    let wrap_cnots = (1..=n)
        .map(|m| Gate::Cnot { control: q(2 * m + 1), target: q(2 * m) })
        .collect();
    let circuit = Circuit::from_layers(n_qubits, vec![hadamards, pair_cnots, wrap_cnots])?;
    let stages = vec![
        Stage { name: "h", layers: 0..1, cnots: 0 },
        Stage { name: "cnot-pairs", layers: 1..2, cnots: n },
        Stage { name: "cnot-wrap", layers: 2..3, cnots: n },
    ];
    Ok(PreparedCircuit { circuit, input, stages })
}

/// Circuit for the graph eigenstates: Hadamards on the bond qubits, then a
/// pair of CNOTs per bond with the bond qubit controlling both endpoints.
pub fn graph_circuit(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
) -> Result<PreparedCircuit, SynthError> {
    let (nodes, bonds) = expect_geometry(model, "graph", |g| match g {
        Geometry::Graph { nodes, bonds } => Some((*nodes, bonds.clone())),
        _ => None,
    })?;
    let n_qubits = nodes + bonds.len();

    let mut input = vec![Sign::Plus; n_qubits];
    for node in 1..=nodes {
        input[node - 1] = qnums.value(&format!("Z{node}"))?;
    }
    for (rank, &(a, b)) in bonds.iter().enumerate() {
        input[nodes + rank] = qnums.value(&format!("X({a},{b})"))?;
    }

    let mut scheduler = ListScheduler::new(n_qubits);
    for rank in 0..bonds.len() {
        scheduler.push(Gate::H { q: nodes + rank });
    }
    for (rank, &(a, b)) in bonds.iter().enumerate() {
        scheduler.push(Gate::Cnot { control: nodes + rank, target: a - 1 });
        scheduler.push(Gate::Cnot { control: nodes + rank, target: b - 1 });
    }
    let circuit = scheduler.finish()?;
    let depth = circuit.depth();
    let stages = vec![
        Stage { name: "h", layers: 0..1, cnots: 0 },
        Stage { name: "cnots", layers: 1..depth, cnots: 2 * bonds.len() },
    ];
    Ok(PreparedCircuit { circuit, input, stages })
}

/// Shared star-cascade stage for the open-row models. For each level, one
/// layer of CNOTs onto the left horizontal legs, one onto the right legs and
/// one onto the up verticals, levels running from the top row down. `range2`
/// selects the levels; `open1` drops the left legs of column 1 (sheet).
fn star_cascade_layers(
    lay: PlanarLayout,
    levels: impl Iterator<Item = usize>,
    open1: bool,
    wrap_up: bool,
    cnots: &mut usize,
) -> Vec<Vec<Gate>> {
    let mut layers = Vec::new();
    for k in levels {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut up = Vec::new();
        for m in 1..=lay.n1 {
            let control = lay.vertical(m, k);
            if !(open1 && m == 1) {
                left.push(Gate::Cnot {
                    control,
                    target: lay.horizontal(lay.wrap1(m as i64 - 1), k),
                });
            }
            right.push(Gate::Cnot { control, target: lay.horizontal(m, k) });
            if wrap_up || k + 1 <= lay.n2 {
                up.push(Gate::Cnot {
                    control,
                    target: lay.vertical(m, lay.wrap2(k as i64 + 1)),
                });
            }
        }
        for layer in [left, right, up] {
            if !layer.is_empty() {
                *cnots += layer.len();
                layers.push(layer);
            }
        }
    }
    layers
}

/// One chain layer per row: CNOTs from each horizontal qubit at row k−1 to
/// the one above it at row k, rows ascending.
fn chain_layers(lay: PlanarLayout, cnots: &mut usize) -> Vec<Vec<Gate>> {
    let mut layers = Vec::new();
    for k in 2..=lay.n2 {
        let layer: Vec<Gate> = (1..=lay.n1)
            .map(|m| Gate::Cnot {
                control: lay.horizontal(m, k - 1),
                target: lay.horizontal(m, k),
            })
            .collect();
        *cnots += layer.len();
        layers.push(layer);
    }
    layers
}

fn open_row_circuit(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
    expected: &'static str,
    open1: bool,
) -> Result<PreparedCircuit, SynthError> {
    let (n1, n2) = expect_geometry(model, expected, |g| match (g, expected) {
        (&Geometry::Cylinder { n1, n2 }, "cylinder") => Some((n1, n2)),
        (&Geometry::Sheet { n1, n2 }, "sheet") => Some((n1, n2)),
        _ => None,
    })?;
    let lay = PlanarLayout { n1, n2 };

    let mut input = vec![Sign::Plus; lay.n_qubits()];
    for m in 1..=n1 {
        for k in 1..=n2 {
            input[lay.vertical(m, k)] = qnums.value(&star_label(m, k))?;
            input[lay.horizontal(m, k)] = qnums.value(&plaquette_label(m, k))?;
        }
    }

    let hadamards: Vec<Gate> = (1..=n1)
        .flat_map(|m| (1..=n2).map(move |k| (m, k)))
        .map(|(m, k)| Gate::H { q: lay.vertical(m, k) })
        .collect();

    let mut chain_cnots = 0;
    let chain = chain_layers(lay, &mut chain_cnots);
    let mut star_cnots = 0;
    let stars = star_cascade_layers(lay, (1..=n2).rev(), open1, false, &mut star_cnots);

    let mut layers = vec![hadamards];
    let chain_end = 1 + chain.len();
    layers.extend(chain);
    let star_end = chain_end + stars.len();
    layers.extend(stars);
    let circuit = Circuit::from_layers(lay.n_qubits(), layers)?;
    let stages = vec![
        Stage { name: "h", layers: 0..1, cnots: 0 },
        Stage { name: "chain", layers: 1..chain_end, cnots: chain_cnots },
        Stage { name: "stars", layers: chain_end..star_end, cnots: star_cnots },
    ];
    Ok(PreparedCircuit { circuit, input, stages })
}

/// Circuit for the cylinder eigenstates: N1·N2 Hadamards and 2N1(2N2−1)
/// CNOTs at depth 4N2−1.
pub fn cylinder_circuit(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
) -> Result<PreparedCircuit, SynthError> {
    open_row_circuit(model, qnums, "cylinder", false)
}

/// Circuit for the sheet eigenstates: the cylinder recipe with the cascades
/// truncated at the open column-1 boundary.
pub fn sheet_circuit(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
) -> Result<PreparedCircuit, SynthError> {
    open_row_circuit(model, qnums, "sheet", true)
}

/// Circuit for the toric-code eigenstates on the torus.
///
/// The reference lines are fixed at 1, so the missing qubits sit on the
/// horizontal edge (1/2, 1) and the vertical edge (1, 1/2); they carry χ and
/// ζ and receive the R_y(θ_u) and R_y(θ_v) rotations.
pub fn torus_circuit(
    model: &ModelSpec,
    qnums: &QuantumNumbers,
) -> Result<PreparedCircuit, SynthError> {
    let (n1, n2) = expect_geometry(model, "torus", |g| match *g {
        Geometry::Torus { n1, n2 } => Some((n1, n2)),
        _ => None,
    })?;
    let sector = *qnums.sector().ok_or(SynthError::MissingSector)?;
    let lay = PlanarLayout { n1, n2 };
    let chi_qubit = lay.horizontal(n1, 1); // edge (1/2, 1), wrapped
    let zeta_qubit = lay.vertical(1, 1); // edge (1, 1/2)

    let mut input = vec![Sign::Plus; lay.n_qubits()];
    for m in 1..=n1 {
        // Row-1 horizontals carry the reference-row star numbers, shifted by
        // the wrap: edge (m+1/2, 1) reads the star at site (m+1, 1).
        input[lay.horizontal(m, 1)] = if m == n1 {
            sector.chi
        } else {
            qnums.value(&star_label(m + 1, 1))?
        };
        // Row-1/2 verticals carry the reference-row plaquette numbers.
        input[lay.vertical(m, 1)] = if m == 1 {
            sector.zeta
        } else {
            qnums.value(&plaquette_label(m, 1))?
        };
        for k in 2..=n2 {
            input[lay.vertical(m, k)] = qnums.value(&star_label(m, k))?;
            input[lay.horizontal(m, k)] = qnums.value(&plaquette_label(m, k))?;
        }
    }

    let mut hadamards = Vec::new();
    for m in 1..=n1 {
        if m != n1 {
            hadamards.push(Gate::H { q: lay.horizontal(m, 1) });
        }
        for k in 2..=n2 {
            hadamards.push(Gate::H { q: lay.vertical(m, k) });
        }
    }
    let rotations = vec![
        Gate::Ry { q: chi_qubit, theta: sector.theta_u },
        Gate::Ry { q: zeta_qubit, theta: sector.theta_v },
    ];

    // Accumulation sweeps: serial strings for columns N1 down to 2. The
    // Z-sweep gathers onto the row-1/2 vertical of each column (controls on
    // the next column's row-1/2 vertical and the column's upper horizontals);
    // the X-sweep spreads from the row-1 horizontals (targets on the next
    // row-1 horizontal and the column's upper verticals). The two sweeps act
    // on disjoint qubits, so their strings share layers pairwise.
    let mut z_sweep = Vec::new();
    let mut x_sweep = Vec::new();
    for m in (2..=n1).rev() {
        let target = lay.vertical(m, 1);
        z_sweep.push(Gate::Cnot {
            control: lay.vertical(lay.wrap1(m as i64 + 1), 1),
            target,
        });
        for k in 2..=n2 {
            z_sweep.push(Gate::Cnot { control: lay.horizontal(m, k), target });
        }
        let control = lay.horizontal(m - 1, 1);
        x_sweep.push(Gate::Cnot { control, target: lay.horizontal(m, 1) });
        for k in 2..=n2 {
            x_sweep.push(Gate::Cnot { control, target: lay.vertical(m, k) });
        }
    }
    let sweep_cnots = z_sweep.len();
    debug_assert_eq!(z_sweep.len(), x_sweep.len());
    let sweep: Vec<Vec<Gate>> = z_sweep
        .into_iter()
        .zip(x_sweep)
        .map(|(a, b)| vec![a, b])
        .collect();

    let mut chain_cnots = 0;
    let chain = chain_layers(lay, &mut chain_cnots);
    let mut star_cnots = 0;
    let stars = star_cascade_layers(lay, (2..=n2).rev(), false, true, &mut star_cnots);

    let mut layers = vec![hadamards, rotations];
    let sweep_range = 2..2 + sweep.len();
    layers.extend(sweep);
    let chain_range = sweep_range.end..sweep_range.end + chain.len();
    layers.extend(chain);
    let star_range = chain_range.end..chain_range.end + stars.len();
    layers.extend(stars);
    let circuit = Circuit::from_layers(lay.n_qubits(), layers)?;
    let stages = vec![
        Stage { name: "h", layers: 0..1, cnots: 0 },
        Stage { name: "ry", layers: 1..2, cnots: 0 },
        Stage { name: "z-sweep", layers: sweep_range.clone(), cnots: sweep_cnots },
        Stage { name: "x-sweep", layers: sweep_range, cnots: sweep_cnots },
        Stage { name: "chain", layers: chain_range, cnots: chain_cnots },
        Stage { name: "stars", layers: star_range, cnots: star_cnots },
    ];
    Ok(PreparedCircuit { circuit, input, stages })
}

/// Builds the eigenstate-preparation circuit matching the model's geometry.
pub fn prepare(model: &ModelSpec, qnums: &QuantumNumbers) -> Result<PreparedCircuit, SynthError> {
    match model.geometry() {
        Geometry::Trestle { .. } => trestle_circuit(model, qnums),
        Geometry::Graph { .. } => graph_circuit(model, qnums),
        Geometry::Cylinder { .. } => cylinder_circuit(model, qnums),
        Geometry::Sheet { .. } => sheet_circuit(model, qnums),
        Geometry::Torus { .. } => torus_circuit(model, qnums),
    }
}
