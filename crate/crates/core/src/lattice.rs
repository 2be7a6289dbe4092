//! Model construction: lattice geometry, qubit labeling, stabilizer terms
//! with couplings, and constraint products.
//!
//! Five families are supported: the closed trestle, general graphs with
//! qubits on sites and bonds, and the square-lattice plaquette models on a
//! cylinder, an open sheet and a torus.
//!
//! # Coordinates and indexing
//!
//! The square-lattice models place qubits on the edges of an N1×N2 grid of
//! sites. A *vertical* edge sits at (n1, n2−1/2) and a *horizontal* edge at
//! (n1+1/2, n2), for n1 in 1..=N1 and n2 in 1..=N2. Half-integer coordinates
//! cannot index arrays, so the linear index is row-major from the bottom:
//! within each row pair, the N1 vertical edges at height n2−1/2 come first,
//! then the N1 horizontal edges at height n2. [`PlanarLayout`] is the single
//! source of truth for this bijection; circuit synthesis uses the same map.
//!
//! Term labels are stable strings: `"X(n1,n2)"` for the star at site
//! (n1,n2) and `"Z(a/2,b/2)"` for the plaquette centred at (n1+1/2,n2−1/2);
//! the trestle uses `"X1"`/`"Z1"`, graphs use `"Zn"` for sites and
//! `"X(n,n')"` for bonds. Quantum numbers and per-term couplings key off
//! these labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::{PauliError, PauliString};

/// Errors from model construction and (de)serialization.
#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("trestle needs N >= 2, got {0}")]
    TrestleTooSmall(usize),
    #[error("lattice needs N1, N2 >= 2, got {0}x{1}")]
    PlanarTooSmall(usize, usize),
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("node {0} is isolated; every site must make a bond with another site")]
    IsolatedNode(usize),
    #[error("bond ({0},{1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("bond ({0},{1}) appears more than once")]
    DuplicateBond(usize, usize),
    #[error("bond ({0},{1}) references a node outside 1..={2}")]
    BondOutOfRange(usize, usize, usize),
    #[error("no coupling provided for term {0:?}")]
    MissingCoupling(String),
    #[error("coupling provided for unknown term {0:?}")]
    UnknownCouplingLabel(String),
    #[error("no term labelled {0:?} in this model")]
    UnknownTerm(String),
    #[error("operation requires a torus model")]
    NotATorus,
    #[error("invalid model data: {0}")]
    InvalidModel(String),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Lattice geometry of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Geometry {
    Trestle { n: usize },
    Graph { nodes: usize, bonds: Vec<(usize, usize)> },
    Cylinder { n1: usize, n2: usize },
    Sheet { n1: usize, n2: usize },
    Torus { n1: usize, n2: usize },
}

impl Geometry {
    pub fn name(&self) -> &'static str {
        match self {
            Geometry::Trestle { .. } => "trestle",
            Geometry::Graph { .. } => "graph",
            Geometry::Cylinder { .. } => "cylinder",
            Geometry::Sheet { .. } => "sheet",
            Geometry::Torus { .. } => "torus",
        }
    }
}

/// Coupling strengths for the stabilizer terms.
///
/// `Uniform` applies one strength to every Z-type term and one to every
/// X-type term; `PerTerm` assigns each term label individually and must
/// cover the term set exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum CouplingSpec {
    Uniform { iz: f64, ix: f64 },
    PerTerm(BTreeMap<String, f64>),
}

impl Default for CouplingSpec {
    /// All couplings −1, so the all-(+1) sector is the ground sector.
    fn default() -> Self {
        CouplingSpec::Uniform { iz: -1.0, ix: -1.0 }
    }
}

impl CouplingSpec {
    fn resolve(&self, labels: &[String]) -> Result<Vec<f64>, LatticeError> {
        match self {
            CouplingSpec::Uniform { iz, ix } => Ok(labels
                .iter()
                .map(|l| if l.starts_with('X') { *ix } else { *iz })
                .collect()),
            CouplingSpec::PerTerm(map) => {
                for key in map.keys() {
                    if !labels.iter().any(|l| l == key) {
                        return Err(LatticeError::UnknownCouplingLabel(key.clone()));
                    }
                }
                labels
                    .iter()
                    .map(|l| {
                        map.get(l)
                            .copied()
                            .ok_or_else(|| LatticeError::MissingCoupling(l.clone()))
                    })
                    .collect()
            }
        }
    }
}

/// One stabilizer term: a labelled Pauli string with a coupling strength.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub label: String,
    pub pauli: PauliString,
    pub coupling: f64,
}

/// Row-major index map for the square-lattice models.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PlanarLayout {
    pub n1: usize,
    pub n2: usize,
}

impl PlanarLayout {
    /// Qubit on the vertical edge at (n1, n2−1/2); arguments 1-based.
    pub fn vertical(&self, n1: usize, n2: usize) -> usize {
        debug_assert!((1..=self.n1).contains(&n1) && (1..=self.n2).contains(&n2));
        (n2 - 1) * 2 * self.n1 + (n1 - 1)
    }

    /// Qubit on the horizontal edge at (n1+1/2, n2); arguments 1-based.
    pub fn horizontal(&self, n1: usize, n2: usize) -> usize {
        debug_assert!((1..=self.n1).contains(&n1) && (1..=self.n2).contains(&n2));
        (n2 - 1) * 2 * self.n1 + self.n1 + (n1 - 1)
    }

    /// Wraps a possibly out-of-range 1-based column index onto 1..=N1.
    pub fn wrap1(&self, n1: i64) -> usize {
        ((n1 - 1).rem_euclid(self.n1 as i64) + 1) as usize
    }

    /// Wraps a possibly out-of-range 1-based row index onto 1..=N2.
    pub fn wrap2(&self, n2: i64) -> usize {
        ((n2 - 1).rem_euclid(self.n2 as i64) + 1) as usize
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.n1 * self.n2
    }

    fn qubit_labels(&self) -> Vec<String> {
        let mut labels = vec![String::new(); self.n_qubits()];
        for n2 in 1..=self.n2 {
            for n1 in 1..=self.n1 {
                labels[self.vertical(n1, n2)] = format!("({},{})", n1, half(2 * n2 as i64 - 1));
                labels[self.horizontal(n1, n2)] = format!("({},{})", half(2 * n1 as i64 + 1), n2);
            }
        }
        labels
    }
}

/// Renders a doubled coordinate: even values as integers, odd as halves.
fn half(twice: i64) -> String {
    if twice % 2 == 0 {
        format!("{}", twice / 2)
    } else {
        format!("{}/2", twice)
    }
}

/// Label of the star term at site (n1, n2).
pub fn star_label(n1: usize, n2: usize) -> String {
    format!("X({},{})", n1, n2)
}

/// Label of the plaquette term centred at (n1+1/2, n2−1/2).
pub fn plaquette_label(n1: usize, n2: usize) -> String {
    format!(
        "Z({},{})",
        half(2 * n1 as i64 + 1),
        half(2 * n2 as i64 - 1)
    )
}

/// A complete model: geometry, qubit labeling, commuting stabilizer terms
/// with couplings, and constraint products. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    geometry: Geometry,
    n_qubits: usize,
    qubit_labels: Vec<String>,
    terms: Vec<Term>,
    /// Term-index lists whose Pauli product equals the identity.
    constraints: Vec<Vec<usize>>,
}

impl ModelSpec {
    fn new(
        geometry: Geometry,
        n_qubits: usize,
        qubit_labels: Vec<String>,
        terms: Vec<Term>,
        constraints: Vec<Vec<usize>>,
    ) -> Result<ModelSpec, LatticeError> {
        let spec = ModelSpec {
            geometry,
            n_qubits,
            qubit_labels,
            terms,
            constraints,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), LatticeError> {
        if self.qubit_labels.len() != self.n_qubits {
            return Err(LatticeError::InvalidModel(
                "qubit label count does not match qubit count".into(),
            ));
        }
        for (i, a) in self.terms.iter().enumerate() {
            if a.pauli.n_qubits() != self.n_qubits {
                return Err(LatticeError::InvalidModel(format!(
                    "term {} has wrong qubit count",
                    a.label
                )));
            }
            let sq = a.pauli.multiply(&a.pauli)?;
            if !sq.is_identity_bits() || sq.sign() != crate::pauli::Sign::Plus {
                return Err(LatticeError::InvalidModel(format!(
                    "term {} does not square to identity",
                    a.label
                )));
            }
            for b in &self.terms[i + 1..] {
                if a.label == b.label {
                    return Err(LatticeError::InvalidModel(format!(
                        "duplicate term label {}",
                        a.label
                    )));
                }
                if !a.pauli.commutes(&b.pauli)? {
                    return Err(LatticeError::InvalidModel(format!(
                        "terms {} and {} do not commute",
                        a.label, b.label
                    )));
                }
            }
        }
        for indices in &self.constraints {
            let mut prod = PauliString::identity(self.n_qubits);
            for &i in indices {
                let term = self.terms.get(i).ok_or_else(|| {
                    LatticeError::InvalidModel("constraint references unknown term".into())
                })?;
                prod = prod.multiply(&term.pauli)?;
            }
            if !prod.is_identity_bits() || prod.sign() != crate::pauli::Sign::Plus {
                return Err(LatticeError::InvalidModel(
                    "constraint product is not the identity".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn qubit_labels(&self) -> &[String] {
        &self.qubit_labels
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term(&self, label: &str) -> Option<&Term> {
        self.terms.iter().find(|t| t.label == label)
    }

    pub fn term_labels(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|t| t.label.as_str())
    }

    /// Constraint products as lists of term indices.
    pub fn constraints(&self) -> &[Vec<usize>] {
        &self.constraints
    }

    /// The layout helper for the square-lattice geometries.
    pub fn planar_layout(&self) -> Option<PlanarLayout> {
        match self.geometry {
            Geometry::Cylinder { n1, n2 }
            | Geometry::Sheet { n1, n2 }
            | Geometry::Torus { n1, n2 } => Some(PlanarLayout { n1, n2 }),
            _ => None,
        }
    }

    /// Labels of the two torus reference plaquettes (the accumulation-term
    /// positions), with the reference lines fixed at 1.
    pub fn torus_reference_labels(&self) -> Option<(String, String)> {
        match self.geometry {
            Geometry::Torus { .. } => Some((star_label(1, 1), plaquette_label(1, 1))),
            _ => None,
        }
    }

    /// Returns a copy with the couplings of the named terms set to new values.
    fn with_couplings(&self, updates: &[(&str, f64)]) -> Result<ModelSpec, LatticeError> {
        let mut spec = self.clone();
        for &(label, value) in updates {
            let term = spec
                .terms
                .iter_mut()
                .find(|t| t.label == label)
                .ok_or_else(|| LatticeError::UnknownTerm(label.to_string()))?;
            term.coupling = value;
        }
        Ok(spec)
    }
}

/// Builds the closed-trestle model on 2N qubits: N three-qubit Z-type terms
/// and N three-qubit X-type terms with periodic wraparound.
pub fn build_trestle(n: usize, couplings: &CouplingSpec) -> Result<ModelSpec, LatticeError> {
    if n < 2 {
        return Err(LatticeError::TrestleTooSmall(n));
    }
    let n_qubits = 2 * n;
    // 1-based qubit label l, wrapped; 0-based index (l-1) mod 2N.
    let q = |l: usize| (l - 1) % n_qubits;
    let mut labels = Vec::new();
    let mut paulis = Vec::new();
    for m in 1..=n {
        labels.push(format!("X{m}"));
        paulis.push(PauliString::x_string(
            n_qubits,
            &[q(2 * m), q(2 * m + 1), q(2 * m + 2)],
        )?);
    }
    for m in 1..=n {
        labels.push(format!("Z{m}"));
        paulis.push(PauliString::z_string(
            n_qubits,
            &[q(2 * m - 1), q(2 * m), q(2 * m + 1)],
        )?);
    }
    let coups = couplings.resolve(&labels)?;
    let terms = labels
        .into_iter()
        .zip(paulis)
        .zip(coups)
        .map(|((label, pauli), coupling)| Term { label, pauli, coupling })
        .collect();
    let qubit_labels = (1..=n_qubits).map(|l| l.to_string()).collect();
    ModelSpec::new(Geometry::Trestle { n }, n_qubits, qubit_labels, terms, vec![])
}

/// Normalizes and checks a bond list: 1-based endpoints, no self-loops, no
/// duplicates, no isolated nodes. Returns the bonds sorted lexicographically.
fn normalize_bonds(
    nodes: usize,
    bonds: &[(usize, usize)],
) -> Result<Vec<(usize, usize)>, LatticeError> {
    if nodes == 0 {
        return Err(LatticeError::EmptyGraph);
    }
    let mut sorted: Vec<(usize, usize)> = Vec::with_capacity(bonds.len());
    for &(a, b) in bonds {
        if a == b {
            return Err(LatticeError::SelfLoop(a, b));
        }
        if a == 0 || b == 0 || a > nodes || b > nodes {
            return Err(LatticeError::BondOutOfRange(a, b, nodes));
        }
        sorted.push((a.min(b), a.max(b)));
    }
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(LatticeError::DuplicateBond(w[0].0, w[0].1));
        }
    }
    for node in 1..=nodes {
        if !sorted.iter().any(|&(a, b)| a == node || b == node) {
            return Err(LatticeError::IsolatedNode(node));
        }
    }
    Ok(sorted)
}

/// Builds the graph model: one qubit per site and per bond, star terms
/// `Z_n = σᶻ_n ∏ τᶻ` over the bonds at each site, and bond terms
/// `X_(n,n') = σˣ_n τˣ σˣ_n'`.
pub fn build_graph(
    nodes: usize,
    bonds: &[(usize, usize)],
    couplings: &CouplingSpec,
) -> Result<ModelSpec, LatticeError> {
    let bonds = normalize_bonds(nodes, bonds)?;
    let n_qubits = nodes + bonds.len();
    let site = |n: usize| n - 1;
    let bond_qubit = |rank: usize| nodes + rank;

    let mut labels = Vec::new();
    let mut paulis = Vec::new();
    for (rank, &(a, b)) in bonds.iter().enumerate() {
        labels.push(format!("X({a},{b})"));
        paulis.push(PauliString::x_string(
            n_qubits,
            &[site(a), bond_qubit(rank), site(b)],
        )?);
    }
    for node in 1..=nodes {
        let mut qubits = vec![site(node)];
        for (rank, &(a, b)) in bonds.iter().enumerate() {
            if a == node || b == node {
                qubits.push(bond_qubit(rank));
            }
        }
        labels.push(format!("Z{node}"));
        paulis.push(PauliString::z_string(n_qubits, &qubits)?);
    }
    let coups = couplings.resolve(&labels)?;
    let terms = labels
        .into_iter()
        .zip(paulis)
        .zip(coups)
        .map(|((label, pauli), coupling)| Term { label, pauli, coupling })
        .collect();
    let mut qubit_labels: Vec<String> = (1..=nodes).map(|n| format!("site {n}")).collect();
    qubit_labels.extend(bonds.iter().map(|&(a, b)| format!("bond ({a},{b})")));
    ModelSpec::new(
        Geometry::Graph { nodes, bonds },
        n_qubits,
        qubit_labels,
        terms,
        vec![],
    )
}

/// Edge behaviour of the square-lattice builders.
#[derive(Copy, Clone, PartialEq, Eq)]
enum PlanarKind {
    Cylinder,
    Sheet,
    Torus,
}

/// Star legs at site (n1, n2): left/right horizontal, down/up vertical,
/// dropped where the geometry has no such edge.
fn star_qubits(kind: PlanarKind, lay: PlanarLayout, n1: usize, n2: usize) -> Vec<usize> {
    let mut qs = Vec::with_capacity(4);
    // Left horizontal edge (n1-1/2, n2).
    match kind {
        PlanarKind::Sheet => {
            if n1 >= 2 {
                qs.push(lay.horizontal(n1 - 1, n2));
            }
        }
        _ => qs.push(lay.horizontal(lay.wrap1(n1 as i64 - 1), n2)),
    }
    // Right horizontal edge (n1+1/2, n2) always exists.
    qs.push(lay.horizontal(n1, n2));
    // Down vertical edge (n1, n2-1/2) always exists.
    qs.push(lay.vertical(n1, n2));
    // Up vertical edge (n1, n2+1/2).
    match kind {
        PlanarKind::Torus => qs.push(lay.vertical(n1, lay.wrap2(n2 as i64 + 1))),
        _ => {
            if n2 + 1 <= lay.n2 {
                qs.push(lay.vertical(n1, n2 + 1));
            }
        }
    }
    qs
}

/// Plaquette legs at centre (n1+1/2, n2−1/2): left/right vertical, top/bottom
/// horizontal, dropped where the geometry has no such edge.
fn plaquette_qubits(kind: PlanarKind, lay: PlanarLayout, n1: usize, n2: usize) -> Vec<usize> {
    let mut qs = Vec::with_capacity(4);
    // Left vertical edge (n1, n2-1/2) always exists.
    qs.push(lay.vertical(n1, n2));
    // Right vertical edge (n1+1, n2-1/2).
    match kind {
        PlanarKind::Sheet => {
            if n1 + 1 <= lay.n1 {
                qs.push(lay.vertical(n1 + 1, n2));
            }
        }
        _ => qs.push(lay.vertical(lay.wrap1(n1 as i64 + 1), n2)),
    }
    // Top horizontal edge (n1+1/2, n2) always exists.
    qs.push(lay.horizontal(n1, n2));
    // Bottom horizontal edge (n1+1/2, n2-1).
    match kind {
        PlanarKind::Torus => qs.push(lay.horizontal(n1, lay.wrap2(n2 as i64 - 1))),
        _ => {
            if n2 >= 2 {
                qs.push(lay.horizontal(n1, n2 - 1));
            }
        }
    }
    qs
}

fn build_planar(
    kind: PlanarKind,
    n1: usize,
    n2: usize,
    couplings: &CouplingSpec,
) -> Result<ModelSpec, LatticeError> {
    if n1 < 2 || n2 < 2 {
        return Err(LatticeError::PlanarTooSmall(n1, n2));
    }
    let lay = PlanarLayout { n1, n2 };
    let n_qubits = lay.n_qubits();
    let mut labels = Vec::new();
    let mut paulis = Vec::new();
    for a in 1..=n1 {
        for b in 1..=n2 {
            labels.push(star_label(a, b));
            paulis.push(PauliString::x_string(n_qubits, &star_qubits(kind, lay, a, b))?);
        }
    }
    for a in 1..=n1 {
        for b in 1..=n2 {
            labels.push(plaquette_label(a, b));
            paulis.push(PauliString::z_string(
                n_qubits,
                &plaquette_qubits(kind, lay, a, b),
            )?);
        }
    }
    let coups = couplings.resolve(&labels)?;
    let terms: Vec<Term> = labels
        .into_iter()
        .zip(paulis)
        .zip(coups)
        .map(|((label, pauli), coupling)| Term { label, pauli, coupling })
        .collect();
    let constraints = match kind {
        // On the torus the product of all stars and the product of all
        // plaquettes are both the identity.
        PlanarKind::Torus => {
            let half = terms.len() / 2;
            vec![(0..half).collect(), (half..terms.len()).collect()]
        }
        _ => vec![],
    };
    let geometry = match kind {
        PlanarKind::Cylinder => Geometry::Cylinder { n1, n2 },
        PlanarKind::Sheet => Geometry::Sheet { n1, n2 },
        PlanarKind::Torus => Geometry::Torus { n1, n2 },
    };
    ModelSpec::new(geometry, n_qubits, lay.qubit_labels(), terms, constraints)
}

/// Toric-code model on a cylinder: periodic along n1, open along n2, with
/// three-qubit Z terms on the bottom edge and three-qubit X terms on the top.
pub fn build_cylinder(n1: usize, n2: usize, couplings: &CouplingSpec) -> Result<ModelSpec, LatticeError> {
    build_planar(PlanarKind::Cylinder, n1, n2, couplings)
}

/// Planar toric-code model open along both directions, with three-qubit edge
/// terms and a two-qubit X (Z) term at the top-left (bottom-right) corner.
pub fn build_sheet(n1: usize, n2: usize, couplings: &CouplingSpec) -> Result<ModelSpec, LatticeError> {
    build_planar(PlanarKind::Sheet, n1, n2, couplings)
}

/// Toric-code model on the torus: four-qubit terms only, periodic along both
/// directions, with the two global constraint products recorded.
pub fn build_torus(n1: usize, n2: usize, couplings: &CouplingSpec) -> Result<ModelSpec, LatticeError> {
    build_planar(PlanarKind::Torus, n1, n2, couplings)
}

/// Sets the couplings of one star and one plaquette to zero, keeping the
/// terms. Puncturing the reference plaquettes (1,1) removes the accumulation
/// contributions from the energy.
pub fn punctured_torus(
    spec: &ModelSpec,
    x_site: (usize, usize),
    z_site: (usize, usize),
) -> Result<ModelSpec, LatticeError> {
    if !matches!(spec.geometry(), Geometry::Torus { .. }) {
        return Err(LatticeError::NotATorus);
    }
    let x_label = star_label(x_site.0, x_site.1);
    let z_label = plaquette_label(z_site.0, z_site.1);
    spec.with_couplings(&[(&x_label, 0.0), (&z_label, 0.0)])
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermDto {
    label: String,
    pauli: String,
    coupling: f64,
}

#[derive(Serialize, Deserialize)]
struct ModelSpecDto {
    schema: String,
    geometry: Geometry,
    n_qubits: usize,
    qubit_labels: Vec<String>,
    terms: Vec<TermDto>,
    constraints: Vec<Vec<String>>,
}

impl Serialize for ModelSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let dto = ModelSpecDto {
            schema: "v1".into(),
            geometry: self.geometry.clone(),
            n_qubits: self.n_qubits,
            qubit_labels: self.qubit_labels.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| TermDto {
                    label: t.label.clone(),
                    pauli: t.pauli.to_string(),
                    coupling: t.coupling,
                })
                .collect(),
            constraints: self
                .constraints
                .iter()
                .map(|c| c.iter().map(|&i| self.terms[i].label.clone()).collect())
                .collect(),
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ModelSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let dto = ModelSpecDto::deserialize(deserializer)?;
        if dto.schema != "v1" {
            return Err(D::Error::custom(format!("unsupported schema {:?}", dto.schema)));
        }
        let mut terms = Vec::with_capacity(dto.terms.len());
        for t in dto.terms {
            let pauli = PauliString::parse(&t.pauli, dto.n_qubits).map_err(D::Error::custom)?;
            terms.push(Term {
                label: t.label,
                pauli,
                coupling: t.coupling,
            });
        }
        let mut constraints = Vec::with_capacity(dto.constraints.len());
        for labels in dto.constraints {
            let mut indices = Vec::with_capacity(labels.len());
            for label in labels {
                let i = terms
                    .iter()
                    .position(|t| t.label == label)
                    .ok_or_else(|| D::Error::custom(format!("constraint names unknown term {label:?}")))?;
                indices.push(i);
            }
            constraints.push(indices);
        }
        ModelSpec::new(dto.geometry, dto.n_qubits, dto.qubit_labels, terms, constraints)
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Sign;

    fn uniform() -> CouplingSpec {
        CouplingSpec::default()
    }

    fn assert_all_commute(spec: &ModelSpec) {
        for (i, a) in spec.terms().iter().enumerate() {
            for b in &spec.terms()[i + 1..] {
                assert!(
                    a.pauli.commutes(&b.pauli).unwrap(),
                    "{} and {} do not commute",
                    a.label,
                    b.label
                );
            }
        }
    }

    #[test]
    fn trestle_counts_and_wraparound() {
        let spec = build_trestle(3, &uniform()).unwrap();
        assert_eq!(spec.n_qubits(), 6);
        assert_eq!(spec.terms().len(), 6);
        // X3 wraps: x6 x1 x2 (0-based 5, 0, 1).
        let x3 = spec.term("X3").unwrap();
        assert_eq!(x3.pauli.support(), vec![0, 1, 5]);
        assert_all_commute(&spec);
        assert!(spec.constraints().is_empty());
    }

    #[test]
    fn trestle_term_support_pattern() {
        let spec = build_trestle(4, &uniform()).unwrap();
        let z2 = spec.term("Z2").unwrap();
        // Z_n covers 1-based qubits {2n-1, 2n, 2n+1}.
        assert_eq!(z2.pauli.support(), vec![2, 3, 4]);
    }

    #[test]
    fn trestle_too_small() {
        assert!(matches!(
            build_trestle(1, &uniform()),
            Err(LatticeError::TrestleTooSmall(1))
        ));
    }

    #[test]
    fn trestle_uniform_couplings_read_back() {
        let spec = build_trestle(3, &CouplingSpec::Uniform { iz: 1.0, ix: 1.0 }).unwrap();
        assert!(spec.terms().iter().all(|t| t.coupling == 1.0));
    }

    #[test]
    fn graph_path_and_triangle() {
        let path = build_graph(2, &[(1, 2)], &uniform()).unwrap();
        assert_eq!(path.n_qubits(), 3);
        assert_eq!(path.terms().len(), 3);
        assert_all_commute(&path);
        let bond = path.term("X(1,2)").unwrap();
        assert_eq!(bond.pauli.support(), vec![0, 1, 2]);

        let tri = build_graph(3, &[(1, 2), (2, 3), (3, 1)], &uniform()).unwrap();
        assert_eq!(tri.n_qubits(), 6);
        assert_eq!(tri.terms().len(), 6);
        assert_all_commute(&tri);
    }

    #[test]
    fn graph_star_term_weight_matches_degree() {
        // Degree-3 node: Z term covers the site plus its three bonds.
        let star = build_graph(4, &[(1, 2), (1, 3), (1, 4)], &uniform()).unwrap();
        let z1 = star.term("Z1").unwrap();
        assert_eq!(z1.pauli.weight(), 4);
    }

    #[test]
    fn graph_rejects_bad_input() {
        assert!(matches!(
            build_graph(1, &[], &uniform()),
            Err(LatticeError::IsolatedNode(1))
        ));
        assert!(matches!(
            build_graph(3, &[(1, 2)], &uniform()),
            Err(LatticeError::IsolatedNode(3))
        ));
        assert!(matches!(
            build_graph(2, &[(1, 1)], &uniform()),
            Err(LatticeError::SelfLoop(1, 1))
        ));
        assert!(matches!(
            build_graph(2, &[(1, 2), (2, 1)], &uniform()),
            Err(LatticeError::DuplicateBond(1, 2))
        ));
        assert!(matches!(
            build_graph(2, &[(1, 3)], &uniform()),
            Err(LatticeError::BondOutOfRange(1, 3, 2))
        ));
    }

    #[test]
    fn cylinder_counts_and_edge_weights() {
        let spec = build_cylinder(2, 2, &uniform()).unwrap();
        assert_eq!(spec.n_qubits(), 8);
        assert_eq!(spec.terms().len(), 8);
        assert_all_commute(&spec);
        // Exactly N1 three-qubit Z edge terms (bottom) and N1 three-qubit X
        // edge terms (top) for every size.
        for (n1, n2) in [(2usize, 3usize), (3, 2), (4, 4)] {
            let spec = build_cylinder(n1, n2, &uniform()).unwrap();
            let z3 = spec
                .terms()
                .iter()
                .filter(|t| t.label.starts_with('Z') && t.pauli.weight() == 3)
                .count();
            let x3 = spec
                .terms()
                .iter()
                .filter(|t| t.label.starts_with('X') && t.pauli.weight() == 3)
                .count();
            assert_eq!(z3, n1);
            assert_eq!(x3, n1);
            assert_all_commute(&spec);
        }
    }

    #[test]
    fn cylinder_too_small() {
        assert!(matches!(
            build_cylinder(1, 3, &uniform()),
            Err(LatticeError::PlanarTooSmall(1, 3))
        ));
    }

    #[test]
    fn sheet_has_two_two_qubit_terms() {
        let spec = build_sheet(2, 2, &uniform()).unwrap();
        assert_eq!(spec.n_qubits(), 8);
        assert_eq!(spec.terms().len(), 8);
        let two_qubit: Vec<&str> = spec
            .terms()
            .iter()
            .filter(|t| t.pauli.weight() == 2)
            .map(|t| t.label.as_str())
            .collect();
        assert_eq!(two_qubit, vec!["X(1,2)", "Z(5/2,1/2)"]);
        assert_all_commute(&spec);

        let spec = build_sheet(2, 3, &uniform()).unwrap();
        assert_eq!(spec.terms().len(), spec.n_qubits());
        assert_all_commute(&spec);
    }

    #[test]
    fn torus_constraints_fold_to_identity() {
        for (n1, n2) in [(2usize, 2usize), (3, 2), (2, 3), (3, 3)] {
            let spec = build_torus(n1, n2, &uniform()).unwrap();
            assert_eq!(spec.n_qubits(), 2 * n1 * n2);
            assert_eq!(spec.terms().len(), 2 * n1 * n2);
            assert_eq!(spec.constraints().len(), 2);
            assert_all_commute(&spec);
            for constraint in spec.constraints() {
                let mut prod = PauliString::identity(spec.n_qubits());
                for &i in constraint {
                    prod = prod.multiply(&spec.terms()[i].pauli).unwrap();
                }
                assert!(prod.is_identity_bits());
                assert_eq!(prod.sign(), Sign::Plus);
            }
        }
    }

    #[test]
    fn torus_terms_are_four_qubit() {
        let spec = build_torus(3, 3, &uniform()).unwrap();
        assert!(spec.terms().iter().all(|t| t.pauli.weight() == 4));
    }

    #[test]
    fn puncture_zeroes_two_couplings() {
        let spec = build_torus(2, 2, &uniform()).unwrap();
        let punctured = punctured_torus(&spec, (1, 1), (1, 1)).unwrap();
        assert_eq!(punctured.terms().len(), 8);
        let zeroed: Vec<&str> = punctured
            .terms()
            .iter()
            .filter(|t| t.coupling == 0.0)
            .map(|t| t.label.as_str())
            .collect();
        assert_eq!(zeroed, vec!["X(1,1)", "Z(3/2,1/2)"]);

        assert!(matches!(
            punctured_torus(&spec, (5, 1), (1, 1)),
            Err(LatticeError::UnknownTerm(_))
        ));
        let cyl = build_cylinder(2, 2, &uniform()).unwrap();
        assert!(matches!(
            punctured_torus(&cyl, (1, 1), (1, 1)),
            Err(LatticeError::NotATorus)
        ));
    }

    #[test]
    fn per_term_couplings_must_cover_exactly() {
        let mut map = BTreeMap::new();
        map.insert("X1".to_string(), 0.5);
        map.insert("X2".to_string(), 0.25);
        map.insert("Z1".to_string(), -0.5);
        let err = build_trestle(2, &CouplingSpec::PerTerm(map.clone()));
        assert!(matches!(err, Err(LatticeError::MissingCoupling(_))));

        map.insert("Z2".to_string(), -0.25);
        let spec = build_trestle(2, &CouplingSpec::PerTerm(map.clone())).unwrap();
        assert_eq!(spec.term("X2").unwrap().coupling, 0.25);

        map.insert("Z9".to_string(), 1.0);
        assert!(matches!(
            build_trestle(2, &CouplingSpec::PerTerm(map)),
            Err(LatticeError::UnknownCouplingLabel(_))
        ));
    }

    #[test]
    fn model_json_round_trip() {
        for spec in [
            build_trestle(3, &uniform()).unwrap(),
            build_graph(3, &[(1, 2), (2, 3)], &uniform()).unwrap(),
            build_sheet(2, 3, &uniform()).unwrap(),
            build_torus(2, 2, &uniform()).unwrap(),
        ] {
            let json = serde_json::to_string_pretty(&spec).unwrap();
            let back: ModelSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(spec, back);
            assert!(json.contains("\"schema\": \"v1\""));
        }
    }

    #[test]
    fn planar_layout_is_a_bijection() {
        let lay = PlanarLayout { n1: 3, n2: 4 };
        let mut seen = vec![false; lay.n_qubits()];
        for n1 in 1..=3 {
            for n2 in 1..=4 {
                for q in [lay.vertical(n1, n2), lay.horizontal(n1, n2)] {
                    assert!(!seen[q]);
                    seen[q] = true;
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!(lay.wrap1(0), 3);
        assert_eq!(lay.wrap1(4), 1);
        assert_eq!(lay.wrap2(5), 1);
    }
}
