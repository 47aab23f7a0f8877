//! Van Kampen diagrams as rotation-system planar maps.
//!
//! A diagram is stored combinatorially: darts (directed edges) with twin
//! pairing and labels, plus a counterclockwise cyclic order of outgoing
//! darts at each vertex. Faces are the orbits of the face permutation
//! `d ↦ rotation-successor of twin(d)`; with that convention every face
//! orbit keeps its own face on the left, so internal faces are traversed
//! counterclockwise and the designated outer face clockwise.

use crate::presentation::{relator_cyclic_family, Letter, Presentation, Word};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Coarse distance measured in integer quarter units (value = quarters / 4).
///
/// Vertex distances are ≡ 0 (mod 4), edge-interior distances ≡ 2 (mod 4),
/// and 2-cell-interior distances ≡ 1 or 3 (mod 4).
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct QuarterDist(pub u32);

impl QuarterDist {
    pub const ZERO: QuarterDist = QuarterDist(0);

    pub fn from_edges(n: u32) -> Self {
        QuarterDist(4 * n)
    }

    pub fn quarters(self) -> u32 {
        self.0
    }

    /// Whole-unit value, rounding down; exact when quarters ≡ 0 (mod 4).
    pub fn whole_floor(self) -> u32 {
        self.0 / 4
    }
}

impl std::ops::Add for QuarterDist {
    type Output = QuarterDist;
    fn add(self, rhs: QuarterDist) -> QuarterDist {
        QuarterDist(self.0 + rhs.0)
    }
}

impl fmt::Display for QuarterDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 % 4 {
            0 => write!(f, "{}", self.0 / 4),
            2 => write!(f, "{}.5", self.0 / 4),
            1 => write!(f, "{}.25", self.0 / 4),
            _ => write!(f, "{}.75", self.0 / 4),
        }
    }
}

/// A directed edge of the map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dart {
    pub id: usize,
    pub origin: usize,
    pub label: Letter,
    pub twin: usize,
}

/// Raw map data as read from a diagram JSON file, prior to validation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawDiagram {
    pub vertices: usize,
    pub darts: Vec<RawDart>,
    pub rotation: Vec<Vec<usize>>,
    pub basepoint: usize,
    #[serde(default)]
    pub boundary_start: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawDart {
    pub id: usize,
    pub origin: usize,
    pub label: String,
    pub twin: usize,
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("dart ids must be 0..n in order (found {0})")]
    DartIds(usize),
    #[error("dart {0}: origin out of range")]
    OriginRange(usize),
    #[error("dart {0}: unknown label `{1}`")]
    UnknownLabel(usize, String),
    #[error("dart {0}: twin pairing is not a fixed-point-free involution")]
    Twin(usize),
    #[error("dart {0}: twin label is not the formal inverse")]
    TwinLabel(usize),
    #[error("rotation table must have one cyclic order per vertex")]
    RotationShape,
    #[error("vertex {0}: rotation is not a permutation of its outgoing darts")]
    Rotation(usize),
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("Euler check failed: {faces} internal faces, {edges} edges, {vertices} vertices")]
    Euler { faces: usize, edges: usize, vertices: usize },
    #[error("face {0}: boundary word is not a cyclic conjugate of a relator or its inverse")]
    FaceWord(usize),
    #[error("basepoint {0} does not lie on the outer face")]
    BasepointNotOnBoundary(usize),
    #[error("boundary_start {0} does not start at the basepoint")]
    BoundaryStartOrigin(usize),
    #[error("boundary_start required for a diagram with edges")]
    MissingBoundaryStart,
    #[error("empty diagram must consist of exactly the basepoint vertex")]
    EmptyShape,
}

/// A validated van Kampen diagram.
///
/// `faces` are the dart orbits of the face permutation; `outer_face`
/// indexes into it. Immutable after validation.
#[derive(Debug, Clone)]
pub struct PlanarDiagram {
    pub vertex_count: usize,
    pub darts: Vec<Dart>,
    pub rotation: Vec<Vec<usize>>,
    pub basepoint: usize,
    /// First dart of the boundary circuit; `None` only for the single-vertex diagram.
    pub boundary_start: Option<usize>,
    pub faces: Vec<Vec<usize>>,
    pub outer_face: usize,
}

impl PlanarDiagram {
    pub fn head(&self, dart: usize) -> usize {
        self.darts[self.darts[dart].twin].origin
    }

    pub fn twin(&self, dart: usize) -> usize {
        self.darts[dart].twin
    }

    /// Canonical 1-cell id of a dart: the smaller id of the twin pair.
    pub fn edge_of(&self, dart: usize) -> usize {
        dart.min(self.darts[dart].twin)
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    /// All 1-cell ids (canonical darts) in increasing order.
    pub fn edges(&self) -> Vec<usize> {
        (0..self.darts.len()).filter(|&d| d < self.darts[d].twin).collect()
    }

    pub fn rotation_next(&self, dart: usize) -> usize {
        let rot = &self.rotation[self.darts[dart].origin];
        let pos = rot.iter().position(|&d| d == dart).unwrap();
        rot[(pos + 1) % rot.len()]
    }

    pub fn rotation_prev(&self, dart: usize) -> usize {
        let rot = &self.rotation[self.darts[dart].origin];
        let pos = rot.iter().position(|&d| d == dart).unwrap();
        rot[(pos + rot.len() - 1) % rot.len()]
    }

    /// Face permutation: the next dart along the face left of `dart`.
    ///
    /// With counterclockwise rotations, the face to the left of a dart is
    /// continued by the rotation-*predecessor* of its twin.
    pub fn face_next(&self, dart: usize) -> usize {
        self.rotation_prev(self.twin(dart))
    }

    /// Index of the face orbit containing `dart` (the face on its left).
    pub fn face_of_dart(&self, dart: usize) -> usize {
        self.faces
            .iter()
            .position(|orbit| orbit.contains(&dart))
            .expect("every dart lies in exactly one face orbit")
    }

    pub fn internal_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer_face)
    }

    pub fn internal_face_count(&self) -> usize {
        self.faces.len().saturating_sub(1)
    }

    /// The two faces incident to a 1-cell (equal for an edge with the same
    /// face on both sides).
    pub fn faces_of_edge(&self, edge: usize) -> (usize, usize) {
        (self.face_of_dart(edge), self.face_of_dart(self.twin(edge)))
    }

    /// The boundary circuit γ: darts read counterclockwise around the
    /// diagram starting at the basepoint.
    ///
    /// The outer face orbit traverses the boundary clockwise; γ is its
    /// twin-reversal, anchored at `boundary_start`.
    pub fn boundary_circuit(&self) -> Vec<usize> {
        let Some(start) = self.boundary_start else {
            return Vec::new();
        };
        let orbit = self.face_orbit(self.twin(start));
        let mut circuit = Vec::with_capacity(orbit.len());
        circuit.push(self.twin(orbit[0]));
        for &d in orbit.iter().skip(1).rev() {
            circuit.push(self.twin(d));
        }
        circuit
    }

    /// The word read along the boundary circuit.
    pub fn boundary_word(&self) -> Word {
        Word(self.boundary_circuit().iter().map(|&d| self.darts[d].label).collect())
    }

    /// Vertex sequence p_0, …, p_n (= p_0) traversed by the boundary circuit.
    pub fn boundary_vertex_path(&self) -> Vec<usize> {
        let circuit = self.boundary_circuit();
        let mut path = vec![self.basepoint];
        for &d in &circuit {
            path.push(self.head(d));
        }
        path
    }

    /// Vertices on the outer face, deduplicated.
    pub fn boundary_vertices(&self) -> BTreeSet<usize> {
        if self.darts.is_empty() {
            return BTreeSet::from([self.basepoint]);
        }
        self.faces[self.outer_face].iter().map(|&d| self.darts[d].origin).collect()
    }

    /// 1-cells on the outer face, deduplicated.
    pub fn boundary_edges(&self) -> BTreeSet<usize> {
        self.faces[self.outer_face].iter().map(|&d| self.edge_of(d)).collect()
    }

    fn face_orbit(&self, start: usize) -> Vec<usize> {
        let mut orbit = vec![start];
        let mut d = self.face_next(start);
        while d != start {
            orbit.push(d);
            d = self.face_next(d);
        }
        orbit
    }

    /// Serializes back to the raw JSON form.
    pub fn to_raw(&self, p: &Presentation) -> RawDiagram {
        RawDiagram {
            vertices: self.vertex_count,
            darts: self
                .darts
                .iter()
                .map(|d| RawDart {
                    id: d.id,
                    origin: d.origin,
                    label: format!(
                        "{}{}",
                        p.generators[d.label.gen].name,
                        if d.label.inverse { "^-1" } else { "" }
                    ),
                    twin: d.twin,
                })
                .collect(),
            rotation: self.rotation.clone(),
            basepoint: self.basepoint,
            boundary_start: self.boundary_start,
        }
    }
}

fn parse_label(p: &Presentation, s: &str) -> Option<Letter> {
    if let Some(name) = s.strip_suffix("^-1") {
        return p.generator_index(name).map(|g| Letter::new(g, true));
    }
    if let Some(name) = s.strip_suffix('\'') {
        return p.generator_index(name).map(|g| Letter::new(g, true));
    }
    p.generator_index(s).map(|g| Letter::new(g, false))
}

/// Validates raw map data against a presentation and computes face orbits.
///
/// Checks: structural well-formedness, twin involution with inverse labels,
/// rotation consistency, connectivity, the Euler relation
/// `#internal faces = #edges − #vertices + 1`, internal face words lying in
/// the relator cyclic family, and the basepoint lying on the outer face.
pub fn validate_diagram(
    p: &Presentation,
    raw: &RawDiagram,
) -> Result<PlanarDiagram, DiagramError> {
    // Degenerate diagram for the empty word: one vertex, no darts.
    if raw.darts.is_empty() {
        if raw.vertices != 1 || raw.basepoint != 0 {
            return Err(DiagramError::EmptyShape);
        }
        return Ok(PlanarDiagram {
            vertex_count: 1,
            darts: Vec::new(),
            rotation: vec![Vec::new()],
            basepoint: 0,
            boundary_start: None,
            faces: vec![Vec::new()],
            outer_face: 0,
        });
    }

    let n_darts = raw.darts.len();
    let mut darts = Vec::with_capacity(n_darts);
    for (i, rd) in raw.darts.iter().enumerate() {
        if rd.id != i {
            return Err(DiagramError::DartIds(rd.id));
        }
        if rd.origin >= raw.vertices {
            return Err(DiagramError::OriginRange(i));
        }
        let label =
            parse_label(p, &rd.label).ok_or_else(|| DiagramError::UnknownLabel(i, rd.label.clone()))?;
        if rd.twin >= n_darts {
            return Err(DiagramError::Twin(i));
        }
        darts.push(Dart { id: i, origin: rd.origin, label, twin: rd.twin });
    }
    for d in 0..n_darts {
        let t = darts[d].twin;
        if t == d || darts[t].twin != d {
            return Err(DiagramError::Twin(d));
        }
        if darts[t].label != darts[d].label.inv() {
            return Err(DiagramError::TwinLabel(d));
        }
    }

    if raw.rotation.len() != raw.vertices {
        return Err(DiagramError::RotationShape);
    }
    let mut seen = vec![false; n_darts];
    for (v, rot) in raw.rotation.iter().enumerate() {
        for &d in rot {
            if d >= n_darts || darts[d].origin != v || seen[d] {
                return Err(DiagramError::Rotation(v));
            }
            seen[d] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(DiagramError::RotationShape);
    }

    let boundary_start = raw.boundary_start.ok_or(DiagramError::MissingBoundaryStart)?;
    if boundary_start >= n_darts {
        return Err(DiagramError::MissingBoundaryStart);
    }

    let diagram = PlanarDiagram {
        vertex_count: raw.vertices,
        darts,
        rotation: raw.rotation.clone(),
        basepoint: raw.basepoint,
        boundary_start: Some(boundary_start),
        faces: Vec::new(),
        outer_face: 0,
    };

    // Connectivity on the 1-skeleton.
    let mut visited = vec![false; raw.vertices];
    let mut queue = VecDeque::from([diagram.darts[0].origin]);
    visited[diagram.darts[0].origin] = true;
    while let Some(v) = queue.pop_front() {
        for &d in &diagram.rotation[v] {
            let u = diagram.head(d);
            if !visited[u] {
                visited[u] = true;
                queue.push_back(u);
            }
        }
    }
    if visited.iter().any(|&s| !s) {
        return Err(DiagramError::Disconnected);
    }

    // Face orbits of the face permutation.
    let mut face_of = vec![usize::MAX; n_darts];
    let mut faces = Vec::new();
    for d in 0..n_darts {
        if face_of[d] != usize::MAX {
            continue;
        }
        let orbit = diagram.face_orbit(d);
        for &x in &orbit {
            face_of[x] = faces.len();
        }
        faces.push(orbit);
    }
    let outer_face = face_of[diagram.darts[boundary_start].twin];

    let edges = n_darts / 2;
    let internal = faces.len() - 1;
    if internal != edges + 1 - raw.vertices {
        return Err(DiagramError::Euler { faces: internal, edges, vertices: raw.vertices });
    }

    let family = relator_cyclic_family(p);
    for (f, orbit) in faces.iter().enumerate() {
        if f == outer_face {
            continue;
        }
        let word = Word(orbit.iter().map(|&d| diagram.darts[d].label).collect());
        if !family.contains(&word) {
            return Err(DiagramError::FaceWord(f));
        }
    }

    let mut diagram = PlanarDiagram { faces, outer_face, ..diagram };
    // Re-anchor: boundary circuit must start at the basepoint.
    if diagram.darts[boundary_start].origin != raw.basepoint {
        return Err(DiagramError::BoundaryStartOrigin(boundary_start));
    }
    if !diagram.faces[outer_face].iter().any(|&d| diagram.darts[d].origin == raw.basepoint) {
        return Err(DiagramError::BasepointNotOnBoundary(raw.basepoint));
    }
    diagram.boundary_start = Some(boundary_start);
    Ok(diagram)
}

/// Coarse distances from a source vertex: breadth-first on the 1-skeleton,
/// extended to edge and face interiors by the quarter-unit rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceField {
    pub source: usize,
    pub vertex: Vec<QuarterDist>,
}

impl DistanceField {
    pub fn vertex(&self, v: usize) -> QuarterDist {
        self.vertex[v]
    }

    /// Edge-interior value: min of the endpoint values plus half a unit.
    pub fn edge(&self, d: &PlanarDiagram, edge: usize) -> QuarterDist {
        let a = self.vertex[d.darts[edge].origin].0;
        let b = self.vertex[d.head(edge)].0;
        QuarterDist(a.min(b) + 2)
    }

    /// Face-interior value: max over the boundary 1-cells of the edge value,
    /// minus a quarter. The witness point for each boundary 1-cell is read
    /// at an interior point of the 1-cell, which gives a single well-defined
    /// value per face.
    pub fn face(&self, d: &PlanarDiagram, face: usize) -> QuarterDist {
        let max_edge = d.faces[face]
            .iter()
            .map(|&dart| self.edge(d, d.edge_of(dart)).0)
            .max()
            .expect("internal faces have nonempty boundary");
        QuarterDist(max_edge - 1)
    }
}

/// Breadth-first coarse distance field on the 1-skeleton.
pub fn coarse_distance_field(d: &PlanarDiagram, source: usize) -> DistanceField {
    let dist = bfs_edge_distances(d, source, None);
    DistanceField {
        source,
        vertex: dist
            .into_iter()
            .map(|x| QuarterDist::from_edges(x.expect("diagram is connected")))
            .collect(),
    }
}

/// BFS edge-count distances, optionally restricted to a set of allowed
/// 1-cells. Unreachable vertices yield `None`.
pub fn bfs_edge_distances(
    d: &PlanarDiagram,
    source: usize,
    allowed_edges: Option<&BTreeSet<usize>>,
) -> Vec<Option<u32>> {
    let mut dist = vec![None; d.vertex_count];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap();
        for &dart in &d.rotation[v] {
            if let Some(allowed) = allowed_edges {
                if !allowed.contains(&d.edge_of(dart)) {
                    continue;
                }
            }
            let u = d.head(dart);
            if dist[u].is_none() {
                dist[u] = Some(dv + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Intrinsic diameter: max vertex coarse distance from the basepoint.
pub fn idiam(d: &PlanarDiagram) -> QuarterDist {
    let field = coarse_distance_field(d, d.basepoint);
    field.vertex.iter().copied().max().unwrap_or(QuarterDist::ZERO)
}

/// Unbased intrinsic diameter: max over all vertex pairs of the shortest
/// path distance within the diagram.
pub fn unbased_idiam(d: &PlanarDiagram) -> QuarterDist {
    let mut best = 0;
    for v in 0..d.vertex_count {
        for du in bfs_edge_distances(d, v, None).into_iter().flatten() {
            best = best.max(du);
        }
    }
    QuarterDist::from_edges(best)
}

/// Cumulative boundary diameter: sum over boundary vertices of their coarse
/// distance from the basepoint, in quarters. Each boundary vertex counts
/// once regardless of boundary-circuit multiplicity.
pub fn bdiam(d: &PlanarDiagram) -> u64 {
    let field = coarse_distance_field(d, d.basepoint);
    d.boundary_vertices().iter().map(|&v| field.vertex[v].0 as u64).sum()
}

/// True iff every boundary vertex is reachable from the basepoint by a
/// geodesic lying in the boundary subcomplex.
pub fn geodesically_bounded(d: &PlanarDiagram) -> bool {
    if d.darts.is_empty() {
        return true;
    }
    let full = bfs_edge_distances(d, d.basepoint, None);
    let boundary = bfs_edge_distances(d, d.basepoint, Some(&d.boundary_edges()));
    d.boundary_vertices().iter().all(|&v| full[v] == boundary[v])
}

/// Witness vertex for a geodesic-boundedness failure: the boundary vertex
/// (smallest id) whose boundary distance exceeds its diagram distance.
pub fn geodesic_bound_witness(d: &PlanarDiagram) -> Option<usize> {
    if d.darts.is_empty() {
        return None;
    }
    let full = bfs_edge_distances(d, d.basepoint, None);
    let boundary = bfs_edge_distances(d, d.basepoint, Some(&d.boundary_edges()));
    d.boundary_vertices().into_iter().find(|&v| full[v] != boundary[v])
}

/// True iff the boundary circuit is simple: no vertex visited twice and no
/// 1-cell used twice. The single-vertex diagram is not simply bounded.
pub fn simply_bounded(d: &PlanarDiagram) -> bool {
    if d.darts.is_empty() {
        return false;
    }
    let orbit = &d.faces[d.outer_face];
    let vertices: BTreeSet<usize> = orbit.iter().map(|&x| d.darts[x].origin).collect();
    let edges: BTreeSet<usize> = orbit.iter().map(|&x| d.edge_of(x)).collect();
    vertices.len() == orbit.len() && edges.len() == orbit.len()
}

#[cfg(test)]
pub mod fixtures {
    use super::*;
    use crate::presentation::parse_presentation;

    pub fn z2() -> Presentation {
        parse_presentation("gens: a,b\nrels: aba^-1b^-1\n", false).unwrap()
    }

    /// The unit commutator square: boundary aba⁻¹b⁻¹, one internal face.
    ///
    /// Vertices: v0 bottom-left (basepoint), v1 bottom-right, v2 top-right,
    /// v3 top-left. Darts: d0/d1 bottom (a), d2/d3 right (b), d4/d5 top
    /// (a⁻¹ from v2), d6/d7 left (b⁻¹ from v3).
    pub fn s1_raw() -> RawDiagram {
        let dart = |id, origin, label: &str, twin| RawDart {
            id,
            origin,
            label: label.to_string(),
            twin,
        };
        RawDiagram {
            vertices: 4,
            darts: vec![
                dart(0, 0, "a", 1),
                dart(1, 1, "a^-1", 0),
                dart(2, 1, "b", 3),
                dart(3, 2, "b^-1", 2),
                dart(4, 2, "a^-1", 5),
                dart(5, 3, "a", 4),
                dart(6, 3, "b^-1", 7),
                dart(7, 0, "b", 6),
            ],
            rotation: vec![vec![0, 7], vec![2, 1], vec![4, 3], vec![5, 6]],
            basepoint: 0,
            boundary_start: Some(0),
        }
    }

    pub fn s1() -> PlanarDiagram {
        validate_diagram(&z2(), &s1_raw()).unwrap()
    }

    /// 2×1 rectangle of two commutator squares; boundary a a b a⁻¹ a⁻¹ b⁻¹.
    ///
    /// Vertices: v0..v2 along the bottom (v0 basepoint), v3..v5 along the
    /// top right-to-left; middle edge v1–v4 labeled b (darts 12/13).
    pub fn rect_raw() -> RawDiagram {
        let dart = |id, origin, label: &str, twin| RawDart {
            id,
            origin,
            label: label.to_string(),
            twin,
        };
        RawDiagram {
            vertices: 6,
            darts: vec![
                dart(0, 0, "a", 1),
                dart(1, 1, "a^-1", 0),
                dart(2, 1, "a", 3),
                dart(3, 2, "a^-1", 2),
                dart(4, 2, "b", 5),
                dart(5, 3, "b^-1", 4),
                dart(6, 3, "a^-1", 7),
                dart(7, 4, "a", 6),
                dart(8, 4, "a^-1", 9),
                dart(9, 5, "a", 8),
                dart(10, 5, "b^-1", 11),
                dart(11, 0, "b", 10),
                dart(12, 1, "b", 13),
                dart(13, 4, "b^-1", 12),
            ],
            rotation: vec![
                vec![0, 11],
                vec![2, 12, 1],
                vec![4, 3],
                vec![6, 5],
                vec![7, 8, 13],
                vec![9, 10],
            ],
            basepoint: 0,
            boundary_start: Some(0),
        }
    }

    pub fn rect() -> PlanarDiagram {
        validate_diagram(&z2(), &rect_raw()).unwrap()
    }

    pub fn empty_raw() -> RawDiagram {
        RawDiagram {
            vertices: 1,
            darts: Vec::new(),
            rotation: vec![Vec::new()],
            basepoint: 0,
            boundary_start: None,
        }
    }

    /// A single spur edge labeled a: boundary word aa⁻¹, no faces.
    pub fn spur_raw() -> RawDiagram {
        RawDiagram {
            vertices: 2,
            darts: vec![
                RawDart { id: 0, origin: 0, label: "a".into(), twin: 1 },
                RawDart { id: 1, origin: 1, label: "a^-1".into(), twin: 0 },
            ],
            rotation: vec![vec![0], vec![1]],
            basepoint: 0,
            boundary_start: Some(0),
        }
    }
}
