//! Icicles of a spanning tree and the flow bijection onto internal faces.
//!
//! For a non-tree 1-cell `e` with endpoints `x`, `y`, the tree paths to `x`
//! and `y` share a longest common prefix `α` (the *tail*); the remainders
//! `β_x`, `β_y` together with `e` bound a simple circuit `η`. The icicle is
//! `α ∪ η ∪ inside(η)`; the *flow cell* `θ_T(e)` is the unique 2-cell of
//! the body with `e` on its boundary.

use crate::diagram::PlanarDiagram;
use crate::geodesics::{tree_path, SpanningTree};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Debug, Clone)]
pub struct Icicle {
    /// The non-tree 1-cell (canonical dart id).
    pub edge: usize,
    /// The dart of `edge` oriented from the β_x side to the β_y side.
    pub edge_dart: usize,
    /// Tail α: darts from the basepoint to the icicle basepoint `*_j`.
    pub tail: Vec<usize>,
    /// β_x: darts from `*_j` to the origin of `edge_dart`.
    pub side_x: Vec<usize>,
    /// β_y: darts from `*_j` to the head of `edge_dart`.
    pub side_y: Vec<usize>,
    /// Internal faces strictly inside η.
    pub body_faces: BTreeSet<usize>,
    /// 1-cells of the body: η plus everything inside.
    pub body_edges: BTreeSet<usize>,
    /// Vertices of the body.
    pub body_vertices: BTreeSet<usize>,
    /// θ_T(edge): the body face with `edge` on its boundary.
    pub flow_cell: usize,
}

impl Icicle {
    /// The vertex at which tail and body meet.
    pub fn inner_basepoint(&self, d: &PlanarDiagram) -> usize {
        match self.tail.last() {
            Some(&dart) => d.head(dart),
            None => d.darts.is_empty().then_some(0).unwrap_or(
                self.side_x
                    .first()
                    .map(|&dart| d.darts[dart].origin)
                    .unwrap_or(d.darts[self.edge_dart].origin),
            ),
        }
    }

    /// The circuit η = β_x · e · reverse(β_y) as darts from `*_j` around
    /// the body and back.
    pub fn eta(&self, d: &PlanarDiagram) -> Vec<usize> {
        let mut circuit = self.side_x.clone();
        circuit.push(self.edge_dart);
        circuit.extend(self.side_y.iter().rev().map(|&dart| d.twin(dart)));
        circuit
    }
}

/// Computes the icicle at a non-tree edge.
///
/// The inside of η is determined combinatorially: remove dual adjacencies
/// crossing η and flood the face graph from the outer face; the faces left
/// unreached are the inside.
pub fn icicle_at(d: &PlanarDiagram, t: &SpanningTree, edge: usize) -> Icicle {
    assert!(!t.is_tree_edge(edge), "icicle_at called on a tree edge");
    let edge_dart = edge; // canonical dart
    let x = d.darts[edge_dart].origin;
    let y = d.head(edge_dart);
    let px = tree_path(d, t, x);
    let py = tree_path(d, t, y);
    let common = px.iter().zip(py.iter()).take_while(|(a, b)| a == b).count();
    let tail = px[..common].to_vec();
    let side_x = px[common..].to_vec();
    let side_y = py[common..].to_vec();

    // η as a 1-cell set, asserting simplicity of the circuit.
    let mut icicle = Icicle {
        edge,
        edge_dart,
        tail,
        side_x,
        side_y,
        body_faces: BTreeSet::new(),
        body_edges: BTreeSet::new(),
        body_vertices: BTreeSet::new(),
        flow_cell: usize::MAX,
    };
    let eta = icicle.eta(d);
    let eta_edges: BTreeSet<usize> = eta.iter().map(|&dart| d.edge_of(dart)).collect();
    assert_eq!(eta_edges.len(), eta.len(), "η repeats a 1-cell");
    let eta_vertices: BTreeSet<usize> = eta.iter().map(|&dart| d.darts[dart].origin).collect();
    assert_eq!(eta_vertices.len(), eta.len(), "η repeats a vertex");

    // Dual flood fill from the outer face, never crossing η.
    let mut reached = vec![false; d.faces.len()];
    reached[d.outer_face] = true;
    let mut queue = VecDeque::from([d.outer_face]);
    while let Some(f) = queue.pop_front() {
        for &dart in &d.faces[f] {
            if eta_edges.contains(&d.edge_of(dart)) {
                continue;
            }
            let g = d.face_of_dart(d.twin(dart));
            if !reached[g] {
                reached[g] = true;
                queue.push_back(g);
            }
        }
    }
    let inside: BTreeSet<usize> =
        (0..d.faces.len()).filter(|&f| !reached[f]).collect();
    assert!(!inside.is_empty(), "a non-tree edge must bound at least one internal face");

    let mut body_edges = eta_edges;
    let mut body_vertices = eta_vertices;
    for &f in &inside {
        for &dart in &d.faces[f] {
            body_edges.insert(d.edge_of(dart));
            body_vertices.insert(d.darts[dart].origin);
        }
    }

    // θ_T(e): the side of e that was not reached from the outer face.
    let (fa, fb) = (d.face_of_dart(edge_dart), d.face_of_dart(d.twin(edge_dart)));
    let flow_cell = if inside.contains(&fa) { fa } else { fb };
    assert!(inside.contains(&flow_cell), "flow cell must lie inside η");

    icicle.body_faces = inside;
    icicle.body_edges = body_edges;
    icicle.body_vertices = body_vertices;
    icicle.flow_cell = flow_cell;
    icicle
}

/// θ_T for every non-tree edge, with the bijectivity assertion.
pub fn flow_function(d: &PlanarDiagram, t: &SpanningTree) -> BTreeMap<usize, usize> {
    let mut flow = BTreeMap::new();
    let mut hit = BTreeSet::new();
    for e in t.non_tree_edges(d) {
        let cell = icicle_at(d, t, e).flow_cell;
        assert!(hit.insert(cell), "icicle flow function must be injective");
        flow.insert(e, cell);
    }
    assert_eq!(flow.len(), d.internal_face_count(), "flow function must be onto");
    flow
}

/// Relationship between two icicles of the same tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nesting {
    EqualEdge,
    AInsideB,
    BInsideA,
    DisjointInteriors,
}

/// Classifies a pair of icicles: nested or interior-disjoint.
///
/// Distinct edges with mutual containment would contradict strict nesting
/// and are surfaced as a panic rather than silently classified.
pub fn nesting_compare(a: &Icicle, b: &Icicle) -> Nesting {
    if a.edge == b.edge {
        return Nesting::EqualEdge;
    }
    let b_in_a = a.body_edges.contains(&b.edge);
    let a_in_b = b.body_edges.contains(&a.edge);
    assert!(
        !(a_in_b && b_in_a),
        "distinct icicles at edges {} and {} contain each other",
        a.edge,
        b.edge
    );
    if b_in_a {
        assert!(
            b.body_faces.is_subset(&a.body_faces),
            "edge containment must imply icicle containment"
        );
        Nesting::BInsideA
    } else if a_in_b {
        assert!(
            a.body_faces.is_subset(&b.body_faces),
            "edge containment must imply icicle containment"
        );
        Nesting::AInsideB
    } else {
        assert!(
            a.body_faces.is_disjoint(&b.body_faces),
            "non-nested icicles must have disjoint interiors"
        );
        Nesting::DisjointInteriors
    }
}

/// The ⊆-maximal icicles among `icicles`, optionally restricted to a set
/// of edges. Output is ordered by edge id.
pub fn maximal_icicles<'a>(
    icicles: &'a [Icicle],
    restrict_to: Option<&BTreeSet<usize>>,
) -> Vec<&'a Icicle> {
    let pool: Vec<&Icicle> = icicles
        .iter()
        .filter(|ic| restrict_to.map_or(true, |s| s.contains(&ic.edge)))
        .collect();
    let mut maximal = Vec::new();
    for &a in &pool {
        let dominated = pool
            .iter()
            .any(|&b| b.edge != a.edge && nesting_compare(a, b) == Nesting::AInsideB);
        if !dominated {
            maximal.push(a);
        }
    }
    maximal.sort_by_key(|ic| ic.edge);
    maximal
}
