//! Spanning trees of diagram geodesics rooted at the basepoint.

use crate::diagram::{bfs_edge_distances, PlanarDiagram, QuarterDist};
use std::collections::BTreeSet;

/// A geodesic spanning tree out of the basepoint.
///
/// `parent_dart[v]` points from `v` toward its parent; `depth[v]` equals
/// the coarse distance `d_Δ(*, v)`, so every tree path is a geodesic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub parent_dart: Vec<Option<usize>>,
    pub tree_edges: BTreeSet<usize>,
    pub depth: Vec<QuarterDist>,
}

impl SpanningTree {
    pub fn is_tree_edge(&self, edge: usize) -> bool {
        self.tree_edges.contains(&edge)
    }

    /// Non-tree 1-cells of the diagram in increasing id order.
    pub fn non_tree_edges(&self, d: &PlanarDiagram) -> Vec<usize> {
        d.edges().into_iter().filter(|e| !self.is_tree_edge(*e)).collect()
    }
}

/// Breadth-first geodesic spanning tree.
///
/// Deterministic: among the darts from `v` into the previous BFS level, the
/// one with the smallest id becomes the parent dart.
pub fn bfs_geodesic_tree(d: &PlanarDiagram) -> SpanningTree {
    let dist: Vec<u32> = bfs_edge_distances(d, d.basepoint, None)
        .into_iter()
        .map(|x| x.expect("diagram is connected"))
        .collect();
    let mut parent_dart = vec![None; d.vertex_count];
    let mut tree_edges = BTreeSet::new();
    for v in 0..d.vertex_count {
        if v == d.basepoint {
            continue;
        }
        let best = d.rotation[v]
            .iter()
            .copied()
            .filter(|&dart| dist[d.head(dart)] + 1 == dist[v])
            .min()
            .expect("every non-basepoint vertex has a neighbor one level up");
        parent_dart[v] = Some(best);
        tree_edges.insert(d.edge_of(best));
    }
    SpanningTree {
        parent_dart,
        tree_edges,
        depth: dist.into_iter().map(QuarterDist::from_edges).collect(),
    }
}

/// The root-to-`v` dart sequence along the tree (empty for the basepoint).
pub fn tree_path(d: &PlanarDiagram, t: &SpanningTree, v: usize) -> Vec<usize> {
    let mut rev = Vec::new();
    let mut cur = v;
    while let Some(up) = t.parent_dart[cur] {
        rev.push(d.twin(up));
        cur = d.head(up);
    }
    rev.reverse();
    rev
}

/// A forest kept from a previous diagram's tree, expressed in the ids of
/// the new diagram, with its claimed geodesic depths.
#[derive(Debug, Clone, Default)]
pub struct KeptForest {
    /// `(vertex, parent dart)` pairs; the basepoint has no entry.
    pub parent_dart: Vec<(usize, usize)>,
}

/// Extends a kept geodesic forest to a full geodesic spanning tree of
/// `d_new`, asserting that the kept tree is still geodesic.
///
/// The kept forest must contain the basepoint component; uncovered vertices
/// are attached breadth-first with the smallest-dart-id tie-break.
/// Panics if any kept parent dart fails to descend one BFS level — the
/// surgery pipeline guarantees this cannot happen for its own outputs, so a
/// failure signals an implementation bug.
pub fn verify_partial_geodesic_extension(d_new: &PlanarDiagram, kept: &KeptForest) -> SpanningTree {
    let dist: Vec<u32> = bfs_edge_distances(d_new, d_new.basepoint, None)
        .into_iter()
        .map(|x| x.expect("diagram is connected"))
        .collect();
    let mut parent_dart = vec![None; d_new.vertex_count];
    for &(v, dart) in &kept.parent_dart {
        assert!(
            d_new.darts[dart].origin == v && dist[d_new.head(dart)] + 1 == dist[v],
            "kept tree not geodesic in new diagram (vertex {v})"
        );
        parent_dart[v] = Some(dart);
    }
    let mut tree_edges = BTreeSet::new();
    for v in 0..d_new.vertex_count {
        if v == d_new.basepoint {
            continue;
        }
        if parent_dart[v].is_none() {
            let best = d_new.rotation[v]
                .iter()
                .copied()
                .filter(|&dart| dist[d_new.head(dart)] + 1 == dist[v])
                .min()
                .expect("every non-basepoint vertex has a neighbor one level up");
            parent_dart[v] = Some(best);
        }
        tree_edges.insert(d_new.edge_of(parent_dart[v].unwrap()));
    }
    SpanningTree {
        parent_dart,
        tree_edges,
        depth: dist.into_iter().map(QuarterDist::from_edges).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;
    use crate::diagram::{coarse_distance_field, validate_diagram};

    #[test]
    fn s1_tree_structure() {
        let d = s1();
        let t = bfs_geodesic_tree(&d);
        assert_eq!(t.tree_edges.len(), 3);
        assert_eq!(t.depth.iter().map(|q| q.0).collect::<Vec<_>>(), vec![0, 4, 8, 4]);
        // v2 is reached through its smallest candidate dart: dart 3 (to v1)
        // vs dart 4 (to v3) — dart 3 wins.
        assert_eq!(t.parent_dart[2], Some(3));
        assert_eq!(t.non_tree_edges(&d), vec![d.edge_of(4)]);
    }

    #[test]
    fn s1_tree_paths() {
        let d = s1();
        let t = bfs_geodesic_tree(&d);
        assert!(tree_path(&d, &t, d.basepoint).is_empty());
        let path = tree_path(&d, &t, 2);
        assert_eq!(path.len(), 2);
        assert_eq!(d.darts[path[0]].origin, 0);
        assert_eq!(d.head(path[1]), 2);
        // Structural recursion: path to v = path to parent + one dart.
        let parent = d.head(t.parent_dart[2].unwrap());
        let mut prefix = tree_path(&d, &t, parent);
        prefix.push(d.twin(t.parent_dart[2].unwrap()));
        assert_eq!(path, prefix);
    }

    #[test]
    fn empty_tree_for_single_vertex() {
        let d = validate_diagram(&z2(), &empty_raw()).unwrap();
        let t = bfs_geodesic_tree(&d);
        assert!(t.tree_edges.is_empty());
    }

    #[test]
    fn depths_match_distance_field() {
        let d = s1();
        let t = bfs_geodesic_tree(&d);
        let f = coarse_distance_field(&d, d.basepoint);
        assert_eq!(t.depth, f.vertex);
    }

    #[test]
    fn extension_with_empty_seed_matches_bfs() {
        let d = s1();
        let fresh = bfs_geodesic_tree(&d);
        let extended = verify_partial_geodesic_extension(&d, &KeptForest::default());
        assert_eq!(fresh, extended);
    }

    #[test]
    fn extension_keeps_full_tree_unchanged() {
        let d = s1();
        let fresh = bfs_geodesic_tree(&d);
        let kept = KeptForest {
            parent_dart: fresh
                .parent_dart
                .iter()
                .enumerate()
                .filter_map(|(v, p)| p.map(|dart| (v, dart)))
                .collect(),
        };
        assert_eq!(verify_partial_geodesic_extension(&d, &kept), fresh);
    }

    #[test]
    #[should_panic(expected = "kept tree not geodesic")]
    fn non_geodesic_seed_is_rejected() {
        let d = s1();
        // Parent dart for v1 pointing away from the basepoint (to v2).
        let kept = KeptForest { parent_dart: vec![(1, 2)] };
        verify_partial_geodesic_extension(&d, &kept);
    }
}
