//! Discrete model of tree-respecting 1-combings.
//!
//! A 1-combing respecting a spanning tree `T` sweeps each icicle through
//! its flow cell; the data that determines combing-path images is the tree
//! path plus the sequence of 2-cell crossings. We therefore record, per
//! non-tree edge `e`, which 1-skeleton features a backward path can enter
//! `θ_T(e)` from: everything on `∂θ_T(e)` except the interior of `e`
//! itself. Strict icicle nesting makes this crossing relation acyclic.

use crate::diagram::{coarse_distance_field, DistanceField, PlanarDiagram, QuarterDist};
use crate::geodesics::SpanningTree;
use crate::icicle::icicle_at;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CombingError {
    #[error("tame function `{tag}` is not defined at {arg} quarters")]
    DomainGap { tag: String, arg: u32 },
    #[error("tame function `{0}` is not non-decreasing")]
    NotMonotone(String),
    #[error("malformed crossing chain at position {0}")]
    MalformedChain(usize),
}

/// A non-decreasing map from quarter distances to quarter distances,
/// tabulated on a finite domain, with a symbolic tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TameFunctionRepr", into = "TameFunctionRepr")]
pub struct TameFunction {
    table: BTreeMap<u32, u32>,
    pub tag: String,
}

#[derive(Serialize, Deserialize, Clone)]
struct TameFunctionRepr {
    tag: String,
    table: Vec<(u32, u32)>,
}

impl From<TameFunction> for TameFunctionRepr {
    fn from(f: TameFunction) -> Self {
        TameFunctionRepr { tag: f.tag, table: f.table.into_iter().collect() }
    }
}

impl TryFrom<TameFunctionRepr> for TameFunction {
    type Error = String;
    fn try_from(r: TameFunctionRepr) -> Result<Self, String> {
        TameFunction::new(r.table.into_iter().collect(), r.tag)
            .map_err(|e| e.to_string())
    }
}

impl TameFunction {
    pub fn new(table: BTreeMap<u32, u32>, tag: impl Into<String>) -> Result<Self, CombingError> {
        let tag = tag.into();
        let mut prev: Option<u32> = None;
        for &v in table.values() {
            if let Some(p) = prev {
                if v < p {
                    return Err(CombingError::NotMonotone(tag));
                }
            }
            prev = Some(v);
        }
        Ok(TameFunction { table, tag })
    }

    /// Identity function tabulated on `0..=max` quarters.
    pub fn identity(max: u32) -> Self {
        TameFunction {
            table: (0..=max).map(|q| (q, q)).collect(),
            tag: "identity".into(),
        }
    }

    /// `n ↦ n + shift` quarters, tabulated on `0..=max`.
    pub fn shifted_identity(shift: u32, max: u32) -> Self {
        TameFunction {
            table: (0..=max).map(|q| (q, q + shift)).collect(),
            tag: format!("identity+{shift}q"),
        }
    }

    pub fn eval(&self, q: QuarterDist) -> Result<QuarterDist, CombingError> {
        self.table
            .get(&q.0)
            .map(|&v| QuarterDist(v))
            .ok_or_else(|| CombingError::DomainGap { tag: self.tag.clone(), arg: q.0 })
    }

    pub fn domain(&self) -> impl Iterator<Item = QuarterDist> + '_ {
        self.table.keys().map(|&q| QuarterDist(q))
    }

    pub fn table(&self) -> &BTreeMap<u32, u32> {
        &self.table
    }
}

/// The crossing relation of the discrete combing.
#[derive(Debug, Clone)]
pub struct CrossingDag {
    /// Per non-tree edge: 1-skeleton features on `∂θ_T(e) ∖ interior(e)`.
    pub arcs: BTreeMap<usize, Successors>,
    /// Non-tree edges in a topological order (arc targets come later).
    pub topo: Vec<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct Successors {
    /// Non-tree 1-cells on the flow-cell boundary (DAG arcs proper).
    pub non_tree: Vec<usize>,
    /// Tree 1-cells on the flow-cell boundary.
    pub tree_edges: Vec<usize>,
    /// Vertices on the flow-cell boundary.
    pub vertices: Vec<usize>,
}

/// Builds the crossing DAG from the verified flow bijection.
///
/// Panics on a cycle: acyclicity follows from strict icicle nesting, so a
/// cycle signals a map or embedding bug.
pub fn build_crossing_dag(
    d: &PlanarDiagram,
    t: &SpanningTree,
    flow: &BTreeMap<usize, usize>,
) -> CrossingDag {
    let mut arcs = BTreeMap::new();
    for (&e, &cell) in flow {
        let mut succ = Successors::default();
        let mut seen_edges = BTreeSet::new();
        let mut seen_vertices = BTreeSet::new();
        for &dart in &d.faces[cell] {
            let v = d.darts[dart].origin;
            if seen_vertices.insert(v) {
                succ.vertices.push(v);
            }
            let e2 = d.edge_of(dart);
            if e2 == e || !seen_edges.insert(e2) {
                continue;
            }
            if t.is_tree_edge(e2) {
                succ.tree_edges.push(e2);
            } else {
                succ.non_tree.push(e2);
            }
        }
        succ.vertices.sort_unstable();
        succ.tree_edges.sort_unstable();
        succ.non_tree.sort_unstable();
        arcs.insert(e, succ);
    }

    // Kahn's algorithm over the non-tree arcs.
    let mut indegree: BTreeMap<usize, usize> = arcs.keys().map(|&e| (e, 0)).collect();
    for succ in arcs.values() {
        for &e2 in &succ.non_tree {
            *indegree.get_mut(&e2).unwrap() += 1;
        }
    }
    let mut ready: BTreeSet<usize> = indegree
        .iter()
        .filter_map(|(&e, &deg)| (deg == 0).then_some(e))
        .collect();
    let mut topo = Vec::with_capacity(arcs.len());
    while let Some(&e) = ready.iter().next() {
        ready.remove(&e);
        topo.push(e);
        for &e2 in &arcs[&e].non_tree {
            let deg = indegree.get_mut(&e2).unwrap();
            *deg -= 1;
            if *deg == 0 {
                ready.insert(e2);
            }
        }
    }
    assert_eq!(topo.len(), arcs.len(), "crossing relation must be acyclic");
    CrossingDag { arcs, topo }
}

/// Per-edge tameness data of the discrete combing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TamenessProfile {
    /// Per non-tree edge: (edge coarse distance, max 1-skeleton coarse
    /// distance over its icicle), in quarters.
    pub edges: BTreeMap<usize, (QuarterDist, QuarterDist)>,
}

/// Computes the tameness profile two ways and cross-checks them:
/// reverse-topological dynamic programming over the DAG versus a direct
/// maximum over each icicle's 1-skeleton.
pub fn tameness_profile(
    d: &PlanarDiagram,
    t: &SpanningTree,
    dag: &CrossingDag,
) -> TamenessProfile {
    let field = coarse_distance_field(d, d.basepoint);
    let mut prior: BTreeMap<usize, u32> = BTreeMap::new();
    for &e in dag.topo.iter().rev() {
        let succ = &dag.arcs[&e];
        let mut m = field.edge(d, e).0;
        for &g in &succ.tree_edges {
            m = m.max(field.edge(d, g).0);
        }
        for &v in &succ.vertices {
            m = m.max(field.vertex(v).0);
        }
        for &e2 in &succ.non_tree {
            m = m.max(prior[&e2]);
        }
        prior.insert(e, m);
    }

    let mut edges = BTreeMap::new();
    for (&e, &pm) in &prior {
        // Independent recomputation: direct max over the icicle 1-skeleton.
        let ic = icicle_at(d, t, e);
        let mut direct = 0;
        for &g in &ic.body_edges {
            direct = direct.max(field.edge(d, g).0);
        }
        for &v in &ic.body_vertices {
            direct = direct.max(field.vertex(v).0);
        }
        for &dart in &ic.tail {
            direct = direct.max(field.edge(d, d.edge_of(dart)).0);
        }
        assert_eq!(pm, direct, "DAG prior-max disagrees with icicle flood fill at edge {e}");
        let dist_e = field.edge(d, e);
        assert!(pm >= dist_e.0, "prior max below the edge's own distance");
        edges.insert(e, (dist_e, QuarterDist(pm)));
    }
    TamenessProfile { edges }
}

/// The obstruction level N: the largest edge distance among edges whose
/// icicle reaches beyond `f`, or `None` if the combing is graph f-tame.
///
/// Tree features never violate (their priors lie on a geodesic), so only
/// non-tree edges are scanned; `max over x ∈ e of M(x)` equals the icicle
/// 1-skeleton maximum recorded in the profile.
pub fn obstruction_level(
    profile: &TamenessProfile,
    f: &TameFunction,
) -> Result<Option<QuarterDist>, CombingError> {
    let mut level = None;
    for (&dist, &pm) in profile.edges.values().map(|(a, b)| (a, b)) {
        if pm > f.eval(dist)? {
            level = level.max(Some(dist));
        }
    }
    Ok(level)
}

/// E_i: the non-tree edges at distance exactly `n` whose icicles violate f.
pub fn violating_edges(
    profile: &TamenessProfile,
    f: &TameFunction,
    n: QuarterDist,
) -> Result<BTreeSet<usize>, CombingError> {
    let bound = f.eval(n)?;
    Ok(profile
        .edges
        .iter()
        .filter(|(_, &(dist, pm))| dist == n && pm > bound)
        .map(|(&e, _)| e)
        .collect())
}

/// Converts a graph-tame bound into a full intrinsic-tame bound:
/// `g(n) = f(n + ¾) + ρ/2 − ¼`, i.e. a shift by 3 quarters in the argument
/// and `2ρ − 1` quarters in the value.
pub fn graph_to_full_tame(f: &TameFunction, rho: usize) -> TameFunction {
    let shift = 2 * rho as u32 - 1;
    let table = f
        .table
        .iter()
        .filter_map(|(&q, &v)| q.checked_sub(3).map(|n| (n, v + shift)))
        .collect();
    TameFunction::new(table, format!("{}+3q_shift+{}q", f.tag, shift))
        .expect("shifting preserves monotonicity")
}

/// The main tame function `f(n) = IDiam(⌈2n+1⌉) + n + M_P + 1`, tabulated
/// on the given quarter arguments.
///
/// `idiam_table` maps word length to the filling-function value in quarters.
pub fn theorem_main_f(
    idiam_table: &BTreeMap<u32, QuarterDist>,
    m_p: QuarterDist,
    args: impl IntoIterator<Item = QuarterDist>,
) -> Result<TameFunction, CombingError> {
    let mut table = BTreeMap::new();
    for q in args {
        let len = (q.0 + 1) / 2 + 1; // ⌈2n+1⌉ for n = q/4
        let idiam = idiam_table.get(&len).ok_or_else(|| CombingError::DomainGap {
            tag: "theorem-main-f".into(),
            arg: len,
        })?;
        table.insert(q.0, idiam.0 + q.0 + m_p.0 + 4);
    }
    let f = TameFunction::new(table, "idiam(ceil(2n+1))+n+M_P+1")?;
    // f is strictly increasing wherever tabulated.
    let vals: Vec<u32> = f.table.values().copied().collect();
    assert!(vals.windows(2).all(|w| w[0] < w[1]), "main tame function must strictly increase");
    Ok(f)
}

/// A 1-skeleton feature of the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feature {
    Vertex(usize),
    Edge(usize),
}

impl Feature {
    pub fn dist(self, d: &PlanarDiagram, field: &DistanceField) -> QuarterDist {
        match self {
            Feature::Vertex(v) => field.vertex(v),
            Feature::Edge(e) => field.edge(d, e),
        }
    }
}

/// A backward crossing chain: the cells are crossed innermost-first on the
/// forward path, so `cells[j]` must lie on `∂θ_T(cells[j+1])`.
#[derive(Debug, Clone)]
pub struct CrossingChain {
    /// Tree feature the forward path leaves the tree at; `None` lets the
    /// entry policy choose among the admissible features of the first cell.
    pub entry: Option<Feature>,
    /// Non-tree edges whose flow cells the path crosses, innermost first.
    pub cells: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryPolicy {
    Worst,
    Best,
}

/// Total variation of coarse distance along a combing path.
///
/// The tree prefix is monotone and contributes its endpoint distance; each
/// crossing of a cell σ contributes `|D(σ) − entry| + |exit − D(σ)|` where
/// `D(σ)` is the face coarse distance and the exit is the crossed edge.
/// The discrete model does not determine where a path enters its first
/// cell, so the entry is either given or chosen by policy over the
/// admissible tree features.
pub fn variation_profile(
    d: &PlanarDiagram,
    t: &SpanningTree,
    dag: &CrossingDag,
    chain: &CrossingChain,
    policy: EntryPolicy,
) -> Result<QuarterDist, CombingError> {
    let field = coarse_distance_field(d, d.basepoint);
    let Some(&first) = chain.cells.first() else {
        // Pure tree chain: variation equals the endpoint distance.
        let entry = chain.entry.ok_or(CombingError::MalformedChain(0))?;
        if let Feature::Edge(e) = entry {
            if !t.is_tree_edge(e) {
                return Err(CombingError::MalformedChain(0));
            }
        }
        return Ok(entry.dist(d, &field));
    };

    // Admissible entry features of the first cell: tree features on its
    // flow-cell boundary.
    let succ = dag.arcs.get(&first).ok_or(CombingError::MalformedChain(0))?;
    let admissible: Vec<Feature> = succ
        .tree_edges
        .iter()
        .map(|&e| Feature::Edge(e))
        .chain(succ.vertices.iter().map(|&v| Feature::Vertex(v)))
        .collect();
    let entry = match chain.entry {
        Some(feat) => {
            if !admissible.contains(&feat) {
                return Err(CombingError::MalformedChain(0));
            }
            feat
        }
        None => {
            let key = |feat: &Feature| feat.dist(d, &field);
            let chosen = match policy {
                EntryPolicy::Worst => admissible.iter().max_by_key(|f| key(f)),
                EntryPolicy::Best => admissible.iter().min_by_key(|f| key(f)),
            };
            *chosen.ok_or(CombingError::MalformedChain(0))?
        }
    };

    let mut value = entry.dist(d, &field).0;
    let mut total = value;
    for (i, &e) in chain.cells.iter().enumerate() {
        let succ = dag.arcs.get(&e).ok_or(CombingError::MalformedChain(i))?;
        if i > 0 && !succ.non_tree.contains(&chain.cells[i - 1]) {
            return Err(CombingError::MalformedChain(i));
        }
        let flow_cell = {
            // θ(e) is the face whose boundary produced the successor set;
            // recover it as the unique face containing e and all features.
            let (fa, fb) = d.faces_of_edge(e);
            let boundary_edges = |f: usize| -> BTreeSet<usize> {
                d.faces[f].iter().map(|&x| d.edge_of(x)).collect()
            };
            if succ
                .tree_edges
                .iter()
                .chain(succ.non_tree.iter())
                .all(|g| boundary_edges(fa).contains(g))
                && fa != d.outer_face
            {
                fa
            } else {
                fb
            }
        };
        let face_val = field.face(d, flow_cell).0;
        let exit = field.edge(d, e).0;
        total += face_val.abs_diff(value) + exit.abs_diff(face_val);
        value = exit;
    }
    Ok(QuarterDist(total))
}

/// Non-negative rational constant of an equivalence witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "denominator must be positive");
        Ratio { num, den }
    }

    pub fn int(n: u64) -> Self {
        Ratio { num: n, den: 1 }
    }

    fn times(self, x: u64) -> (u128, u64) {
        (self.num as u128 * x as u128, self.den)
    }
}

/// Finite-domain witness for `f ≼ g`: constants A..E such that for every
/// `s` in f's domain, `f(s) ≤ A·g(Bt+C) + Dt + E` where `t` is the largest
/// point of g's domain that is ≤ s.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub a: Ratio,
    pub b: Ratio,
    pub c: Ratio,
    pub d: Ratio,
    pub e: Ratio,
}

/// Verifies the domination inequality pointwise on the tabulated domains.
///
/// This is a finite-domain verifier, not an asymptotic prover: `B·t + C`
/// must land on a tabulated point of `g`, otherwise the check fails.
pub fn check_equivalence(f: &TameFunction, g: &TameFunction, w: &EquivalenceWitness) -> bool {
    for s in f.domain() {
        let Some(t) = g.domain().filter(|&t| t <= s).max() else {
            return false;
        };
        // Bt + C in quarters, exact: must be integral.
        let (bt_num, bt_den) = w.b.times(t.0 as u64);
        let arg_num = bt_num * w.c.den as u128 + w.c.num as u128 * bt_den as u128;
        let arg_den = bt_den as u128 * w.c.den as u128;
        if arg_num % arg_den != 0 {
            return false;
        }
        let arg = (arg_num / arg_den) as u32;
        let Ok(g_val) = g.eval(QuarterDist(arg)) else {
            return false;
        };
        let f_val = f.eval(s).expect("s ranges over f's domain");
        // f(s) ≤ A·g + D·t + E, compared exactly over a common denominator.
        let lcm_den = w.a.den as u128 * w.d.den as u128 * w.e.den as u128;
        let lhs = f_val.0 as u128 * lcm_den;
        let rhs = w.a.num as u128 * g_val.0 as u128 * (w.d.den as u128 * w.e.den as u128)
            + w.d.num as u128 * t.0 as u128 * (w.a.den as u128 * w.e.den as u128)
            + w.e.num as u128 * (w.a.den as u128 * w.d.den as u128);
        if lhs > rhs {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;
    use crate::geodesics::bfs_geodesic_tree;
    use crate::icicle::flow_function;

    fn setup(d: &PlanarDiagram) -> (SpanningTree, CrossingDag) {
        let t = bfs_geodesic_tree(d);
        let flow = flow_function(d, &t);
        let dag = build_crossing_dag(d, &t, &flow);
        (t, dag)
    }

    #[test]
    fn s1_dag_has_single_node() {
        let d = s1();
        let (t, dag) = setup(&d);
        assert_eq!(dag.topo.len(), 1);
        let e = t.non_tree_edges(&d)[0];
        let succ = &dag.arcs[&e];
        assert!(succ.non_tree.is_empty());
        assert_eq!(succ.tree_edges.len(), 3);
        assert_eq!(succ.vertices.len(), 4);
    }

    #[test]
    fn s1_profile() {
        let d = s1();
        let (_, dag) = setup(&d);
        let t = bfs_geodesic_tree(&d);
        let profile = tameness_profile(&d, &t, &dag);
        let (&e, &(dist, pm)) = profile.edges.iter().next().unwrap();
        assert!(!t.is_tree_edge(e));
        assert_eq!(dist.0, 6);
        assert_eq!(pm.0, 8);
    }

    #[test]
    fn s1_obstruction_against_identity() {
        let d = s1();
        let t = bfs_geodesic_tree(&d);
        let dag = build_crossing_dag(&d, &t, &flow_function(&d, &t));
        let profile = tameness_profile(&d, &t, &dag);
        let f = TameFunction::identity(32);
        assert_eq!(obstruction_level(&profile, &f).unwrap(), Some(QuarterDist(6)));
        let violators = violating_edges(&profile, &f, QuarterDist(6)).unwrap();
        assert_eq!(violators.len(), 1);
        // f(n) = n + 1 tames the square: 8 ≤ 6 + 4.
        let f2 = TameFunction::shifted_identity(4, 32);
        assert_eq!(obstruction_level(&profile, &f2).unwrap(), None);
    }

    #[test]
    fn rect_dag_nesting_arc() {
        let d = rect();
        let (t, dag) = setup(&d);
        assert_eq!(dag.topo.len(), 2);
        // The outer non-tree edge's flow cell has the inner non-tree edge
        // on its boundary; exactly one arc in one direction.
        let arcs: usize = dag.arcs.values().map(|s| s.non_tree.len()).sum();
        assert_eq!(arcs, 1);
        let _ = t;
    }

    #[test]
    fn rect_profile_cross_check() {
        // tameness_profile internally asserts DAG DP == flood fill.
        let d = rect();
        let (t, dag) = setup(&d);
        let profile = tameness_profile(&d, &t, &dag);
        assert_eq!(profile.edges.len(), 2);
        for (dist, pm) in profile.edges.values() {
            assert!(pm >= dist);
        }
    }

    #[test]
    fn graph_to_full_tame_constant_offset() {
        for rho in [2usize, 3, 4] {
            let f = TameFunction::identity(40);
            let g = graph_to_full_tame(&f, rho);
            for q in g.domain() {
                let shifted = f.eval(QuarterDist(q.0 + 3)).unwrap();
                assert_eq!(g.eval(q).unwrap().0 - shifted.0, 2 * rho as u32 - 1);
            }
        }
    }

    #[test]
    fn graph_to_full_tame_constant_function() {
        let f = TameFunction::new((0..=20).map(|q| (q, 12)).collect(), "const3").unwrap();
        let g = graph_to_full_tame(&f, 3);
        for q in g.domain() {
            assert_eq!(g.eval(q).unwrap().0, 12 + 5);
        }
    }

    #[test]
    fn theorem_main_f_formula() {
        // IDiam table in quarters for lengths 0..=6; f(0) = IDiam(1)+M_P+1.
        let idiam: BTreeMap<u32, QuarterDist> =
            (0..=6).map(|n| (n, QuarterDist(4 * n))).collect();
        let m_p = QuarterDist(8);
        let f = theorem_main_f(&idiam, m_p, (0..=8).map(QuarterDist)).unwrap();
        assert_eq!(f.eval(QuarterDist(0)).unwrap().0, 4 + 0 + 8 + 4);
        // n = 1.5 (6 quarters): ⌈2n+1⌉ = 4.
        assert_eq!(f.eval(QuarterDist(6)).unwrap().0, 16 + 6 + 8 + 4);
        let vals: Vec<u32> = f.domain().map(|q| f.eval(q).unwrap().0).collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn variation_pure_tree_chain() {
        let d = s1();
        let (t, dag) = setup(&d);
        let chain = CrossingChain { entry: Some(Feature::Vertex(2)), cells: Vec::new() };
        let v = variation_profile(&d, &t, &dag, &chain, EntryPolicy::Worst).unwrap();
        assert_eq!(v.0, 8);
    }

    #[test]
    fn variation_s1_explicit_entry() {
        // Enter through edge (v0,v1) at 2 quarters, cross the face (5),
        // exit at the non-tree edge (6): V = 2 + 3 + 1.
        let d = s1();
        let (t, dag) = setup(&d);
        let e = t.non_tree_edges(&d)[0];
        let chain = CrossingChain { entry: Some(Feature::Edge(0)), cells: vec![e] };
        let v = variation_profile(&d, &t, &dag, &chain, EntryPolicy::Worst).unwrap();
        assert_eq!(v.0, 6);
    }

    #[test]
    fn variation_worst_dominates_best() {
        let d = rect();
        let (t, dag) = setup(&d);
        for &e in &dag.topo {
            let chain = CrossingChain { entry: None, cells: vec![e] };
            let worst = variation_profile(&d, &t, &dag, &chain, EntryPolicy::Worst).unwrap();
            let best = variation_profile(&d, &t, &dag, &chain, EntryPolicy::Best).unwrap();
            assert!(worst >= best);
        }
    }

    #[test]
    fn equivalence_linear_cases() {
        let id = TameFunction::identity(40);
        let double =
            TameFunction::new((0..=40).map(|q| (q, 2 * q)).collect(), "2n").unwrap();
        let w = EquivalenceWitness {
            a: Ratio::int(1),
            b: Ratio::int(1),
            c: Ratio::int(0),
            d: Ratio::int(0),
            e: Ratio::int(0),
        };
        assert!(check_equivalence(&id, &double, &w));
        let w2 = EquivalenceWitness { a: Ratio::int(2), ..w.clone() };
        assert!(check_equivalence(&double, &id, &w2));
    }

    #[test]
    fn equivalence_square_not_dominated_linearly() {
        // Whole-unit domain {0..10}: f(n) = n² fails against g(n) = n with
        // A=1, B=1, C=0, D=1, E=0 — first at n = 3 (9 > 3 + 3).
        let f = TameFunction::new(
            (0..=10).map(|n| (4 * n, 4 * n * n)).collect(),
            "n^2",
        )
        .unwrap();
        let g = TameFunction::new((0..=10).map(|n| (4 * n, 4 * n)).collect(), "n").unwrap();
        let w = EquivalenceWitness {
            a: Ratio::int(1),
            b: Ratio::int(1),
            c: Ratio::int(0),
            d: Ratio::int(1),
            e: Ratio::int(0),
        };
        assert!(!check_equivalence(&f, &g, &w));
        // Restricted to {0, 1, 2} it holds (4 ≤ 2·4... in quarters).
        let f_small =
            TameFunction::new((0..=2).map(|n| (4 * n, 4 * n * n)).collect(), "n^2").unwrap();
        let g_small =
            TameFunction::new((0..=2).map(|n| (4 * n, 4 * n)).collect(), "n").unwrap();
        assert!(check_equivalence(&f_small, &g_small, &w));
    }
}
