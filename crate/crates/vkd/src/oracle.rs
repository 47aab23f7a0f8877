//! Brute-force ground truth by exhaustive diagram enumeration.
//!
//! A van Kampen diagram for `w` with `F` internal faces is a sphere map
//! assembled from `F` relator polygons plus one outer polygon whose sides
//! spell `w` backwards and inverted (so the boundary circuit reads `w`).
//! We enumerate perfect matchings of polygon sides with inverse labels,
//! keep the gluings that are connected and spherical (V = E − F + 1), and
//! deduplicate by a rooted canonical form. Exhaustiveness at a budget is
//! certified by the search tree being fully expanded.

use crate::diagram::{
    idiam, simply_bounded, validate_diagram, PlanarDiagram, QuarterDist, RawDart, RawDiagram,
};
use crate::presentation::{Letter, Presentation, Word};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::PathBuf;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("no filling found for `{0}` within budget")]
    NoFilling(String),
    #[error("diagram too large for exhaustive subcomplex enumeration ({edges} edges)")]
    SizeGuard { edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_faces: usize,
    pub max_edges: usize,
    pub time_cap: Duration,
}

impl SearchBudget {
    pub fn new(max_faces: usize, max_edges: usize, time_cap: Duration) -> Self {
        assert!(max_faces > 0 && max_edges > 0 && !time_cap.is_zero());
        SearchBudget { max_faces, max_edges, time_cap }
    }

    /// Desk-scale default: enough for every worked example in the tests.
    pub fn desk() -> Self {
        SearchBudget::new(4, 64, Duration::from_secs(120))
    }
}

/// The result of an enumeration run: diagrams in a deterministic order.
pub struct Fillings {
    pub diagrams: Vec<PlanarDiagram>,
    /// True iff every gluing at the face/edge budget was examined.
    pub exhaustive: bool,
}

/// Rooted canonical form of a diagram: darts renumbered by breadth-first
/// discovery from the boundary-start dart via rotation and twin moves.
/// Two diagrams get equal signatures iff they are isomorphic by a
/// label-preserving map fixing basepoint and boundary start.
pub fn canonical_signature(d: &PlanarDiagram) -> Vec<(usize, usize, Letter)> {
    let Some(start) = d.boundary_start else {
        return Vec::new();
    };
    let mut order = vec![usize::MAX; d.darts.len()];
    let mut seq = Vec::with_capacity(d.darts.len());
    order[start] = 0;
    seq.push(start);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for y in [d.rotation_next(x), d.twin(x)] {
            if order[y] == usize::MAX {
                order[y] = seq.len();
                seq.push(y);
                queue.push_back(y);
            }
        }
    }
    assert_eq!(seq.len(), d.darts.len(), "dart graph of a valid diagram is connected");
    seq.iter()
        .map(|&x| (order[d.rotation_next(x)], order[d.twin(x)], d.darts[x].label))
        .collect()
}

fn label_str(p: &Presentation, l: Letter) -> String {
    format!("{}{}", p.generators[l.gen].name, if l.inverse { "^-1" } else { "" })
}

fn empty_diagram(p: &Presentation) -> PlanarDiagram {
    let raw = RawDiagram {
        vertices: 1,
        darts: Vec::new(),
        rotation: vec![Vec::new()],
        basepoint: 0,
        boundary_start: None,
    };
    validate_diagram(p, &raw).expect("single-vertex diagram is valid")
}

/// One polygon type per cyclic class of a relator or its inverse.
fn polygon_classes(p: &Presentation) -> Vec<Word> {
    let mut set = BTreeSet::new();
    for r in &p.relators {
        for o in [r.clone(), r.inv()] {
            let canon = (0..o.len()).map(|k| o.rotate(k)).min().unwrap();
            set.insert(canon);
        }
    }
    set.into_iter().collect()
}

struct GlueSearch<'a> {
    p: &'a Presentation,
    w: &'a Word,
    labels: Vec<Letter>,
    phi_prev: Vec<usize>,
    phi_next: Vec<usize>,
    polygon_of: Vec<usize>,
    polygon_class: Vec<usize>,
    polygon_count: usize,
    matched: Vec<Option<usize>>,
    touch: Vec<usize>,
    deadline: Instant,
    timed_out: bool,
    seen: BTreeSet<Vec<(usize, usize, Letter)>>,
    found: Vec<(usize, Vec<(usize, usize, Letter)>, PlanarDiagram)>,
}

impl GlueSearch<'_> {
    fn run(&mut self) {
        if self.timed_out {
            return;
        }
        if Instant::now() > self.deadline {
            self.timed_out = true;
            return;
        }
        let Some(i) = self.matched.iter().position(|m| m.is_none()) else {
            self.leaf();
            return;
        };
        let want = self.labels[i].inv();
        for j in i + 1..self.labels.len() {
            if self.matched[j].is_some() || self.labels[j] != want {
                continue;
            }
            let pj = self.polygon_of[j];
            if pj != 0 && self.touch[pj] == 0 {
                // Untouched polygons of one class are interchangeable:
                // only the lowest-indexed one may be attached first.
                let class = self.polygon_class[pj];
                let first = (1..self.polygon_count)
                    .find(|&q| self.polygon_class[q] == class && self.touch[q] == 0)
                    .unwrap();
                if pj != first {
                    continue;
                }
            }
            let pi = self.polygon_of[i];
            self.matched[i] = Some(j);
            self.matched[j] = Some(i);
            self.touch[pi] += 1;
            self.touch[pj] += 1;
            self.run();
            self.matched[i] = None;
            self.matched[j] = None;
            self.touch[pi] -= 1;
            self.touch[pj] -= 1;
        }
    }

    fn leaf(&mut self) {
        let n = self.labels.len();
        let faces = self.polygon_count - 1;
        // Connectivity over sides via twin and face moves.
        let mut reach = vec![false; n];
        reach[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for y in [self.matched[x].unwrap(), self.phi_next[x]] {
                if !reach[y] {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
        if reach.iter().any(|&r| !r) {
            return;
        }
        // Rotation determined by the face permutation: ρ(y) = twin(φ⁻¹(y)).
        let rho: Vec<usize> = (0..n).map(|y| self.matched[self.phi_prev[y]].unwrap()).collect();
        let mut vertex_of = vec![usize::MAX; n];
        let mut rotation: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if vertex_of[s] != usize::MAX {
                continue;
            }
            let v = rotation.len();
            let mut cycle = Vec::new();
            let mut x = s;
            loop {
                vertex_of[x] = v;
                cycle.push(x);
                x = rho[x];
                if x == s {
                    break;
                }
            }
            rotation.push(cycle);
        }
        // Spherical gluings only: V − E + (F+1) = 2.
        if rotation.len() + faces != n / 2 + 1 {
            return;
        }
        let boundary_start = self.matched[0].unwrap();
        let raw = RawDiagram {
            vertices: rotation.len(),
            darts: (0..n)
                .map(|s| RawDart {
                    id: s,
                    origin: vertex_of[s],
                    label: label_str(self.p, self.labels[s]),
                    twin: self.matched[s].unwrap(),
                })
                .collect(),
            rotation,
            basepoint: vertex_of[boundary_start],
            boundary_start: Some(boundary_start),
        };
        let d = validate_diagram(self.p, &raw)
            .expect("spherical relator gluings are valid diagrams");
        assert_eq!(&d.boundary_word(), self.w, "outer polygon labels force the boundary word");
        let sig = canonical_signature(&d);
        if self.seen.insert(sig.clone()) {
            self.found.push((faces, sig, d));
        }
    }
}

/// Enumerates every filling of `w` with at most `budget.max_faces` internal
/// faces, up to rooted isomorphism, in a deterministic order.
pub fn enumerate_fillings(p: &Presentation, w: &Word, budget: &SearchBudget) -> Fillings {
    if w.is_empty() {
        // A disk diagram with an empty boundary word is the basepoint alone.
        return Fillings { diagrams: vec![empty_diagram(p)], exhaustive: true };
    }
    let m = w.len();
    let mut outer: Vec<Letter> = vec![w.0[0].inv()];
    outer.extend((1..m).map(|i| w.0[m - i].inv()));

    let classes = polygon_classes(p);
    let deadline = Instant::now() + budget.time_cap;
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    let mut timed_out = false;

    let mut multisets: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..budget.max_faces {
        let mut next = Vec::new();
        for ms in &multisets {
            let lo = ms.last().copied().unwrap_or(0);
            for c in lo..classes.len() {
                let mut ext = ms.clone();
                ext.push(c);
                next.push(ext);
            }
        }
        multisets.extend(next.clone());
        multisets = {
            let mut all: Vec<Vec<usize>> = multisets;
            all.sort();
            all.dedup();
            all
        };
    }
    multisets.sort_by_key(|ms| (ms.len(), ms.clone()));

    for ms in &multisets {
        if timed_out {
            break;
        }
        let mut labels = outer.clone();
        let mut phi_next: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
        let mut polygon_of = vec![0usize; m];
        let mut polygon_class = vec![usize::MAX];
        for (pk, &c) in ms.iter().enumerate() {
            let base = labels.len();
            let word = &classes[c];
            labels.extend(word.0.iter().copied());
            let k = word.len();
            phi_next.extend((0..k).map(|i| base + (i + 1) % k));
            polygon_of.extend(std::iter::repeat(pk + 1).take(k));
            polygon_class.push(c);
        }
        let n = labels.len();
        if n % 2 != 0 || n / 2 > budget.max_edges {
            continue;
        }
        // A perfect matching needs balanced label counts.
        let mut count: BTreeMap<usize, i64> = BTreeMap::new();
        for &l in &labels {
            *count.entry(l.gen).or_default() += if l.inverse { -1 } else { 1 };
        }
        if count.values().any(|&c| c != 0) {
            continue;
        }
        let mut phi_prev = vec![0usize; n];
        for (i, &j) in phi_next.iter().enumerate() {
            phi_prev[j] = i;
        }
        let mut search = GlueSearch {
            p,
            w,
            labels,
            phi_prev,
            phi_next,
            polygon_of,
            polygon_class,
            polygon_count: ms.len() + 1,
            matched: vec![None; n],
            touch: vec![1; ms.len() + 1],
            deadline,
            timed_out: false,
            seen: std::mem::take(&mut seen),
            found: std::mem::take(&mut found),
        };
        for t in search.touch.iter_mut().skip(1) {
            *t = 0;
        }
        search.run();
        timed_out = search.timed_out;
        seen = search.seen;
        found = search.found;
    }

    found.sort_by(|a, b| (a.0, a.2.darts.len(), &a.1).cmp(&(b.0, b.2.darts.len(), &b.1)));
    Fillings {
        diagrams: found.into_iter().map(|(_, _, d)| d).collect(),
        exhaustive: !timed_out,
    }
}

/// Integer span membership: is the exponent vector of `w` a Z-linear
/// combination of the relators' exponent vectors? A filling can only exist
/// if so, which prunes word enumeration.
pub fn exponents_in_relator_span(p: &Presentation, w: &Word) -> bool {
    let g = p.generators.len();
    let vector = |word: &Word| {
        let mut v = vec![0i64; g];
        for l in &word.0 {
            v[l.gen] += if l.inverse { -1 } else { 1 };
        }
        v
    };
    let mut rows: Vec<Vec<i64>> = p.relators.iter().map(vector).collect();
    let mut target = vector(w);
    let mut pivots: Vec<Vec<i64>> = Vec::new();
    for col in 0..g {
        loop {
            let mut idx: Vec<usize> = (0..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if idx.len() <= 1 {
                break;
            }
            idx.sort_by_key(|&r| rows[r][col].abs());
            let (small, big) = (idx[0], idx[1]);
            let q = rows[big][col] / rows[small][col];
            for c in 0..g {
                rows[big][c] -= q * rows[small][c];
            }
        }
        if let Some(r) = (0..rows.len()).find(|&r| rows[r][col] != 0) {
            pivots.push(rows.remove(r));
        }
    }
    for row in &pivots {
        let col = (0..g).find(|&c| row[c] != 0).unwrap();
        if target[col] % row[col] != 0 {
            return false;
        }
        let q = target[col] / row[col];
        for c in 0..g {
            target[c] -= q * row[c];
        }
    }
    target.iter().all(|&x| x == 0)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct WordEntry {
    idiam: Option<u32>,
    idiam_sb: Option<u32>,
    min_diagram: Option<RawDiagram>,
    d_w: Option<RawDiagram>,
    exhaustive: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleTable {
    presentation: String,
    max_faces: usize,
    max_edges: usize,
    words: BTreeMap<String, WordEntry>,
    idiam_n: BTreeMap<u32, (u32, bool)>,
    m_p: Option<(u32, bool)>,
}

impl OracleTable {
    fn fresh(p: &Presentation, budget: &SearchBudget) -> Self {
        OracleTable {
            presentation: p.serialize(),
            max_faces: budget.max_faces,
            max_edges: budget.max_edges,
            words: BTreeMap::new(),
            idiam_n: BTreeMap::new(),
            m_p: None,
        }
    }
}

/// Enumeration oracle with a disk-backed result table.
///
/// The cache file lives under `$VK_CACHE_DIR` (no caching when unset),
/// named by a hash of the presentation and the face/edge budget, so a
/// budget change never reuses stale values.
pub struct Oracle {
    pub presentation: Presentation,
    pub budget: SearchBudget,
    table: OracleTable,
    cache_path: Option<PathBuf>,
    dirty: bool,
}

impl Oracle {
    pub fn new(p: Presentation, budget: SearchBudget) -> Self {
        let dir = std::env::var_os("VK_CACHE_DIR").map(PathBuf::from);
        Self::with_cache_dir(p, budget, dir)
    }

    pub fn with_cache_dir(p: Presentation, budget: SearchBudget, dir: Option<PathBuf>) -> Self {
        let cache_path = dir.map(|d| {
            let key = format!(
                "{}|faces={}|edges={}",
                p.serialize(),
                budget.max_faces,
                budget.max_edges
            );
            let hash = hex::encode(Sha256::digest(key.as_bytes()));
            d.join(format!("{}.oracle.json", &hash[..16]))
        });
        let fresh = OracleTable::fresh(&p, &budget);
        let table = cache_path
            .as_ref()
            .and_then(|path| std::fs::read_to_string(path).ok())
            .and_then(|text| serde_json::from_str::<OracleTable>(&text).ok())
            .filter(|t| {
                t.presentation == fresh.presentation
                    && t.max_faces == fresh.max_faces
                    && t.max_edges == fresh.max_edges
            })
            .unwrap_or(fresh);
        Oracle { presentation: p, budget, table, cache_path, dirty: false }
    }

    pub fn save(&mut self) {
        if !self.dirty {
            return;
        }
        if let Some(path) = &self.cache_path {
            if let Some(parent) = path.parent() {
                let _ = std::fs::create_dir_all(parent);
            }
            let text = serde_json::to_string(&self.table).expect("table serializes");
            if std::fs::write(path, text).is_ok() {
                self.dirty = false;
            }
        }
    }

    fn word_key(&self, w: &Word) -> String {
        w.display(&self.presentation).to_string()
    }

    fn word_data(&mut self, w: &Word) -> WordEntry {
        let key = self.word_key(w);
        if let Some(entry) = self.table.words.get(&key) {
            return entry.clone();
        }
        let fillings = enumerate_fillings(&self.presentation, w, &self.budget);
        let mut best: Option<(u32, &PlanarDiagram)> = None;
        let mut best_sb: Option<(u32, &PlanarDiagram)> = None;
        for d in &fillings.diagrams {
            let q = idiam(d).0;
            if best.map_or(true, |(b, _)| q < b) {
                best = Some((q, d));
            }
            if simply_bounded(d) && best_sb.map_or(true, |(b, _)| q < b) {
                best_sb = Some((q, d));
            }
        }
        let entry = WordEntry {
            idiam: best.map(|(q, _)| q),
            idiam_sb: best_sb.map(|(q, _)| q),
            min_diagram: best.map(|(_, d)| d.to_raw(&self.presentation)),
            d_w: best_sb.map(|(_, d)| d.to_raw(&self.presentation)),
            exhaustive: fillings.exhaustive,
        };
        self.table.words.insert(key, entry.clone());
        self.dirty = true;
        entry
    }

    /// IDiam(w): the minimum intrinsic diameter over enumerated fillings,
    /// with a flag saying whether the minimum is proven at the budget.
    pub fn idiam_of_word(&mut self, w: &Word) -> Result<(QuarterDist, bool), OracleError> {
        let entry = self.word_data(w);
        self.save();
        match entry.idiam {
            Some(q) => Ok((QuarterDist(q), entry.exhaustive)),
            None => Err(OracleError::NoFilling(self.word_key(w))),
        }
    }

    /// The minimal-IDiam filling itself (first in enumeration order among
    /// the minimizers).
    pub fn minimal_filling(&mut self, w: &Word) -> Result<PlanarDiagram, OracleError> {
        let entry = self.word_data(w);
        self.save();
        let raw = entry.min_diagram.ok_or_else(|| OracleError::NoFilling(self.word_key(w)))?;
        Ok(validate_diagram(&self.presentation, &raw).expect("cached diagram is valid"))
    }

    /// IDiam_sb(w) and its minimizer D_w, or `None` when no simply bounded
    /// filling exists at the budget.
    pub fn simply_bounded_data(&mut self, w: &Word) -> Option<(QuarterDist, PlanarDiagram, bool)> {
        let entry = self.word_data(w);
        self.save();
        let q = entry.idiam_sb?;
        let raw = entry.d_w.expect("idiam_sb implies a stored minimizer");
        let d = validate_diagram(&self.presentation, &raw).expect("cached diagram is valid");
        Some((QuarterDist(q), d, entry.exhaustive))
    }

    fn all_words_of_len(&self, len: usize) -> Vec<Word> {
        let g = self.presentation.generators.len();
        let alphabet: Vec<Letter> = (0..g)
            .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
            .collect();
        let mut words = vec![Word::empty()];
        for _ in 0..len {
            words = words
                .iter()
                .flat_map(|w| {
                    alphabet.iter().map(|&l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
                })
                .collect();
        }
        words
    }

    /// IDiam(n) for each n ≤ n_max: the max of IDiam(w) over words of
    /// length ≤ n that admit fillings, with per-level exhaustiveness.
    ///
    /// Words outside the relators' abelianized span admit no filling and
    /// are skipped; a word and its inverse share mirror-image fillings and
    /// are evaluated once.
    pub fn idiam_function(&mut self, n_max: usize) -> BTreeMap<u32, (QuarterDist, bool)> {
        if self.table.idiam_n.keys().max().is_some_and(|&k| k >= n_max as u32) {
            return self
                .table
                .idiam_n
                .iter()
                .filter(|(&n, _)| n <= n_max as u32)
                .map(|(&n, &(q, ex))| (n, (QuarterDist(q), ex)))
                .collect();
        }
        let mut out = BTreeMap::new();
        let mut running = 0u32;
        let mut running_ex = true;
        for n in 0..=n_max {
            for w in self.all_words_of_len(n) {
                if !exponents_in_relator_span(&self.presentation, &w) {
                    continue;
                }
                let canon = std::cmp::min(w.clone(), w.inv());
                let entry = self.word_data(&canon);
                match entry.idiam {
                    Some(q) => {
                        running = running.max(q);
                        running_ex &= entry.exhaustive;
                    }
                    None => running_ex &= entry.exhaustive,
                }
            }
            out.insert(n as u32, (QuarterDist(running), running_ex));
            self.table.idiam_n.insert(n as u32, (running, running_ex));
            self.dirty = true;
        }
        self.save();
        out
    }

    /// M_P: the max of IDiam_sb over all words of length ≤ 4 with a simply
    /// bounded filling, together with 0.
    pub fn compute_m_p(&mut self) -> (QuarterDist, bool) {
        if let Some((q, ex)) = self.table.m_p {
            return (QuarterDist(q), ex);
        }
        let mut best = 0u32;
        let mut exhaustive = true;
        for n in 0..=4 {
            for w in self.all_words_of_len(n) {
                if !exponents_in_relator_span(&self.presentation, &w) {
                    continue;
                }
                let canon = std::cmp::min(w.clone(), w.inv());
                let entry = self.word_data(&canon);
                if let Some(q) = entry.idiam_sb {
                    best = best.max(q);
                }
                exhaustive &= entry.exhaustive;
            }
        }
        self.table.m_p = Some((best, exhaustive));
        self.dirty = true;
        self.save();
        (QuarterDist(best), exhaustive)
    }
}

fn subcomplex_profile_entry(
    d: &PlanarDiagram,
    edges: &BTreeSet<usize>,
    faces: &BTreeSet<usize>,
    profile: &mut BTreeMap<u32, QuarterDist>,
) {
    let mut vertices = BTreeSet::new();
    for &e in edges {
        vertices.insert(d.darts[e].origin);
        vertices.insert(d.head(e));
    }
    // Boundary length: each 1-cell has two sides; sides covered by chosen
    // faces (counted with orbit multiplicity) are interior.
    let covered: usize = faces.iter().map(|&f| d.faces[f].len()).sum();
    let b = (2 * edges.len() - covered) as u32;
    let mut diam = 0u32;
    for &v in &vertices {
        let dist = crate::diagram::bfs_edge_distances(d, v, Some(edges));
        for &u in &vertices {
            diam = diam.max(dist[u].expect("subcomplex is connected"));
        }
    }
    let q = QuarterDist::from_edges(diam);
    profile.entry(b).and_modify(|m| *m = (*m).max(q)).or_insert(q);
}

fn subcomplex_is_valid(
    d: &PlanarDiagram,
    edges: &BTreeSet<usize>,
    faces: &BTreeSet<usize>,
) -> bool {
    // Connected on the 1-skeleton and simply connected: χ = V − E + F = 1.
    let mut vertices = BTreeSet::new();
    for &e in edges {
        vertices.insert(d.darts[e].origin);
        vertices.insert(d.head(e));
    }
    if vertices.is_empty() {
        return false;
    }
    let start = *vertices.iter().next().unwrap();
    let dist = crate::diagram::bfs_edge_distances(d, start, Some(edges));
    if vertices.iter().any(|&v| dist[v].is_none()) {
        return false;
    }
    vertices.len() + faces.len() == edges.len() + 1
}

fn face_subsets_within(d: &PlanarDiagram, edges: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let admissible: Vec<usize> = d
        .internal_faces()
        .filter(|&f| d.faces[f].iter().all(|&x| edges.contains(&d.edge_of(x))))
        .collect();
    let mut subsets = vec![BTreeSet::new()];
    for &f in &admissible {
        let mut next = subsets.clone();
        for s in &mut next {
            s.insert(f);
        }
        subsets.extend(next);
    }
    subsets
}

/// §-free description: for every connected simply-connected subcomplex,
/// records (boundary length, unbased diameter) and keeps the max diameter
/// per boundary length — the pointwise-minimal intrinsic subdiagram
/// diameter function of this diagram.
///
/// Brute force over all edge and face subsets; guarded to small diagrams.
pub fn subdiagram_profile(d: &PlanarDiagram) -> Result<BTreeMap<u32, QuarterDist>, OracleError> {
    let all_edges = d.edges();
    if all_edges.len() > 18 {
        return Err(OracleError::SizeGuard { edges: all_edges.len() });
    }
    let mut profile = BTreeMap::new();
    if d.vertex_count > 0 {
        profile.insert(0, QuarterDist::ZERO); // single-vertex subcomplexes
    }
    for mask in 1u32..(1 << all_edges.len()) {
        let edges: BTreeSet<usize> = all_edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        for faces in face_subsets_within(d, &edges) {
            if subcomplex_is_valid(d, &edges, &faces) {
                subcomplex_profile_entry(d, &edges, &faces, &mut profile);
            }
        }
    }
    Ok(profile)
}

/// Independent recomputation of [`subdiagram_profile`]: grows connected
/// subcomplexes one cell at a time from every seed edge instead of
/// filtering the subset lattice.
pub fn subdiagram_profile_grown(
    d: &PlanarDiagram,
) -> Result<BTreeMap<u32, QuarterDist>, OracleError> {
    let all_edges = d.edges();
    if all_edges.len() > 18 {
        return Err(OracleError::SizeGuard { edges: all_edges.len() });
    }
    let edge_bit: BTreeMap<usize, u32> =
        all_edges.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    let mut queue: VecDeque<u32> = VecDeque::new();
    for &e in &all_edges {
        let mask = 1 << edge_bit[&e];
        if seen.insert(mask) {
            queue.push_back(mask);
        }
    }
    // Connected edge sets, grown by adding one incident edge at a time.
    let mut connected_sets = Vec::new();
    while let Some(mask) = queue.pop_front() {
        connected_sets.push(mask);
        let vertices: BTreeSet<usize> = all_edges
            .iter()
            .filter(|&&e| mask & (1 << edge_bit[&e]) != 0)
            .flat_map(|&e| [d.darts[e].origin, d.head(e)])
            .collect();
        for &v in &vertices {
            for &dart in &d.rotation[v] {
                let bit = 1 << edge_bit[&d.edge_of(dart)];
                let next = mask | bit;
                if next != mask && seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }

    let mut profile = BTreeMap::new();
    if d.vertex_count > 0 {
        profile.insert(0, QuarterDist::ZERO);
    }
    for &mask in &connected_sets {
        let edges: BTreeSet<usize> = all_edges
            .iter()
            .filter(|&&e| mask & (1 << edge_bit[&e]) != 0)
            .copied()
            .collect();
        for faces in face_subsets_within(d, &edges) {
            if subcomplex_is_valid(d, &edges, &faces) {
                subcomplex_profile_entry(d, &edges, &faces, &mut profile);
            }
        }
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;
    use crate::diagram::unbased_idiam;

    fn z2_oracle() -> Oracle {
        Oracle::with_cache_dir(z2(), SearchBudget::desk(), None)
    }

    fn commutator(p: &Presentation) -> Word {
        p.parse_word("aba^-1b^-1", 0).unwrap()
    }

    #[test]
    fn one_face_filling_is_s1() {
        let p = z2();
        let w = commutator(&p);
        let budget = SearchBudget::new(1, 16, Duration::from_secs(30));
        let fillings = enumerate_fillings(&p, &w, &budget);
        assert!(fillings.exhaustive);
        let squares: Vec<&PlanarDiagram> = fillings
            .diagrams
            .iter()
            .filter(|d| d.internal_face_count() == 1)
            .collect();
        assert!(!squares.is_empty());
        let s1_sig = canonical_signature(&s1());
        assert!(
            fillings.diagrams.iter().any(|d| canonical_signature(d) == s1_sig),
            "the plain one-square filling must be found"
        );
    }

    #[test]
    fn spur_word_sb_needs_two_faces() {
        // aa⁻¹ fills as a bare spur (never simply bounded); the doubled
        // two-square filling is the first simply bounded one.
        let p = z2();
        let w = p.parse_word("aa^-1", 0).unwrap();
        let one = enumerate_fillings(&p, &w, &SearchBudget::new(1, 16, Duration::from_secs(30)));
        assert!(one.exhaustive);
        assert!(!one.diagrams.is_empty());
        assert!(one.diagrams.iter().all(|d| !simply_bounded(d)));
        let two = enumerate_fillings(&p, &w, &SearchBudget::new(2, 16, Duration::from_secs(30)));
        assert!(two.diagrams.iter().any(|d| simply_bounded(d)));
    }

    #[test]
    fn nontrivial_generator_has_no_filling() {
        let p = z2();
        let w = p.parse_word("a", 0).unwrap();
        let fillings = enumerate_fillings(&p, &w, &SearchBudget::desk());
        assert!(fillings.exhaustive);
        assert!(fillings.diagrams.is_empty());
    }

    #[test]
    fn empty_word_fills_with_a_point() {
        let p = z2();
        let fillings = enumerate_fillings(&p, &Word::empty(), &SearchBudget::desk());
        assert_eq!(fillings.diagrams.len(), 1);
        assert!(fillings.diagrams[0].darts.is_empty());
    }

    #[test]
    fn emission_is_deterministic() {
        let p = z2();
        let w = commutator(&p);
        let budget = SearchBudget::new(2, 16, Duration::from_secs(30));
        let a = enumerate_fillings(&p, &w, &budget);
        let b = enumerate_fillings(&p, &w, &budget);
        let sigs = |f: &Fillings| {
            f.diagrams.iter().map(canonical_signature).collect::<Vec<_>>()
        };
        assert_eq!(sigs(&a), sigs(&b));
        let s = sigs(&a);
        let dedup: BTreeSet<_> = s.iter().cloned().collect();
        assert_eq!(dedup.len(), s.len(), "no isomorphic duplicates");
    }

    #[test]
    fn commutator_idiam_is_two_units() {
        let mut oracle = z2_oracle();
        let w = commutator(&oracle.presentation);
        let (q, exhaustive) = oracle.idiam_of_word(&w).unwrap();
        assert_eq!(q.0, 8);
        assert!(exhaustive);
    }

    #[test]
    fn commutator_sb_minimizer_is_s1() {
        let mut oracle = z2_oracle();
        let w = commutator(&oracle.presentation);
        let (q, d_w, _) = oracle.simply_bounded_data(&w).unwrap();
        assert_eq!(q.0, 8);
        assert_eq!(canonical_signature(&d_w), canonical_signature(&s1()));
    }

    #[test]
    fn spur_word_sb_data_depends_on_budget() {
        let p = z2();
        let w = p.parse_word("aa^-1", 0).unwrap();
        let shallow = SearchBudget::new(1, 16, Duration::from_secs(30));
        let mut at_one = Oracle::with_cache_dir(p.clone(), shallow, None);
        assert!(at_one.simply_bounded_data(&w).is_none());
        let mut at_desk = z2_oracle();
        let (q, d_w, _) = at_desk.simply_bounded_data(&w).unwrap();
        assert_eq!(q.0, 8);
        assert!(simply_bounded(&d_w));
        assert_eq!(d_w.internal_face_count(), 2);
    }

    #[test]
    fn bigon_presentation_sb() {
        let p = crate::presentation::parse_presentation("gens: a\nrels: aa", false).unwrap();
        let mut oracle = Oracle::with_cache_dir(p, SearchBudget::desk(), None);
        let w = oracle.presentation.parse_word("aa", 0).unwrap();
        let (_, d_w, _) = oracle.simply_bounded_data(&w).unwrap();
        assert_eq!(d_w.internal_face_count(), 1);
        assert!(simply_bounded(&d_w));
    }

    #[test]
    fn idiam_function_small_lengths() {
        let mut oracle = z2_oracle();
        let table = oracle.idiam_function(4);
        assert_eq!(table[&0].0 .0, 0);
        assert_eq!(table[&1].0 .0, 0);
        assert_eq!(table[&2].0 .0, 4, "aa⁻¹ fills with a single spur edge");
        assert_eq!(table[&3].0 .0, 4, "odd lengths add no balanced words");
        assert_eq!(table[&4].0 .0, 8);
        assert!(table.values().all(|&(_, ex)| ex));
    }

    #[test]
    fn z2_m_p_is_three_units() {
        // The max is attained by a²a⁻² (and symmetric variants), whose
        // cheapest simply bounded filling has a vertex three units out.
        let mut oracle = z2_oracle();
        let (m_p, exhaustive) = oracle.compute_m_p();
        assert_eq!(m_p.0, 12);
        assert!(exhaustive);
        let w = oracle.presentation.parse_word("aaa^-1a^-1", 0).unwrap();
        let (q, d_w, ex) = oracle.simply_bounded_data(&w).unwrap();
        assert_eq!(q.0, 12);
        assert!(ex);
        assert!(simply_bounded(&d_w));
    }

    #[test]
    fn span_pruning() {
        let p = z2();
        let w = p.parse_word("ab", 0).unwrap();
        assert!(!exponents_in_relator_span(&p, &w));
        assert!(exponents_in_relator_span(&p, &commutator(&p)));
        let q = crate::presentation::parse_presentation("gens: a\nrels: aa", false).unwrap();
        assert!(exponents_in_relator_span(&q, &q.parse_word("aaaa", 0).unwrap()));
        assert!(!exponents_in_relator_span(&q, &q.parse_word("aaa", 0).unwrap()));
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = z2();
        let w = commutator(&p);
        let budget = SearchBudget::desk();
        let mut first =
            Oracle::with_cache_dir(p.clone(), budget.clone(), Some(dir.path().to_path_buf()));
        let a = first.idiam_of_word(&w).unwrap();
        let mut second = Oracle::with_cache_dir(p, budget, Some(dir.path().to_path_buf()));
        assert!(!second.table.words.is_empty(), "second oracle reads the cache");
        let b = second.idiam_of_word(&w).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn s1_subdiagram_profile() {
        let d = s1();
        let profile = subdiagram_profile(&d).unwrap();
        assert_eq!(profile[&0].0, 0);
        assert_eq!(profile[&2].0, 4); // a single edge
        assert_eq!(profile[&4].0, 8); // the full square
        // Whole-diagram consistency: the full square's entry matches
        // the unbased diameter.
        assert_eq!(profile[&4], unbased_idiam(&d));
    }

    #[test]
    fn subdiagram_profiles_agree() {
        for d in [s1(), rect()] {
            let a = subdiagram_profile(&d).unwrap();
            let b = subdiagram_profile_grown(&d).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn minimal_filling_matches_idiam() {
        let mut oracle = z2_oracle();
        let w = commutator(&oracle.presentation);
        let d = oracle.minimal_filling(&w).unwrap();
        let (q, _) = oracle.idiam_of_word(&w).unwrap();
        assert_eq!(idiam(&d), q);
        assert_eq!(&d.boundary_word(), &w);
    }
}

