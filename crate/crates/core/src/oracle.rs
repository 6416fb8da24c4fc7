//! Brute-force ground truth: every simple cycle of a graph, maximum packings
//! of disjoint cycles of one type, and all achievable lamination types.
//!
//! Nothing here uses distance layers or special loops, so results can be
//! compared against the exploration pipeline.

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::combmap::{Dart, EdgeId};
use crate::exec::Execution;
use crate::exploration::{ExplorationError, LoopType, SigmaGraph, SimpleLoop};
use crate::hole::Hole;
use crate::polytope::LaminationType;

pub const DEFAULT_CYCLE_LIMIT: usize = 100_000;
pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("LimitExceeded: {0}")]
    LimitExceeded(String),
    #[error(transparent)]
    Exploration(#[from] ExplorationError),
}

/// Fixed-width vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bitset(Vec<u64>);

impl Bitset {
    pub fn new(n: usize) -> Bitset {
        Bitset(vec![0; n.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn intersects(&self, other: &Bitset) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

/// Every vertex-simple cycle of a graph with its type.
#[derive(Clone, Debug)]
pub struct CycleCatalog {
    pub cycles: Vec<SimpleLoop>,
    pub types: Vec<LoopType>,
    pub vertex_sets: Vec<Bitset>,
}

impl CycleCatalog {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Whether two cycles share a vertex.
    pub fn conflict(&self, a: usize, b: usize) -> bool {
        a != b && self.vertex_sets[a].intersects(&self.vertex_sets[b])
    }

    pub fn of_type(&self, t: LoopType) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.types[c] == t).collect()
    }

    /// Cycles of type `t` whose vertex set contains no other such cycle's.
    /// Swapping a cycle for one inside it never creates a conflict, so
    /// packings only need these.
    fn minimal_of_type(&self, t: LoopType) -> Vec<usize> {
        let all = self.of_type(t);
        all.iter()
            .copied()
            .filter(|&a| {
                !all.iter().any(|&b| {
                    b != a
                        && self.vertex_sets[b].is_subset(&self.vertex_sets[a])
                        && (self.vertex_sets[b] != self.vertex_sets[a] || b < a)
                })
            })
            .collect()
    }
}

pub fn all_simple_cycles(g: &SigmaGraph, limit: usize) -> Result<CycleCatalog, OracleError> {
    let map = g.map();
    let mut seen: HashSet<Vec<EdgeId>> = HashSet::new();
    let mut found: Vec<SimpleLoop> = Vec::new();
    let mut on_path = vec![false; map.num_vertices()];
    let mut used_edge = vec![false; map.num_edges()];

    struct Search<'a> {
        g: &'a SigmaGraph,
        start: usize,
        path: Vec<Dart>,
        limit: usize,
    }

    fn extend(
        s: &mut Search<'_>,
        u: usize,
        on_path: &mut [bool],
        used_edge: &mut [bool],
        seen: &mut HashSet<Vec<EdgeId>>,
        found: &mut Vec<SimpleLoop>,
    ) -> Result<(), OracleError> {
        let map = s.g.map();
        for &d in map.rotation(crate::combmap::VertexId(u)) {
            if used_edge[d.edge().0] {
                continue;
            }
            let w = map.head(d).0;
            if w == s.start {
                s.path.push(d);
                let mut key: Vec<EdgeId> = s.path.iter().map(|d| d.edge()).collect();
                key.sort_unstable();
                if seen.insert(key) {
                    if found.len() >= s.limit {
                        return Err(OracleError::LimitExceeded(format!(
                            "more than {} simple cycles",
                            s.limit
                        )));
                    }
                    found.push(SimpleLoop::new(map, s.path.clone())?);
                }
                s.path.pop();
            } else if w > s.start && !on_path[w] {
                on_path[w] = true;
                used_edge[d.edge().0] = true;
                s.path.push(d);
                extend(s, w, on_path, used_edge, seen, found)?;
                s.path.pop();
                used_edge[d.edge().0] = false;
                on_path[w] = false;
            }
        }
        Ok(())
    }

    for start in 0..map.num_vertices() {
        let mut s = Search { g, start, path: Vec::new(), limit };
        on_path[start] = true;
        extend(&mut s, start, &mut on_path, &mut used_edge, &mut seen, &mut found)?;
        on_path[start] = false;
    }

    found.sort_by_cached_key(|c| c.edge_set());
    let types = found
        .iter()
        .map(|c| g.classify_loop(c))
        .collect::<Result<Vec<_>, _>>()?;
    let vertex_sets = found
        .iter()
        .map(|c| {
            let mut b = Bitset::new(map.num_vertices());
            for v in c.vertices(map) {
                b.insert(v.0);
            }
            b
        })
        .collect();
    Ok(CycleCatalog { cycles: found, types, vertex_sets })
}

/// Non-contractible cycles that are vertex-minimal within their type, found
/// by streaming over every simple cycle without storing them.
///
/// If a lamination uses a cycle `C` and `C'` has the same type with
/// `V(C') ⊆ V(C)`, swapping `C` for `C'` keeps the lamination valid and its
/// type unchanged. Maximum packings and the set of achievable types are
/// therefore the same over this catalog as over all cycles.
pub fn minimal_cycle_catalog(
    g: &SigmaGraph,
    node_limit: u64,
    exec: Execution,
) -> Result<CycleCatalog, OracleError> {
    let map = g.map();
    let n = map.num_vertices();
    if n > 128 {
        return Err(OracleError::LimitExceeded(format!("{n} vertices (at most 128 supported)")));
    }
    let edge_faces: Vec<(usize, usize)> = (0..map.num_edges())
        .map(|e| {
            let (a, b) = map.edge_faces(EdgeId(e));
            (a.0, b.0)
        })
        .collect();
    let mut face_edges: Vec<Vec<usize>> = vec![Vec::new(); map.num_faces()];
    for (e, &(a, b)) in edge_faces.iter().enumerate() {
        face_edges[a].push(e);
        if b != a {
            face_edges[b].push(e);
        }
    }
    let chords: Vec<(usize, usize, usize)> = (0..map.num_edges())
        .map(|e| {
            let d = Dart(2 * e);
            (e, map.head(d.twin()).0, map.head(d).0)
        })
        .collect();
    let marked = g.marked_faces().map(|f| f.0);
    let budget = Budget::new(node_limit);

    type Antichain = [Vec<(u128, Vec<Dart>)>; 3];
    fn insert(list: &mut Vec<(u128, Vec<Dart>)>, b: u128, darts: &[Dart]) {
        if list.iter().any(|(x, _)| x & !b == 0) {
            return;
        }
        list.retain(|(x, _)| b & !x != 0);
        list.push((b, darts.to_vec()));
    }

    struct Walk<'a> {
        map: &'a crate::combmap::CombinatorialMap,
        edge_faces: &'a [(usize, usize)],
        face_edges: &'a [Vec<usize>],
        chords: &'a [(usize, usize, usize)],
        marked: [usize; 3],
        budget: &'a Budget,
        start: usize,
        path: Vec<Dart>,
        on_path: Vec<bool>,
        on_cycle: Vec<bool>,
        seen_face: Vec<bool>,
        stack: Vec<usize>,
        found: Antichain,
    }

    impl Walk<'_> {
        /// Type of the current closed path, found by flooding from the first
        /// marked face without crossing the path.
        fn classify(&mut self) -> Option<usize> {
            for d in &self.path {
                self.on_cycle[d.edge().0] = true;
            }
            self.seen_face.iter_mut().for_each(|x| *x = false);
            self.stack.clear();
            self.stack.push(self.marked[0]);
            self.seen_face[self.marked[0]] = true;
            while let Some(f) = self.stack.pop() {
                for &e in &self.face_edges[f] {
                    if self.on_cycle[e] {
                        continue;
                    }
                    let (a, b) = self.edge_faces[e];
                    let h = if a == f { b } else { a };
                    if !self.seen_face[h] {
                        self.seen_face[h] = true;
                        self.stack.push(h);
                    }
                }
            }
            for d in &self.path {
                self.on_cycle[d.edge().0] = false;
            }
            let t = match (self.seen_face[self.marked[1]], self.seen_face[self.marked[2]]) {
                (false, false) => 0,
                (true, false) => 2,
                (false, true) => 1,
                (true, true) => return None,
            };
            Some(t)
        }

        /// Whether a chord runs through the side holding only the lone hole.
        /// The cycle through that chord around the hole is then no larger.
        fn has_lone_side_chord(&self, t: usize, used: u128) -> bool {
            let lone_seen = t == 0;
            self.chords.iter().any(|&(e, u, v)| {
                used >> u & 1 == 1
                    && used >> v & 1 == 1
                    && !self.path.iter().any(|d| d.edge().0 == e)
                    && self.seen_face[self.edge_faces[e].0] == lone_seen
            })
        }

        fn extend(&mut self, u: usize, used: u128) -> Result<(), OracleError> {
            self.budget.tick()?;
            for &d in self.map.rotation(crate::combmap::VertexId(u)) {
                let w = self.map.head(d).0;
                let e = d.edge();
                if w == self.start {
                    // each cycle is met once per direction; keep one
                    let keep = match self.path.first() {
                        None => d.0 % 2 == 0,
                        Some(first) => first.edge() < e,
                    };
                    if keep {
                        self.path.push(d);
                        let t = self.classify().filter(|&t| !self.has_lone_side_chord(t, used));
                        if let Some(t) = t {
                            let darts = std::mem::take(&mut self.path);
                            insert(&mut self.found[t], used, &darts);
                            self.path = darts;
                        }
                        self.path.pop();
                    }
                } else if w > self.start && !self.on_path[w] {
                    self.on_path[w] = true;
                    self.path.push(d);
                    self.extend(w, used | 1u128 << w)?;
                    self.path.pop();
                    self.on_path[w] = false;
                }
            }
            Ok(())
        }
    }

    let starts: Vec<usize> = (0..n).collect();
    let per_start = exec.map(&starts, |&s| -> Result<Antichain, OracleError> {
        let mut w = Walk {
            map,
            edge_faces: &edge_faces,
            face_edges: &face_edges,
            chords: &chords,
            marked,
            budget: &budget,
            start: s,
            path: Vec::new(),
            on_path: vec![false; n],
            on_cycle: vec![false; map.num_edges()],
            seen_face: vec![false; map.num_faces()],
            stack: Vec::new(),
            found: Default::default(),
        };
        w.on_path[s] = true;
        w.extend(s, 1u128 << s)?;
        Ok(w.found)
    });
    let mut merged: Antichain = Default::default();
    for part in per_start {
        for (t, list) in part?.into_iter().enumerate() {
            for (b, darts) in list {
                insert(&mut merged[t], b, &darts);
            }
        }
    }

    let mut cycles = Vec::new();
    let mut types = Vec::new();
    let mut vertex_sets = Vec::new();
    for (t, mut list) in merged.into_iter().enumerate() {
        list.sort_by_key(|(b, _)| *b);
        for (b, darts) in list {
            cycles.push(SimpleLoop::new(map, darts)?);
            types.push(LoopType::Type(Hole::from_index(t)));
            let mut set = Bitset::new(n);
            for v in 0..n {
                if b >> v & 1 == 1 {
                    set.insert(v);
                }
            }
            vertex_sets.push(set);
        }
    }
    Ok(CycleCatalog { cycles, types, vertex_sets })
}

struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    fn new(limit: u64) -> Budget {
        Budget { used: AtomicU64::new(0), limit }
    }

    fn tick(&self) -> Result<(), OracleError> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(OracleError::LimitExceeded(format!(
                "more than {} search nodes",
                self.limit
            )));
        }
        Ok(())
    }
}

/// Largest number of pairwise vertex-disjoint cycles among `cands`.
fn max_packing(cat: &CycleCatalog, cands: &[usize], budget: &Budget) -> Result<usize, OracleError> {
    fn go(
        cat: &CycleCatalog,
        cands: &[usize],
        from: usize,
        used: &Bitset,
        size: usize,
        best: &mut usize,
        budget: &Budget,
    ) -> Result<(), OracleError> {
        budget.tick()?;
        *best = (*best).max(size);
        for idx in from..cands.len() {
            // even taking every remaining candidate cannot beat the best
            if size + (cands.len() - idx) <= *best {
                break;
            }
            let c = cands[idx];
            if used.intersects(&cat.vertex_sets[c]) {
                continue;
            }
            let mut next = used.clone();
            next.union_with(&cat.vertex_sets[c]);
            go(cat, cands, idx + 1, &next, size + 1, best, budget)?;
        }
        Ok(())
    }
    let n = cat.vertex_sets.first().map_or(0, |b| b.0.len() * 64);
    let mut best = 0;
    go(cat, cands, 0, &Bitset::new(n), 0, &mut best, budget)?;
    Ok(best)
}

pub fn max_disjoint_type(cat: &CycleCatalog, hole: Hole, node_limit: u64) -> Result<usize, OracleError> {
    let cands = cat.minimal_of_type(LoopType::Type(hole));
    max_packing(cat, &cands, &Budget::new(node_limit))
}

/// `max_disjoint_type` for all three holes.
pub fn max_disjoint_all(
    cat: &CycleCatalog,
    node_limit: u64,
    exec: Execution,
) -> Result<[usize; 3], OracleError> {
    let r = exec.map(&Hole::ALL, |&h| max_disjoint_type(cat, h, node_limit));
    Ok([r[0].clone()?, r[1].clone()?, r[2].clone()?])
}

/// Whether some lamination has exactly `want[i]` loops of each type.
fn feasible(
    cat: &CycleCatalog,
    by_type: &[Vec<usize>; 3],
    want: [usize; 3],
    budget: &Budget,
) -> Result<bool, OracleError> {
    fn go(
        cat: &CycleCatalog,
        by_type: &[Vec<usize>; 3],
        want: [usize; 3],
        ty: usize,
        from: usize,
        used: &Bitset,
        budget: &Budget,
    ) -> Result<bool, OracleError> {
        budget.tick()?;
        if ty == 3 {
            return Ok(true);
        }
        if want[ty] == 0 {
            return go(cat, by_type, want, ty + 1, 0, used, budget);
        }
        let cands = &by_type[ty];
        for idx in from..cands.len() {
            if cands.len() - idx < want[ty] {
                break;
            }
            let c = cands[idx];
            if used.intersects(&cat.vertex_sets[c]) {
                continue;
            }
            let mut next = used.clone();
            next.union_with(&cat.vertex_sets[c]);
            let mut rest = want;
            rest[ty] -= 1;
            let (nt, nf) = if rest[ty] == 0 { (ty + 1, 0) } else { (ty, idx + 1) };
            if go(cat, by_type, rest, nt, nf, &next, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    let n = cat.vertex_sets.first().map_or(0, |b| b.0.len() * 64);
    go(cat, by_type, want, 0, 0, &Bitset::new(n), budget)
}

/// Every achievable lamination type, `(0, 0, 0)` included, sorted.
pub fn lamination_space_bruteforce(
    cat: &CycleCatalog,
    node_limit: u64,
) -> Result<Vec<LaminationType>, OracleError> {
    let budget = Budget::new(node_limit);
    let by_type = Hole::ALL.map(|h| cat.minimal_of_type(LoopType::Type(h)));
    let caps = [0, 1, 2].map(|i| max_packing(cat, &by_type[i], &budget));
    let caps = [caps[0].clone()?, caps[1].clone()?, caps[2].clone()?];

    let mut ok: BTreeSet<[usize; 3]> = BTreeSet::new();
    // scan from the top of the box so downward closure settles most triples
    for x in (0..=caps[0]).rev() {
        for y in (0..=caps[1]).rev() {
            for z in (0..=caps[2]).rev() {
                let p = [x, y, z];
                let dominated = ok.range(p..).any(|q| (0..3).all(|i| q[i] >= p[i]));
                if dominated || feasible(cat, &by_type, p, &budget)? {
                    ok.insert(p);
                }
            }
        }
    }
    Ok(ok
        .into_iter()
        .map(|p| LaminationType::new(p[0] as u32, p[1] as u32, p[2] as u32))
        .collect())
}
