//! Face distances, distance layers around a marked face, and the decomposition
//! of layer boundaries into simple loops.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combmap::{CombinatorialMap, Dart, EdgeId, FaceId, MapError, VertexId};
use crate::exec::Execution;
use crate::hole::Hole;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplorationError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("DuplicateMarkedFace: face {0} is marked more than once")]
    DuplicateMarkedFace(FaceId),
    #[error("BadFaceIndex: face {index} out of range (map has {faces} faces)")]
    BadFaceIndex { index: usize, faces: usize },
    #[error("EmptyLayer: no face at distance {k} from marked face {hole}")]
    EmptyLayer { hole: Hole, k: u32 },
    #[error("ZeroRadius: boundary radius must be at least 1")]
    ZeroRadius,
    #[error("NotClosed: darts do not form a closed walk")]
    NotClosed,
    #[error("NotSimple: walk repeats a vertex or edge")]
    NotSimple,
}

/// All-pairs face distances, where faces sharing a vertex are adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn compute(map: &CombinatorialMap, exec: Execution) -> DistanceMatrix {
        let n = map.num_faces();
        let vertex_faces: Vec<Vec<FaceId>> = map
            .vertices()
            .map(|v| {
                let set: BTreeSet<FaceId> = map.rotation(v).iter().map(|&d| map.face_of(d)).collect();
                set.into_iter().collect()
            })
            .collect();
        let sources: Vec<usize> = (0..n).collect();
        let rows = exec.map(&sources, |&s| bfs_row(map, &vertex_faces, FaceId(s)));
        DistanceMatrix {
            n,
            dist: rows.into_iter().flatten().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, a: FaceId, b: FaceId) -> u32 {
        self.dist[a.0 * self.n + b.0]
    }

    pub fn row(&self, a: FaceId) -> &[u32] {
        &self.dist[a.0 * self.n..(a.0 + 1) * self.n]
    }
}

fn bfs_row(map: &CombinatorialMap, vertex_faces: &[Vec<FaceId>], source: FaceId) -> Vec<u32> {
    let mut dist = vec![u32::MAX; map.num_faces()];
    let mut seen_vertex = vec![false; map.num_vertices()];
    dist[source.0] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(f) = queue.pop_front() {
        for &d in map.face(f) {
            let v = map.vertex_of(d);
            if seen_vertex[v.0] {
                continue;
            }
            seen_vertex[v.0] = true;
            for &g in &vertex_faces[v.0] {
                if dist[g.0] == u32::MAX {
                    dist[g.0] = dist[f.0] + 1;
                    queue.push_back(g);
                }
            }
        }
    }
    dist
}

/// A vertex-simple closed walk, stored as its dart sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleLoop {
    darts: Vec<Dart>,
}

impl SimpleLoop {
    /// Validates that `darts` chain head to tail, close up, and never revisit
    /// a vertex.
    pub fn new(map: &CombinatorialMap, darts: Vec<Dart>) -> Result<SimpleLoop, ExplorationError> {
        if darts.is_empty() || darts.iter().any(|d| d.0 >= map.num_darts()) {
            return Err(ExplorationError::NotClosed);
        }
        for (i, &d) in darts.iter().enumerate() {
            let next = darts[(i + 1) % darts.len()];
            if map.head(d) != map.vertex_of(next) {
                return Err(ExplorationError::NotClosed);
            }
        }
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for &d in &darts {
            if !vertices.insert(map.vertex_of(d)) || !edges.insert(d.edge()) {
                return Err(ExplorationError::NotSimple);
            }
        }
        Ok(SimpleLoop { darts })
    }

    pub(crate) fn from_darts_unchecked(darts: Vec<Dart>) -> SimpleLoop {
        SimpleLoop { darts }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Cyclic vertex sequence (tails of the darts).
    pub fn vertices(&self, map: &CombinatorialMap) -> Vec<VertexId> {
        self.darts.iter().map(|&d| map.vertex_of(d)).collect()
    }

    /// Sorted edge ids; the canonical form used for loop equality.
    pub fn edge_set(&self) -> Vec<EdgeId> {
        let mut edges: Vec<EdgeId> = self.darts.iter().map(|d| d.edge()).collect();
        edges.sort_unstable();
        edges
    }

    pub fn same_edges(&self, other: &SimpleLoop) -> bool {
        self.edge_set() == other.edge_set()
    }

    pub fn shares_vertex(&self, other: &SimpleLoop, map: &CombinatorialMap) -> bool {
        let mine: BTreeSet<VertexId> = self.vertices(map).into_iter().collect();
        other.vertices(map).iter().any(|v| mine.contains(v))
    }

    /// The same loop traversed backwards.
    pub fn reversed(&self) -> SimpleLoop {
        SimpleLoop {
            darts: self.darts.iter().rev().map(|d| d.twin()).collect(),
        }
    }

    /// The same loop starting at position `k`.
    pub fn rotated(&self, k: usize) -> SimpleLoop {
        let mut darts = self.darts.clone();
        if !darts.is_empty() {
            let k = k % darts.len();
            darts.rotate_left(k);
        }
        SimpleLoop { darts }
    }
}

/// The two sides of a simple loop: faces to the right and to the left of its darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hemispheres {
    pub right: Vec<FaceId>,
    pub left: Vec<FaceId>,
}

/// Splits the faces along a simple loop by flood fill across non-loop edges.
pub fn hemispheres(map: &CombinatorialMap, lp: &SimpleLoop) -> Result<Hemispheres, ExplorationError> {
    let lp = SimpleLoop::new(map, lp.darts.clone())?;
    let mut blocked = vec![false; map.num_edges()];
    for d in lp.darts() {
        blocked[d.edge().0] = true;
    }
    let first = lp.darts[0];
    let right = flood(map, map.face_of(first), &blocked);
    let left = flood(map, map.face_of(first.twin()), &blocked);
    if right[map.face_of(first.twin()).0] || right.iter().zip(&left).any(|(a, b)| *a == *b) {
        return Err(ExplorationError::NotSimple);
    }
    let collect = |mask: &[bool]| {
        mask.iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| FaceId(i))
            .collect::<Vec<_>>()
    };
    Ok(Hemispheres {
        right: collect(&right),
        left: collect(&left),
    })
}

fn flood(map: &CombinatorialMap, start: FaceId, blocked: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; map.num_faces()];
    seen[start.0] = true;
    let mut stack = vec![start];
    while let Some(f) = stack.pop() {
        for &d in map.face(f) {
            if blocked[d.edge().0] {
                continue;
            }
            let g = map.face_of(d.twin());
            if !seen[g.0] {
                seen[g.0] = true;
                stack.push(g);
            }
        }
    }
    seen
}

/// Topological type of a simple loop relative to the three marked faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LoopType {
    Contractible,
    Type(Hole),
}

/// One loop of a layer boundary together with the faces on its far side
/// (the side away from the explored region).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLoop {
    pub lp: SimpleLoop,
    pub outer: Vec<FaceId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLoopSet {
    pub hole: Hole,
    pub k: u32,
    pub loops: Vec<BoundaryLoop>,
}

/// A connected spherical map with three distinct marked faces.
#[derive(Clone, Debug)]
pub struct SigmaGraph {
    map: CombinatorialMap,
    marked: [FaceId; 3],
    dist: DistanceMatrix,
}

impl SigmaGraph {
    pub fn new(map: CombinatorialMap, marked: [FaceId; 3]) -> Result<SigmaGraph, ExplorationError> {
        Self::with_execution(map, marked, Execution::Sequential)
    }

    pub fn with_execution(
        map: CombinatorialMap,
        marked: [FaceId; 3],
        exec: Execution,
    ) -> Result<SigmaGraph, ExplorationError> {
        for f in marked {
            if f.0 >= map.num_faces() {
                return Err(ExplorationError::BadFaceIndex {
                    index: f.0,
                    faces: map.num_faces(),
                });
            }
        }
        for i in 0..3 {
            for j in 0..i {
                if marked[i] == marked[j] {
                    return Err(ExplorationError::DuplicateMarkedFace(marked[i]));
                }
            }
        }
        let dist = DistanceMatrix::compute(&map, exec);
        Ok(SigmaGraph { map, marked, dist })
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn into_map(self) -> CombinatorialMap {
        self.map
    }

    pub fn marked(&self, hole: Hole) -> FaceId {
        self.marked[hole.index()]
    }

    pub fn marked_faces(&self) -> [FaceId; 3] {
        self.marked
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    /// Distance between the two marked faces other than `hole`.
    pub fn opposite_distance(&self, hole: Hole) -> u32 {
        let (a, b) = hole.others();
        self.dist.get(self.marked(a), self.marked(b))
    }

    /// Same graph with the marked faces relabelled: hole `i` of the result is
    /// hole `perm[i]` of `self`.
    pub fn relabelled(&self, perm: [Hole; 3]) -> SigmaGraph {
        SigmaGraph {
            map: self.map.clone(),
            marked: perm.map(|h| self.marked(h)),
            dist: self.dist.clone(),
        }
    }

    /// Faces at distance exactly `k` from the marked face of `hole`.
    pub fn layer(&self, hole: Hole, k: u32) -> Vec<FaceId> {
        let row = self.dist.row(self.marked(hole));
        row.iter()
            .enumerate()
            .filter(|(_, &d)| d == k)
            .map(|(f, _)| FaceId(f))
            .collect()
    }

    /// Boundary of the region of faces at distance `< k` from the marked face
    /// of `hole`, split into one simple loop per edge-connected component of
    /// the unexplored faces.
    pub fn boundary_loops(&self, hole: Hole, k: u32) -> Result<BoundaryLoopSet, ExplorationError> {
        if k == 0 {
            return Err(ExplorationError::ZeroRadius);
        }
        let map = &self.map;
        let row = self.dist.row(self.marked(hole));
        let inside: Vec<bool> = row.iter().map(|&d| d < k).collect();
        if inside.iter().all(|&x| x) {
            return Err(ExplorationError::EmptyLayer { hole, k });
        }

        // edge-connected components of the unexplored faces
        let mut component = vec![usize::MAX; map.num_faces()];
        let mut members: Vec<Vec<FaceId>> = Vec::new();
        for f in map.face_ids() {
            if inside[f.0] || component[f.0] != usize::MAX {
                continue;
            }
            let id = members.len();
            let mut faces = vec![f];
            component[f.0] = id;
            let mut stack = vec![f];
            while let Some(g) = stack.pop() {
                for &d in map.face(g) {
                    let h = map.face_of(d.twin());
                    if !inside[h.0] && component[h.0] == usize::MAX {
                        component[h.0] = id;
                        faces.push(h);
                        stack.push(h);
                    }
                }
            }
            faces.sort_unstable();
            members.push(faces);
        }

        // boundary darts keep the unexplored side on their right
        let is_boundary = |d: Dart| !inside[map.face_of(d).0] && inside[map.face_of(d.twin()).0];
        let successor = |d: Dart| {
            let mut e = map.face_next(d);
            while !inside[map.face_of(e.twin()).0] {
                e = map.rot_next(e);
            }
            e
        };

        let mut traced = vec![false; map.num_darts()];
        let mut loops = Vec::new();
        for start in map.darts() {
            if traced[start.0] || !is_boundary(start) {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                traced[d.0] = true;
                darts.push(d);
                d = successor(d);
                if d == start {
                    break;
                }
            }
            let lp = SimpleLoop::from_darts_unchecked(darts);
            debug_assert!(SimpleLoop::new(map, lp.darts.clone()).is_ok());
            loops.push(BoundaryLoop {
                lp,
                outer: members[component[map.face_of(start).0]].clone(),
            });
        }
        Ok(BoundaryLoopSet { hole, k, loops })
    }

    pub fn hemispheres(&self, lp: &SimpleLoop) -> Result<Hemispheres, ExplorationError> {
        hemispheres(&self.map, lp)
    }

    pub fn classify_loop(&self, lp: &SimpleLoop) -> Result<LoopType, ExplorationError> {
        let sides = self.hemispheres(lp)?;
        Ok(self.classify_sides(&sides))
    }

    pub(crate) fn classify_sides(&self, sides: &Hemispheres) -> LoopType {
        let on_right: Vec<Hole> = Hole::ALL
            .into_iter()
            .filter(|&h| sides.right.binary_search(&self.marked(h)).is_ok())
            .collect();
        match on_right.len() {
            1 => LoopType::Type(on_right[0]),
            2 => {
                let alone = Hole::ALL
                    .into_iter()
                    .find(|h| !on_right.contains(h))
                    .expect("three holes");
                LoopType::Type(alone)
            }
            _ => LoopType::Contractible,
        }
    }
}

/// Builds a [`SigmaGraph`] from a map and three face indices.
pub fn make_sigma_graph(
    map: CombinatorialMap,
    f1: usize,
    f2: usize,
    f3: usize,
) -> Result<SigmaGraph, ExplorationError> {
    SigmaGraph::new(map, [FaceId(f1), FaceId(f2), FaceId(f3)])
}
