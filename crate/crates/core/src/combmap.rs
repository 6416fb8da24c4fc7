//! Graphs embedded on the sphere, encoded as combinatorial maps.
//!
//! Darts come in twin pairs `(2e, 2e + 1)` for edge `e`. Each vertex carries
//! the counterclockwise cyclic order of the darts leaving it. The face to the
//! right of a dart `d` is traced by repeatedly applying
//! `face_next(d) = rot_next(twin(d))`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A half-edge. The twin is obtained by flipping the lowest bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dart(pub usize);

impl Dart {
    #[inline]
    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 >> 1)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl EdgeId {
    /// The dart of this edge oriented from its first endpoint.
    pub fn dart(self) -> Dart {
        Dart(self.0 << 1)
    }
}

/// Index into the derived face list. Faces are numbered by their smallest dart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceId(pub usize);

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("malformed rotation: {0}")]
    MalformedRotation(String),
    #[error("map has no edges")]
    Empty,
    #[error("map is disconnected")]
    Disconnected,
    #[error("map is not spherical: V - E + F = {0}")]
    NonSpherical(i64),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
}

/// An immutable rotation system on the sphere with its derived faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialMap {
    rotations: Vec<Vec<Dart>>,
    vertex_of: Vec<usize>,
    rot_pos: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<Dart>>,
}

impl CombinatorialMap {
    /// Builds a map from per-vertex counterclockwise dart lists.
    pub fn from_rotations(rotations: Vec<Vec<usize>>) -> Result<Self, MapError> {
        let dart_count: usize = rotations.iter().map(Vec::len).sum();
        if dart_count == 0 {
            return Err(MapError::Empty);
        }
        if !dart_count.is_multiple_of(2) {
            return Err(MapError::MalformedRotation(format!(
                "odd number of darts ({dart_count})"
            )));
        }
        let mut vertex_of = vec![usize::MAX; dart_count];
        let mut rot_pos = vec![0; dart_count];
        for (v, rot) in rotations.iter().enumerate() {
            for (pos, &d) in rot.iter().enumerate() {
                if d >= dart_count {
                    return Err(MapError::MalformedRotation(format!(
                        "dart {d} out of range 0..{dart_count}"
                    )));
                }
                if vertex_of[d] != usize::MAX {
                    return Err(MapError::MalformedRotation(format!(
                        "dart {d} appears more than once"
                    )));
                }
                vertex_of[d] = v;
                rot_pos[d] = pos;
            }
        }
        // every id is in range and unique, so the count guarantees coverage
        let rotations: Vec<Vec<Dart>> = rotations
            .into_iter()
            .map(|r| r.into_iter().map(Dart).collect())
            .collect();

        let mut map = CombinatorialMap {
            rotations,
            vertex_of,
            rot_pos,
            face_of: vec![usize::MAX; dart_count],
            faces: Vec::new(),
        };
        map.check_connected()?;
        map.trace_faces();
        let chi = map.euler_characteristic();
        if chi != 2 {
            return Err(MapError::NonSpherical(chi));
        }
        Ok(map)
    }

    fn check_connected(&self) -> Result<(), MapError> {
        let n = self.rotations.len();
        let mut seen = vec![false; n];
        let start = match self.rotations.iter().position(|r| !r.is_empty()) {
            Some(v) => v,
            None => return Err(MapError::Empty),
        };
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in &self.rotations[v] {
                let w = self.vertex_of[d.twin().0];
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != n {
            return Err(MapError::Disconnected);
        }
        Ok(())
    }

    fn trace_faces(&mut self) {
        for start in 0..self.num_darts() {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut orbit = Vec::new();
            let mut d = Dart(start);
            loop {
                self.face_of[d.0] = id;
                orbit.push(d);
                d = self.face_next(d);
                if d.0 == start {
                    break;
                }
            }
            self.faces.push(orbit);
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_darts(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_darts() / 2
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.num_darts()).map(Dart)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_vertices()).map(VertexId)
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.num_faces()).map(FaceId)
    }

    /// Counterclockwise list of darts leaving `v`.
    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotations[v.0]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotations
    }

    /// Tail vertex of a dart.
    #[inline]
    pub fn vertex_of(&self, d: Dart) -> VertexId {
        VertexId(self.vertex_of[d.0])
    }

    #[inline]
    pub fn head(&self, d: Dart) -> VertexId {
        self.vertex_of(d.twin())
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.vertex_of(e.dart()), self.head(e.dart()))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v.0].len()
    }

    #[inline]
    pub fn rot_next(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.vertex_of[d.0]];
        rot[(self.rot_pos[d.0] + 1) % rot.len()]
    }

    #[inline]
    pub fn rot_prev(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.vertex_of[d.0]];
        rot[(self.rot_pos[d.0] + rot.len() - 1) % rot.len()]
    }

    /// Successor of `d` along the face on its right.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_next(d.twin())
    }

    /// The face on the right of `d`.
    #[inline]
    pub fn face_of(&self, d: Dart) -> FaceId {
        FaceId(self.face_of[d.0])
    }

    /// Cyclic dart sequence bounding face `f`.
    pub fn face(&self, f: FaceId) -> &[Dart] {
        &self.faces[f.0]
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_degree(&self, f: FaceId) -> usize {
        self.faces[f.0].len()
    }

    /// The faces on the two sides of an edge (right of `2e`, right of `2e + 1`).
    pub fn edge_faces(&self, e: EdgeId) -> (FaceId, FaceId) {
        let d = e.dart();
        (self.face_of(d), self.face_of(d.twin()))
    }

    /// Faces with a corner at `v`.
    pub fn faces_sharing_vertex(&self, v: VertexId) -> Result<BTreeSet<FaceId>, MapError> {
        let rot = self
            .rotations
            .get(v.0)
            .ok_or(MapError::UnknownVertex(v.0))?;
        Ok(rot.iter().map(|&d| self.face_of(d)).collect())
    }

    /// Whether the edge has the same face on both sides.
    pub fn is_bridge(&self, e: EdgeId) -> bool {
        let (a, b) = self.edge_faces(e);
        a == b
    }

    /// Raw per-vertex rotation lists, the inverse of [`Self::from_rotations`].
    pub fn to_rotation_lists(&self) -> Vec<Vec<usize>> {
        self.rotations
            .iter()
            .map(|r| r.iter().map(|d| d.0).collect())
            .collect()
    }

    /// Checks whether `dart_perm` maps this map onto itself with every rotation
    /// reversed (an orientation-reversing automorphism).
    pub fn is_reflection(&self, dart_perm: &[Dart]) -> bool {
        if dart_perm.len() != self.num_darts() {
            return false;
        }
        let mut hit = vec![false; dart_perm.len()];
        for &d in dart_perm {
            if d.0 >= hit.len() || hit[d.0] {
                return false;
            }
            hit[d.0] = true;
        }
        self.darts().all(|d| {
            let image = dart_perm[d.0];
            dart_perm[d.twin().0] == image.twin()
                && dart_perm[self.rot_next(d).0] == self.rot_prev(image)
        })
    }

    /// Removes one edge, returning the new map and for each old dart its new
    /// id (`None` for the removed darts). Isolated vertices left behind are
    /// dropped.
    pub fn delete_edge(&self, e: EdgeId) -> Result<(CombinatorialMap, Vec<Option<Dart>>), MapError> {
        let removed = [e.dart().0, e.dart().twin().0];
        let mut renumber = vec![None; self.num_darts()];
        let mut next = 0;
        for (old, slot) in renumber.iter_mut().enumerate() {
            if !removed.contains(&old) {
                *slot = Some(Dart(next));
                next += 1;
            }
        }
        let rotations: Vec<Vec<usize>> = self
            .rotations
            .iter()
            .map(|r| r.iter().filter_map(|d| renumber[d.0].map(|n| n.0)).collect::<Vec<_>>())
            .filter(|r: &Vec<usize>| !r.is_empty())
            .collect();
        let map = CombinatorialMap::from_rotations(rotations)?;
        Ok((map, renumber))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> CombinatorialMap {
        // edges: 0 = v0->v1, 1 = v1->v2, 2 = v2->v0
        CombinatorialMap::from_rotations(vec![vec![0, 5], vec![2, 1], vec![4, 3]]).unwrap()
    }

    #[test]
    fn triangle_has_two_faces_of_degree_three() {
        let m = triangle();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (3, 3, 2));
        assert!(m.faces().iter().all(|f| f.len() == 3));
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn self_loop_has_two_faces_of_degree_one() {
        let m = CombinatorialMap::from_rotations(vec![vec![0, 1]]).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (1, 1, 2));
        assert!(m.faces().iter().all(|f| f.len() == 1));
    }

    #[test]
    fn digon_has_two_faces_of_degree_two() {
        let m = CombinatorialMap::from_rotations(vec![vec![0, 2], vec![3, 1]]).unwrap();
        assert_eq!(m.num_faces(), 2);
        assert!(m.faces().iter().all(|f| f.len() == 2));
    }

    #[test]
    fn faces_sorted_by_smallest_dart() {
        let m = triangle();
        let firsts: Vec<usize> = m.faces().iter().map(|f| f.iter().min().unwrap().0).collect();
        let mut sorted = firsts.clone();
        sorted.sort();
        assert_eq!(firsts, sorted);
        assert_eq!(m.face_of(Dart(0)), FaceId(0));
    }

    #[test]
    fn triangle_vertex_sees_both_faces() {
        let m = triangle();
        for v in m.vertices() {
            assert_eq!(m.faces_sharing_vertex(v).unwrap().len(), 2);
        }
        assert_eq!(
            m.faces_sharing_vertex(VertexId(7)),
            Err(MapError::UnknownVertex(7))
        );
    }

    #[test]
    fn pendant_vertex_sees_one_face() {
        // path of two edges: v0 - v1 - v2
        let m = CombinatorialMap::from_rotations(vec![vec![0], vec![1, 2], vec![3]]).unwrap();
        assert_eq!(m.num_faces(), 1);
        assert_eq!(m.faces_sharing_vertex(VertexId(0)).unwrap().len(), 1);
    }

    #[test]
    fn two_crossing_circles_have_four_quadrants_at_a_crossing() {
        // Two circles crossing at vertices a (0) and b (1): four arcs between
        // a and b. Arcs: e0 outer-top, e1 inner-top, e2 inner-bottom, e3 outer-bottom
        // in counterclockwise order around a.
        let m = CombinatorialMap::from_rotations(vec![vec![0, 2, 4, 6], vec![7, 5, 3, 1]])
            .unwrap();
        assert_eq!(m.num_faces(), 4);
        assert_eq!(m.faces_sharing_vertex(VertexId(0)).unwrap().len(), 4);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            CombinatorialMap::from_rotations(vec![vec![0, 0]]),
            Err(MapError::MalformedRotation(_))
        ));
        assert!(matches!(
            CombinatorialMap::from_rotations(vec![vec![0, 2]]),
            Err(MapError::MalformedRotation(_))
        ));
        assert_eq!(CombinatorialMap::from_rotations(vec![vec![]]), Err(MapError::Empty));
        assert_eq!(
            CombinatorialMap::from_rotations(vec![vec![0, 1], vec![2, 3]]),
            Err(MapError::Disconnected)
        );
    }

    #[test]
    fn rejects_torus_rotation() {
        // single vertex, two loops interleaved: a one-face torus map
        let err = CombinatorialMap::from_rotations(vec![vec![0, 2, 1, 3]]).unwrap_err();
        assert_eq!(err, MapError::NonSpherical(0));
    }

    #[test]
    fn rebuilding_is_deterministic() {
        let a = triangle();
        let b = CombinatorialMap::from_rotations(a.to_rotation_lists()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn deleting_a_triangle_edge_leaves_a_path() {
        let m = triangle();
        let (p, renumber) = m.delete_edge(EdgeId(1)).unwrap();
        assert_eq!((p.num_vertices(), p.num_edges(), p.num_faces()), (3, 2, 1));
        assert_eq!(renumber.iter().filter(|r| r.is_none()).count(), 2);
    }

    #[test]
    fn reflection_of_a_triangle() {
        let m = triangle();
        // fix v0, swap v1 and v2
        let perm: Vec<Dart> = [5, 4, 3, 2, 1, 0].into_iter().map(Dart).collect();
        assert!(m.is_reflection(&perm));
        let not_perm: Vec<Dart> = [5, 5, 3, 2, 1, 0].into_iter().map(Dart).collect();
        assert!(!m.is_reflection(&not_perm));
    }
}
