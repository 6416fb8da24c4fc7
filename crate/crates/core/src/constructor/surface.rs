//! Maps assembled from oriented polygons.
//!
//! A polygon is a cyclic list of `(tail vertex, edge)` pairs, listed so the
//! polygon lies on the right of each step. Polygons sharing an edge must use
//! it in opposite directions; the rotation at each vertex is then forced.

use std::collections::HashMap;

use crate::combmap::CombinatorialMap;

use super::ConstructError;

#[derive(Clone, Debug, Default)]
pub struct PolygonComplex {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub polygons: Vec<Vec<(usize, usize)>>,
    by_ends: HashMap<(usize, usize), usize>,
}

impl PolygonComplex {
    pub fn new() -> PolygonComplex {
        PolygonComplex::default()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n_vertices += 1;
        self.n_vertices - 1
    }

    /// A new edge, even if `u` and `v` are already joined.
    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        self.edges.push((u, v));
        let e = self.edges.len() - 1;
        self.by_ends.entry((u.min(v), u.max(v))).or_insert(e);
        e
    }

    /// The first edge joining `u` and `v`, created if missing.
    pub fn edge_between(&mut self, u: usize, v: usize) -> usize {
        match self.by_ends.get(&(u.min(v), u.max(v))) {
            Some(&e) => e,
            None => self.add_edge(u, v),
        }
    }

    /// Adds the polygon through `verts` in order, reusing existing edges.
    pub fn add_polygon(&mut self, verts: &[usize]) -> usize {
        let steps = (0..verts.len())
            .map(|j| {
                let (u, v) = (verts[j], verts[(j + 1) % verts.len()]);
                (u, self.edge_between(u, v))
            })
            .collect();
        self.polygons.push(steps);
        self.polygons.len() - 1
    }

    pub fn add_polygon_edges(&mut self, steps: Vec<(usize, usize)>) -> usize {
        self.polygons.push(steps);
        self.polygons.len() - 1
    }

    pub fn dart(&self, from: usize, e: usize) -> usize {
        if self.edges[e].0 == from {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn tail(&self, d: usize) -> usize {
        let (u, v) = self.edges[d / 2];
        if d.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    /// Darts used by no polygon, i.e. the boundary read with the missing
    /// face on the right.
    pub fn free_darts(&self) -> Vec<usize> {
        let mut used = vec![false; 2 * self.edges.len()];
        for p in &self.polygons {
            for &(from, e) in p {
                used[self.dart(from, e)] = true;
            }
        }
        (0..used.len()).filter(|&d| !used[d]).collect()
    }

    /// Closes a single boundary cycle with one extra polygon; returns its index.
    pub fn close_boundary(&mut self) -> Result<usize, ConstructError> {
        let free = self.free_darts();
        if free.is_empty() {
            return Err(ConstructError::InvariantViolated("complex has no boundary".into()));
        }
        let mut leaving: HashMap<usize, usize> = HashMap::new();
        for &d in &free {
            if leaving.insert(self.tail(d), d).is_some() {
                return Err(ConstructError::InvariantViolated(
                    "boundary passes twice through a vertex".into(),
                ));
            }
        }
        let start = free[0];
        let mut steps = Vec::new();
        let mut d = start;
        loop {
            steps.push((self.tail(d), d / 2));
            d = leaving[&self.tail(d ^ 1)];
            if d == start {
                break;
            }
        }
        if steps.len() != free.len() {
            return Err(ConstructError::InvariantViolated("boundary is not one cycle".into()));
        }
        Ok(self.add_polygon_edges(steps))
    }

    pub fn to_map(&self) -> Result<CombinatorialMap, ConstructError> {
        let n_darts = 2 * self.edges.len();
        let mut rot_next = vec![usize::MAX; n_darts];
        for p in &self.polygons {
            let darts: Vec<usize> = p.iter().map(|&(from, e)| self.dart(from, e)).collect();
            for j in 0..darts.len() {
                let (d, next) = (darts[j], darts[(j + 1) % darts.len()]);
                if self.tail(next) != self.tail(d ^ 1) {
                    return Err(ConstructError::InvariantViolated("polygon is not a closed walk".into()));
                }
                if rot_next[d ^ 1] != usize::MAX {
                    return Err(ConstructError::InvariantViolated(format!(
                        "edge {} used twice in one direction",
                        d / 2
                    )));
                }
                rot_next[d ^ 1] = next;
            }
        }
        if rot_next.contains(&usize::MAX) {
            return Err(ConstructError::InvariantViolated("surface has boundary".into()));
        }
        let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); self.n_vertices];
        for d in 0..n_darts {
            at_vertex[self.tail(d)].push(d);
        }
        let mut rotations = Vec::with_capacity(self.n_vertices);
        for (v, darts) in at_vertex.iter().enumerate() {
            let Some(&first) = darts.first() else {
                return Err(ConstructError::InvariantViolated(format!("vertex {v} is isolated")));
            };
            let mut cycle = vec![first];
            let mut d = rot_next[first];
            while d != first {
                cycle.push(d);
                d = rot_next[d];
            }
            if cycle.len() != darts.len() {
                return Err(ConstructError::InvariantViolated(format!(
                    "vertex {v} is not a disk neighbourhood"
                )));
            }
            rotations.push(cycle);
        }
        Ok(CombinatorialMap::from_rotations(rotations)?)
    }
}
