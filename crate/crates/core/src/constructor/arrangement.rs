//! Arrangements of circles centred on a horizontal axis.
//!
//! Every circle is given by the two points where it meets the axis. Two
//! circles cross (at two mirror-image points) iff their axis intervals
//! interleave, and they are tangent iff they share an endpoint. Axis segments
//! are added between consecutive axis points lying in different connected
//! components; each such segment is a bridge, so it creates no new cycle.

use std::f64::consts::PI;

use crate::combmap::{CombinatorialMap, Dart, EdgeId, FaceId, VertexId};
use crate::render::Layout;

use super::ConstructError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AxisCircle {
    pub left: i64,
    pub right: i64,
}

impl AxisCircle {
    pub fn new(left: i64, right: i64) -> AxisCircle {
        AxisCircle { left, right }
    }

    fn center(&self) -> f64 {
        (self.left + self.right) as f64 / 2.0
    }

    fn radius(&self) -> f64 {
        (self.right - self.left) as f64 / 2.0
    }

    fn width(&self) -> i64 {
        self.right - self.left
    }

    pub fn crosses(&self, other: &AxisCircle) -> bool {
        (self.left < other.left && other.left < self.right && self.right < other.right)
            || (other.left < self.left && self.left < other.right && other.right < self.right)
    }

    pub fn touches(&self, other: &AxisCircle) -> bool {
        self != other
            && (self.left == other.left
                || self.left == other.right
                || self.right == other.left
                || self.right == other.right)
    }

    pub fn covers(&self, x: f64) -> bool {
        (self.left as f64) < x && x < self.right as f64
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxisArrangement {
    pub circles: Vec<AxisCircle>,
}

/// The map of an arrangement plus enough bookkeeping to locate faces.
#[derive(Clone, Debug)]
pub struct BuiltArrangement {
    pub map: CombinatorialMap,
    /// Axis coordinate of every axis vertex (vertex ids `0..points.len()`).
    pub points: Vec<i64>,
    /// Edges of each circle, in counterclockwise order around its centre.
    pub circle_edges: Vec<Vec<EdgeId>>,
    pub bridges: Vec<EdgeId>,
    /// Map-space position of every vertex (for drawing).
    pub positions: Vec<(f64, f64)>,
    /// Map-space midpoint of every edge: the middle of its arc or segment.
    pub edge_mids: Vec<(f64, f64)>,
    first_upper: Vec<Dart>,
}

impl BuiltArrangement {
    /// The face directly above the axis, immediately to the right of `x`.
    pub fn face_right_of(&self, x: i64) -> Option<FaceId> {
        let v = self.points.binary_search(&x).ok()?;
        Some(self.map.face_of(self.first_upper[v]))
    }

    /// The unbounded face.
    pub fn outer_face(&self) -> FaceId {
        self.face_right_of(*self.points.last().expect("non-empty"))
            .expect("axis point")
    }

    /// Drawing with the true circle geometry, scaled into the unit disk.
    pub fn drawing(&self) -> Layout {
        let pts = self.positions.iter().chain(&self.edge_mids);
        let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
        for &(x, y) in pts.clone() {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        let c = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
        let r = pts
            .map(|&(x, y)| ((x - c.0).powi(2) + (y - c.1).powi(2)).sqrt())
            .fold(1e-9, f64::max);
        let norm = |&(x, y): &(f64, f64)| ((x - c.0) / r, (y - c.1) / r);
        // a point just right of the middle of each face's longest edge
        let labels = self
            .map
            .face_ids()
            .map(|f| {
                let d = *self
                    .map
                    .face(f)
                    .iter()
                    .max_by(|&&a, &&b| self.chord(a).total_cmp(&self.chord(b)))
                    .expect("faces are non-empty");
                let (a, b) = (self.positions[self.map.vertex_of(d).0], self.positions[self.map.head(d).0]);
                let m = self.edge_mids[d.edge().0];
                let len = self.chord(d).max(1e-9);
                norm(&(m.0 + 0.5 * (b.1 - a.1) / len, m.1 - 0.5 * (b.0 - a.0) / len))
            })
            .collect();
        Layout {
            vertices: self.positions.iter().map(norm).collect(),
            edge_mids: self.edge_mids.iter().map(norm).collect(),
            face_labels: labels,
            outer: Some(self.outer_face()),
        }
    }

    fn chord(&self, d: Dart) -> f64 {
        let (a, b) = (self.positions[self.map.vertex_of(d).0], self.positions[self.map.head(d).0]);
        ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
    }

    pub fn vertex_at(&self, x: i64) -> Option<VertexId> {
        self.points.binary_search(&x).ok().map(VertexId)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
enum DirKey {
    /// Sector around an axis point, then a tie-break by circle width.
    Axis(u8, i64),
    Angle(f64),
}

impl AxisArrangement {
    pub fn new(circles: Vec<AxisCircle>) -> AxisArrangement {
        AxisArrangement { circles }
    }

    pub fn build(&self) -> Result<BuiltArrangement, ConstructError> {
        let circles = &self.circles;
        if circles.is_empty() {
            return Err(ConstructError::InvariantViolated("arrangement has no circle".into()));
        }
        for (i, c) in circles.iter().enumerate() {
            if c.left >= c.right {
                return Err(ConstructError::InvariantViolated(format!(
                    "circle {i} has empty axis interval"
                )));
            }
            if circles[..i].contains(c) {
                return Err(ConstructError::InvariantViolated(format!("circle {i} is repeated")));
            }
        }

        let mut points: Vec<i64> = circles.iter().flat_map(|c| [c.left, c.right]).collect();
        points.sort_unstable();
        points.dedup();
        let mut positions: Vec<(f64, f64)> = points.iter().map(|&x| (x as f64, 0.0)).collect();

        // (vertex, angle around the circle's centre) for every circle
        let mut on_circle: Vec<Vec<(usize, f64)>> = circles
            .iter()
            .map(|c| {
                let l = points.binary_search(&c.left).unwrap();
                let r = points.binary_search(&c.right).unwrap();
                vec![(r, 0.0), (l, PI)]
            })
            .collect();

        for i in 0..circles.len() {
            for j in i + 1..circles.len() {
                let (a, b) = (&circles[i], &circles[j]);
                if !a.crosses(b) {
                    continue;
                }
                let (ca, ra, cb, rb) = (a.center(), a.radius(), b.center(), b.radius());
                let x = (ra * ra - rb * rb + cb * cb - ca * ca) / (2.0 * (cb - ca));
                let y = (ra * ra - (x - ca) * (x - ca)).max(0.0).sqrt();
                for (sign, p) in [(1.0, (x, y)), (-1.0, (x, -y))] {
                    if positions.iter().any(|q| (q.0 - p.0).abs() < 1e-9 && (q.1 - p.1).abs() < 1e-9) {
                        return Err(ConstructError::InvariantViolated(
                            "three circles meet at one point".into(),
                        ));
                    }
                    let v = positions.len();
                    positions.push(p);
                    for (k, c) in [(i, a), (j, b)] {
                        let theta = (sign * y).atan2(x - c.center()).rem_euclid(2.0 * PI);
                        on_circle[k].push((v, theta));
                    }
                }
            }
        }

        let n_vertices = positions.len();
        let mut outgoing: Vec<Vec<(DirKey, usize)>> = vec![Vec::new(); n_vertices];
        let mut circle_edges = Vec::with_capacity(circles.len());
        let mut next_edge = 0usize;
        let mut edge_ends: Vec<(usize, usize)> = Vec::new();
        let mut edge_mids: Vec<(f64, f64)> = Vec::new();
        let n_axis = points.len();

        for (k, c) in circles.iter().enumerate() {
            let verts = &mut on_circle[k];
            verts.sort_by(|p, q| p.1.total_cmp(&q.1));
            let mut edges = Vec::with_capacity(verts.len());
            for idx in 0..verts.len() {
                let (u, tu) = verts[idx];
                let (w, tw) = verts[(idx + 1) % verts.len()];
                let e = next_edge;
                next_edge += 1;
                edges.push(EdgeId(e));
                edge_ends.push((u, w));
                let mid = tu + (tw - tu).rem_euclid(2.0 * PI) / 2.0;
                edge_mids.push((c.center() + c.radius() * mid.cos(), c.radius() * mid.sin()));
                // dart 2e leaves u counterclockwise, dart 2e + 1 leaves w clockwise
                outgoing[u].push((circle_dir(c, u, true, n_axis, &positions, &points), 2 * e));
                outgoing[w].push((circle_dir(c, w, false, n_axis, &positions, &points), 2 * e + 1));
            }
            circle_edges.push(edges);
        }

        // connect components along the axis
        let mut parent: Vec<usize> = (0..n_vertices).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, w) in &edge_ends {
            let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
            parent[ru] = rw;
        }
        let mut bridges = Vec::new();
        for v in 0..n_axis.saturating_sub(1) {
            let (a, b) = (find(&mut parent, v), find(&mut parent, v + 1));
            if a != b {
                parent[a] = b;
                let e = next_edge;
                next_edge += 1;
                bridges.push(EdgeId(e));
                edge_mids.push(((points[v] + points[v + 1]) as f64 / 2.0, 0.0));
                outgoing[v].push((DirKey::Axis(0, 0), 2 * e));
                outgoing[v + 1].push((DirKey::Axis(3, 0), 2 * e + 1));
            }
        }

        let mut first_upper = Vec::with_capacity(n_axis);
        let rotations: Vec<Vec<usize>> = outgoing
            .into_iter()
            .enumerate()
            .map(|(v, mut darts)| {
                darts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable keys"));
                if v < n_axis {
                    let d = darts
                        .iter()
                        .find(|(key, _)| !matches!(key, DirKey::Axis(0, _)))
                        .map(|&(_, d)| d)
                        .expect("circle dart at axis point");
                    first_upper.push(Dart(d));
                }
                darts.into_iter().map(|(_, d)| d).collect()
            })
            .collect();

        let map = CombinatorialMap::from_rotations(rotations)?;
        Ok(BuiltArrangement {
            map,
            points,
            circle_edges,
            bridges,
            positions,
            edge_mids,
            first_upper,
        })
    }
}

/// Direction key of a circle dart leaving `v`, going counterclockwise around
/// the circle's centre when `ccw`.
fn circle_dir(
    c: &AxisCircle,
    v: usize,
    ccw: bool,
    n_axis: usize,
    positions: &[(f64, f64)],
    points: &[i64],
) -> DirKey {
    if v < n_axis {
        // Around an axis point, counterclockwise from east:
        // 0 east segment, 1 upper arcs bending right, 2 upper arcs bending
        // left, 3 west segment, 4 lower arcs bending left, 5 lower arcs
        // bending right. Tighter arcs sit closer to the axis.
        let at_right_end = points[v] == c.right;
        let w = c.width();
        match (at_right_end, ccw) {
            (true, true) => DirKey::Axis(2, -w),
            (true, false) => DirKey::Axis(4, w),
            (false, true) => DirKey::Axis(5, -w),
            (false, false) => DirKey::Axis(1, w),
        }
    } else {
        let (x, y) = positions[v];
        let (tx, ty) = (-y, x - c.center());
        let (tx, ty) = if ccw { (tx, ty) } else { (-tx, -ty) };
        DirKey::Angle(ty.atan2(tx).rem_euclid(2.0 * PI))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_circle_is_a_digon() {
        let b = AxisArrangement::new(vec![AxisCircle::new(0, 2)]).build().unwrap();
        assert_eq!((b.map.num_vertices(), b.map.num_edges(), b.map.num_faces()), (2, 2, 2));
        assert_ne!(b.face_right_of(0).unwrap(), b.outer_face());
    }

    #[test]
    fn two_crossing_circles() {
        let b = AxisArrangement::new(vec![AxisCircle::new(0, 4), AxisCircle::new(2, 6)])
            .build()
            .unwrap();
        // 4 axis points + 2 crossings; each circle split into 4 arcs
        assert_eq!(b.map.num_vertices(), 6);
        assert_eq!(b.map.num_edges(), 8);
        // outside, left-only, lens, right-only (left-only and right-only each
        // touch the axis so upper and lower halves are one face)
        assert_eq!(b.map.num_faces(), 4);
        assert!(b.bridges.is_empty());
    }

    #[test]
    fn nested_circles_get_a_bridge() {
        let b = AxisArrangement::new(vec![AxisCircle::new(0, 10), AxisCircle::new(2, 8)])
            .build()
            .unwrap();
        assert_eq!(b.bridges.len(), 1);
        assert_eq!(b.map.num_faces(), 3);
        assert!(b.map.is_bridge(b.bridges[0]));
    }

    #[test]
    fn tangent_circles_share_a_vertex() {
        let b = AxisArrangement::new(vec![AxisCircle::new(0, 2), AxisCircle::new(2, 4)])
            .build()
            .unwrap();
        assert_eq!(b.map.num_vertices(), 3);
        assert!(b.bridges.is_empty());
        assert_eq!(b.map.num_faces(), 3);
        // internal tangency
        let b = AxisArrangement::new(vec![AxisCircle::new(0, 6), AxisCircle::new(2, 6)])
            .build()
            .unwrap();
        assert_eq!(b.map.num_vertices(), 3);
        assert_eq!(b.map.num_faces(), 3);
    }

    #[test]
    fn degenerate_input_rejected() {
        assert!(AxisArrangement::new(vec![AxisCircle::new(2, 2)]).build().is_err());
        assert!(AxisArrangement::new(vec![AxisCircle::new(0, 2), AxisCircle::new(0, 2)])
            .build()
            .is_err());
    }
}
