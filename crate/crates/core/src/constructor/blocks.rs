//! Young-diagram building blocks, the disk `Γ_t` glued from them, and the
//! pillowcase `G_t` made of two copies of `Γ_t`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combmap::{CombinatorialMap, Dart, EdgeId, FaceId};
use crate::exploration::SigmaGraph;
use crate::hole::Hole;
use crate::special_loops::SigmaVector;

use super::surface::PolygonComplex;
use super::ConstructError;

/// `t = (l_1, l_2, l_3, n_1, n_2, n_3)`: leg lengths and web sizes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 6]", into = "[u32; 6]")]
pub struct BlockParams {
    pub l: [u32; 3],
    pub n: [u32; 3],
}

impl BlockParams {
    pub fn new(t: [i64; 6]) -> Result<BlockParams, ConstructError> {
        if let Some(j) = t.iter().position(|&x| x < 0) {
            return Err(ConstructError::NegativeParameter(format!(
                "entry {} of t = {:?} is negative",
                j + 1,
                t
            )));
        }
        let p = BlockParams {
            l: [t[0] as u32, t[1] as u32, t[2] as u32],
            n: [t[3] as u32, t[4] as u32, t[5] as u32],
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ConstructError> {
        for h in Hole::ALL {
            let (a, b) = h.others();
            if self.n(h) > self.l(a).min(self.l(b)) {
                return Err(ConstructError::InvariantViolated(format!(
                    "n_{h} = {} exceeds min(l_{a}, l_{b}) = {}",
                    self.n(h),
                    self.l(a).min(self.l(b))
                )));
            }
        }
        Ok(())
    }

    pub fn l(&self, h: Hole) -> u32 {
        self.l[h.index()]
    }

    pub fn n(&self, h: Hole) -> u32 {
        self.n[h.index()]
    }

    pub fn to_array(self) -> [u32; 6] {
        [self.l[0], self.l[1], self.l[2], self.n[0], self.n[1], self.n[2]]
    }

    /// Closed forms for `σ(G_t)`.
    pub fn predicted_sigma(&self) -> SigmaVector {
        let mu = Hole::ALL.map(|h| {
            let (a, b) = h.others();
            let excess = self.n(h) as i64 - self.n(a).max(self.n(b)) as i64;
            1 + self.l(h) + excess.max(0).div_euclid(2) as u32
        });
        let delta = Hole::ALL.map(|h| {
            let (a, b) = h.others();
            1 + self.l(a) + self.l(b) - self.n(h)
        });
        SigmaVector { mu, delta }
    }
}

impl TryFrom<[i64; 6]> for BlockParams {
    type Error = ConstructError;

    fn try_from(t: [i64; 6]) -> Result<Self, Self::Error> {
        BlockParams::new(t)
    }
}

impl From<BlockParams> for [u32; 6] {
    fn from(p: BlockParams) -> [u32; 6] {
        p.to_array()
    }
}

/// A disk map with named boundary edges.
#[derive(Clone, Debug)]
pub struct LabeledBlock {
    pub map: CombinatorialMap,
    pub labels: BTreeMap<String, EdgeId>,
    pub outer: FaceId,
}

impl LabeledBlock {
    pub fn label(&self, name: &str) -> Option<EdgeId> {
        self.labels.get(name).copied()
    }

    /// Boundary edges between consecutive `E_i`, in outer-face order.
    pub fn boundary_arcs(&self) -> Vec<Vec<EdgeId>> {
        let cut: Vec<EdgeId> = ["E1", "E2", "E3"].iter().filter_map(|n| self.label(n)).collect();
        let darts = self.map.face(self.outer);
        let Some(start) = darts.iter().position(|d| cut.contains(&d.edge())) else {
            return vec![darts.iter().map(|d| d.edge()).collect()];
        };
        let mut arcs = Vec::new();
        let mut current = Vec::new();
        for j in 1..=darts.len() {
            let e = darts[(start + j) % darts.len()].edge();
            if cut.contains(&e) {
                arcs.push(std::mem::take(&mut current));
            } else {
                current.push(e);
            }
        }
        arcs
    }
}

fn name(prefix: &str, k: u32, i: Hole, j: Hole) -> String {
    format!("{prefix}^{k}_{{{i},{j}}}")
}

/// Leg vertices: `a` is the side bordering leg `i - 1`, `b` the side
/// bordering leg `i + 1`; rung `k` joins `a[k]` and `b[k]`.
struct LegParts {
    a: Vec<usize>,
    b: Vec<usize>,
}

fn build_leg(c: &mut PolygonComplex, a0: usize, b0: usize, l: u32) -> LegParts {
    let mut a = vec![a0];
    let mut b = vec![b0];
    for k in 1..=l as usize {
        a.push(c.add_vertex());
        b.push(c.add_vertex());
        c.add_polygon(&[b[k - 1], a[k - 1], a[k], b[k]]);
    }
    LegParts { a, b }
}

/// Staircase with rows `n, n-1, ..., 1`; `bottom[k] = w(k, 0)` and
/// `left[k] = w(0, k)` for `k = 0..=n`.
fn build_web(c: &mut PolygonComplex, bottom: &[usize], left: &[usize], n: u32) {
    let n = n as usize;
    let mut w: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for k in 0..=n {
        w.insert((k, 0), bottom[k]);
        w.insert((0, k), left[k]);
    }
    for x in 0..n {
        for y in 0..n - x {
            let mut at = |p: (usize, usize)| *w.entry(p).or_insert_with(|| c.add_vertex());
            let quad = [at((x, y)), at((x + 1, y)), at((x + 1, y + 1)), at((x, y + 1))];
            c.add_polygon(&quad);
        }
    }
}

fn finish(mut c: PolygonComplex, labels: BTreeMap<String, usize>) -> Result<LabeledBlock, ConstructError> {
    let outer_poly = c.close_boundary()?;
    let (from, e) = c.polygons[outer_poly][0];
    let dart = Dart(c.dart(from, e));
    let map = c.to_map()?;
    Ok(LabeledBlock {
        outer: map.face_of(dart),
        map,
        labels: labels.into_iter().map(|(k, v)| (k, EdgeId(v))).collect(),
    })
}

/// The triangle with sides `e'_1, e'_2, e'_3` in cyclic order.
pub fn connector() -> LabeledBlock {
    let mut c = PolygonComplex::new();
    let v: Vec<usize> = (0..3).map(|_| c.add_vertex()).collect();
    c.add_polygon(&v);
    let labels = Hole::ALL
        .map(|h| (format!("e'{h}"), c.edge_between(v[h.index()], v[h.next().index()])))
        .into_iter()
        .collect();
    finish(c, labels).expect("triangle is a disk")
}

/// A row of `l` boxes; with `l = 0` the single edge `E_i = e_i`.
pub fn leg(i: Hole, l: i64) -> Result<LabeledBlock, ConstructError> {
    if l < 0 {
        return Err(ConstructError::NegativeParameter(format!("leg length {l}")));
    }
    if l == 0 {
        let map = CombinatorialMap::from_rotations(vec![vec![0], vec![1]])?;
        let labels = [(format!("E{i}"), EdgeId(0)), (format!("e{i}"), EdgeId(0))].into();
        return Ok(LabeledBlock { outer: FaceId(0), map, labels });
    }
    let mut c = PolygonComplex::new();
    let (a0, b0) = (c.add_vertex(), c.add_vertex());
    c.add_edge(b0, a0);
    let parts = build_leg(&mut c, a0, b0, l as u32);
    let mut labels = BTreeMap::new();
    labels.insert(format!("E{i}"), c.edge_between(parts.a[l as usize], parts.b[l as usize]));
    labels.insert(format!("e{i}"), c.edge_between(a0, b0));
    for k in 1..=l as usize {
        labels.insert(name("f", k as u32, i, i.next()), c.edge_between(parts.b[k - 1], parts.b[k]));
        labels.insert(name("f", k as u32, i, i.prev()), c.edge_between(parts.a[k - 1], parts.a[k]));
    }
    finish(c, labels)
}

/// The staircase `Y_(n, n-1, ..., 1)` glued between legs `i + 1` and `i + 2`;
/// `None` when `n = 0`.
pub fn web(i: Hole, n: i64) -> Result<Option<LabeledBlock>, ConstructError> {
    if n < 0 {
        return Err(ConstructError::NegativeParameter(format!("web size {n}")));
    }
    if n == 0 {
        return Ok(None);
    }
    let mut c = PolygonComplex::new();
    let corner = c.add_vertex();
    let mut bottom = vec![corner];
    let mut left = vec![corner];
    for _ in 0..n {
        bottom.push(c.add_vertex());
        left.push(c.add_vertex());
    }
    build_web(&mut c, &bottom, &left, n as u32);
    let (j, k) = i.others();
    let mut labels = BTreeMap::new();
    for s in 1..=n as usize {
        labels.insert(name("f'", s as u32, j, k), c.edge_between(bottom[s - 1], bottom[s]));
        labels.insert(name("f'", s as u32, k, j), c.edge_between(left[s - 1], left[s]));
    }
    finish(c, labels).map(Some)
}

/// `Γ_t` as a polygon complex (without its outer face).
struct GammaComplex {
    complex: PolygonComplex,
    /// Edge `E_i` and its ends `(a, b)`, traversed `a -> b` inside `Γ_t`.
    big_e: [(usize, usize, usize); 3],
}

fn gamma_complex(t: &BlockParams) -> Result<GammaComplex, ConstructError> {
    t.validate()?;
    let mut c = PolygonComplex::new();
    let corners: Vec<usize> = (0..3).map(|_| c.add_vertex()).collect();
    c.add_polygon(&corners);
    let legs: Vec<LegParts> = Hole::ALL
        .iter()
        .map(|&h| build_leg(&mut c, corners[h.index()], corners[h.next().index()], t.l(h)))
        .collect();
    for h in Hole::ALL {
        let (j, k) = h.others();
        let n = t.n(h) as usize;
        if n > 0 {
            let bottom = legs[j.index()].b[..=n].to_vec();
            let left = legs[k.index()].a[..=n].to_vec();
            build_web(&mut c, &bottom, &left, n as u32);
        }
    }
    let big_e = Hole::ALL.map(|h| {
        let leg = &legs[h.index()];
        let (a, b) = (*leg.a.last().unwrap(), *leg.b.last().unwrap());
        (c.edge_between(a, b), a, b)
    });
    Ok(GammaComplex { complex: c, big_e })
}

/// The disk obtained by gluing the connector, the three legs and the three
/// webs of `t`.
pub fn gamma(t: &BlockParams) -> Result<LabeledBlock, ConstructError> {
    let g = gamma_complex(t)?;
    let labels = Hole::ALL
        .map(|h| (format!("E{h}"), g.big_e[h.index()].0))
        .into_iter()
        .collect();
    finish(g.complex, labels)
}

/// `G_t` with the involution exchanging its two halves.
#[derive(Clone, Debug)]
pub struct Pillowcase {
    pub graph: SigmaGraph,
    pub mirror: Vec<Dart>,
}

/// Two copies of `Γ_t` glued along their boundaries except at `E_i`, where a
/// marked digon `F_i` is left open between `E_i` and its copy `E'_i`.
pub fn pillowcase(t: &BlockParams) -> Result<Pillowcase, ConstructError> {
    let GammaComplex { mut complex, big_e } = gamma_complex(t)?;
    let free = complex.free_darts();
    let n_edges = complex.edges.len();
    let mut on_boundary = vec![false; complex.n_vertices];
    let mut boundary_edge = vec![false; n_edges];
    for &d in &free {
        let (u, v) = complex.edges[d / 2];
        on_boundary[u] = true;
        on_boundary[v] = true;
        boundary_edge[d / 2] = true;
    }
    let is_big_e = |e: usize| big_e.iter().any(|&(x, _, _)| x == e);

    let n_vertices = complex.n_vertices;
    let mirror_vertex: Vec<usize> = (0..n_vertices)
        .map(|v| if on_boundary[v] { v } else { complex.add_vertex() })
        .collect();
    let mirror_edge: Vec<usize> = (0..n_edges)
        .map(|e| {
            if boundary_edge[e] && !is_big_e(e) {
                e
            } else {
                let (u, v) = complex.edges[e];
                complex.add_edge(mirror_vertex[u], mirror_vertex[v])
            }
        })
        .collect();

    let originals = complex.polygons.clone();
    for p in &originals {
        let m = p.len();
        let reversed = (0..m)
            .rev()
            .map(|j| {
                let (_, e) = p[j];
                let to = p[(j + 1) % m].0;
                (mirror_vertex[to], mirror_edge[e])
            })
            .collect();
        complex.add_polygon_edges(reversed);
    }
    let mut digon_darts = [0usize; 3];
    for (h, &(e, a, b)) in big_e.iter().enumerate() {
        complex.add_polygon_edges(vec![(b, e), (a, mirror_edge[e])]);
        digon_darts[h] = complex.dart(b, e);
    }

    let map = complex.to_map()?;
    let mut mirror: Vec<Dart> = (0..map.num_darts()).map(Dart).collect();
    for e in 0..n_edges {
        let f = mirror_edge[e];
        // both copies of an edge keep its orientation, so dart parity matches
        for s in 0..2 {
            mirror[2 * e + s] = Dart(2 * f + s);
            mirror[2 * f + s] = Dart(2 * e + s);
        }
    }
    let marked = digon_darts.map(|d| map.face_of(Dart(d)));
    let graph = SigmaGraph::new(map, marked)?;
    Ok(Pillowcase { graph, mirror })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_loops::sigma_of;

    fn t(v: [i64; 6]) -> BlockParams {
        BlockParams::new(v).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            BlockParams::new([1, 1, 1, -1, 0, 0]),
            Err(ConstructError::NegativeParameter(_))
        ));
        assert!(matches!(
            BlockParams::new([0, 1, 1, 0, 2, 0]),
            Err(ConstructError::InvariantViolated(_))
        ));
        assert_eq!(t([4, 3, 2, 0, 1, 3]).predicted_sigma(), SigmaVector::from([5, 4, 4, 6, 6, 5]));
    }

    #[test]
    fn connector_is_a_triangle() {
        let k = connector();
        assert_eq!((k.map.num_vertices(), k.map.num_edges(), k.map.num_faces()), (3, 3, 2));
        let cyc: Vec<EdgeId> = ["e'1", "e'2", "e'3"].iter().map(|n| k.label(n).unwrap()).collect();
        assert_eq!(cyc.len(), 3);
        assert_eq!(k.map.face_degree(k.outer), 3);
    }

    #[test]
    fn leg_of_length_four() {
        let g = leg(Hole::ONE, 4).unwrap();
        assert_eq!(g.map.num_faces(), 5);
        assert_eq!(g.map.num_edges(), 4 * 3 + 1);
        assert_eq!(g.labels.len(), 2 + 8);
        assert!(g.label("f^4_{1,2}").is_some() && g.label("f^4_{1,3}").is_some());
        let outer = g.map.face(g.outer);
        for name in g.labels.keys() {
            let e = g.label(name).unwrap();
            assert!(outer.iter().any(|d| d.edge() == e), "{name} on boundary");
        }
        let bare = leg(Hole::TWO, 0).unwrap();
        assert_eq!(bare.map.num_edges(), 1);
        assert!(leg(Hole::ONE, -1).is_err());
    }

    #[test]
    fn web_is_a_staircase() {
        let w = web(Hole::THREE, 3).unwrap().unwrap();
        assert_eq!(w.map.num_faces(), 6 + 1);
        assert!(w.label("f'^3_{1,2}").is_some() && w.label("f'^3_{2,1}").is_some());
        assert!(web(Hole::ONE, 0).unwrap().is_none());
    }

    #[test]
    fn gamma_face_count() {
        let g = gamma(&t([4, 3, 2, 0, 1, 3])).unwrap();
        // 9 leg boxes, 0 + 1 + 6 web boxes, connector, outer face
        assert_eq!(g.map.num_faces(), 9 + 7 + 1 + 1);
        assert_eq!(g.map.euler_characteristic(), 2);
        assert_eq!(g.boundary_arcs().len(), 3);
        let empty = gamma(&BlockParams::default()).unwrap();
        assert_eq!(empty.map.num_faces(), 2);
    }

    #[test]
    fn pillowcase_matches_closed_forms() {
        for v in [[0, 0, 0, 0, 0, 0], [4, 3, 2, 0, 1, 3], [2, 2, 2, 0, 0, 0], [1, 2, 0, 0, 0, 1]] {
            let p = t(v);
            let g = pillowcase(&p).unwrap();
            assert_eq!(sigma_of(&g.graph), p.predicted_sigma(), "t = {v:?}");
        }
    }

    #[test]
    fn pillowcase_mirror_is_a_reflection() {
        let g = pillowcase(&t([2, 1, 1, 1, 1, 0])).unwrap();
        assert!(g.graph.map().is_reflection(&g.mirror));
        for f in g.graph.marked_faces() {
            let d = g.graph.map().face(f)[0];
            // orientation flips, so the face right of d is the one left of its image
            assert_eq!(g.graph.map().face_of(g.mirror[d.0].twin()), f);
        }
    }
}
