//! SVG drawings of Σ-graphs with their special loops.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::combmap::{CombinatorialMap, EdgeId, FaceId};
use crate::exec::Execution;
use crate::exploration::SigmaGraph;
use crate::special_loops::special_families;

const HOLE_COLORS: [&str; 3] = ["#d62728", "#1f77b4", "#2ca02c"];

#[derive(Clone, Copy, Debug)]
pub struct RenderOptions {
    pub size: f64,
    pub special_loops: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { size: 600.0, special_loops: true }
    }
}

/// Drawing coordinates in the unit disk: a point per vertex, a point each
/// edge curve passes through, and a label point inside each face.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub vertices: Vec<(f64, f64)>,
    pub edge_mids: Vec<(f64, f64)>,
    pub face_labels: Vec<(f64, f64)>,
    /// Face drawn as the unbounded region.
    pub outer: Option<FaceId>,
}

impl Layout {
    pub fn fits(&self, map: &CombinatorialMap) -> bool {
        self.vertices.len() == map.num_vertices()
            && self.edge_mids.len() == map.num_edges()
            && self.face_labels.len() == map.num_faces()
            && self.outer.is_none_or(|f| f.0 < map.num_faces())
    }
}

/// Among faces whose walk repeats no vertex, the one closest to every other
/// face (fewest nested rings on any side), then the one with most darts.
pub fn outer_face(map: &CombinatorialMap) -> Option<FaceId> {
    let nf = map.num_faces();
    let eccentricity = |f: FaceId| {
        let mut dist = vec![usize::MAX; nf];
        dist[f.0] = 0;
        let mut queue = std::collections::VecDeque::from([f]);
        while let Some(g) = queue.pop_front() {
            for &d in map.face(g) {
                let h = map.face_of(d.twin());
                if dist[h.0] == usize::MAX {
                    dist[h.0] = dist[g.0] + 1;
                    queue.push_back(h);
                }
            }
        }
        dist.into_iter().max().unwrap_or(0)
    };
    map.face_ids()
        .filter(|&f| {
            let mut vs: Vec<usize> = map.face(f).iter().map(|&d| map.vertex_of(d).0).collect();
            let n = vs.len();
            vs.sort_unstable();
            vs.dedup();
            vs.len() == n
        })
        .min_by_key(|&f| (eccentricity(f), std::cmp::Reverse(map.face_degree(f)), f.0))
}

/// Tutte layout of the barycentric subdivision (vertices, edge midpoints and
/// face centres, each joined to the others it is incident with). The outer
/// face's boundary, or one subdivision triangle if no face is vertex-simple,
/// is pinned to the unit circle and every other node sits at the mean of its
/// neighbours.
pub fn tutte_layout(map: &CombinatorialMap) -> Layout {
    let (nv, ne, nf) = (map.num_vertices(), map.num_edges(), map.num_faces());
    let mid = |e: usize| nv + e;
    let centre = |f: usize| nv + ne + f;
    let n = nv + ne + nf;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut join = |a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for d in map.darts() {
        let v = map.vertex_of(d).0;
        let e = mid(d.edge().0);
        let f = centre(map.face_of(d).0);
        if d.0 % 2 == 0 {
            join(v, e);
            join(map.head(d).0, e);
        }
        join(e, f);
        join(v, f);
    }

    let outer = outer_face(map);
    let rim: Vec<usize> = match outer {
        Some(f) => map.face(f).iter().flat_map(|&d| [map.vertex_of(d).0, mid(d.edge().0)]).collect(),
        None => {
            let d = map.face(FaceId(0))[0];
            vec![map.vertex_of(d).0, mid(d.edge().0), centre(0)]
        }
    };
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    for (j, &v) in rim.iter().enumerate() {
        // the outer face is on the right of its walk, so the walk runs counterclockwise
        let a = std::f64::consts::TAU * j as f64 / rim.len() as f64;
        pos[v] = (a.cos(), a.sin());
        fixed[v] = true;
    }
    if let Some(f) = outer {
        fixed[centre(f.0)] = true;
        pos[centre(f.0)] = (0.0, 0.0);
        adj.iter_mut().for_each(|a| a.retain(|&w| w != centre(f.0)));
    }
    // Gauss-Seidel; the system is diagonally dominant so this converges
    for _ in 0..20_000 {
        let mut shift: f64 = 0.0;
        for v in 0..n {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let (mut x, mut y) = (0.0, 0.0);
            for &w in &adj[v] {
                x += pos[w].0;
                y += pos[w].1;
            }
            let k = adj[v].len() as f64;
            let new = (x / k, y / k);
            shift = shift.max((new.0 - pos[v].0).abs() + (new.1 - pos[v].1).abs());
            pos[v] = new;
        }
        if shift < 1e-12 {
            break;
        }
    }
    Layout {
        vertices: pos[..nv].to_vec(),
        edge_mids: pos[nv..nv + ne].to_vec(),
        face_labels: pos[nv + ne..].to_vec(),
        outer,
    }
}

/// SVG path for each edge: a quadratic curve through its midpoint node.
fn edge_paths(map: &CombinatorialMap, px: &[(f64, f64)], mids: &[(f64, f64)]) -> Vec<String> {
    (0..map.num_edges())
        .map(|e| {
            let (u, v) = map.endpoints(EdgeId(e));
            let (a, b, m) = (px[u.0], px[v.0], mids[e]);
            let c = (2.0 * m.0 - (a.0 + b.0) / 2.0, 2.0 * m.1 - (a.1 + b.1) / 2.0);
            format!("M {:.2} {:.2} Q {:.2} {:.2} {:.2} {:.2}", a.0, a.1, c.0, c.1, b.0, b.1)
        })
        .collect()
}

pub fn render_svg(g: &SigmaGraph, opts: &RenderOptions) -> String {
    render_svg_with(g, &tutte_layout(g.map()), opts)
}

/// Draws `g` with the given coordinates; `layout` must fit the map.
pub fn render_svg_with(g: &SigmaGraph, layout: &Layout, opts: &RenderOptions) -> String {
    let map = g.map();
    let margin = 40.0;
    let half = opts.size / 2.0;
    let scale = half - margin;
    let to_px = |pts: &[(f64, f64)]| -> Vec<(f64, f64)> {
        pts.iter().map(|&(x, y)| (half + scale * x, half - scale * y)).collect()
    };
    let px = to_px(&layout.vertices);
    let centres = to_px(&layout.face_labels);
    let paths = edge_paths(map, &px, &to_px(&layout.edge_mids));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.size
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (e, p) in paths.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<path class="edge" data-edge="{e}" d="{p}" fill="none" stroke="black" stroke-width="1.5"/>"#
        );
    }
    if opts.special_loops {
        for fam in special_families(g, Execution::Sequential) {
            let color = HOLE_COLORS[fam.hole.index()];
            for (k, lp) in fam.loops.iter().enumerate() {
                for d in lp.darts() {
                    let _ = writeln!(
                        s,
                        r#"<path class="special" data-hole="{}" data-k="{}" d="{}" fill="none" stroke="{color}" stroke-width="4" stroke-opacity="0.6"/>"#,
                        fam.hole.number(),
                        k + 1,
                        paths[d.edge().0]
                    );
                }
            }
        }
    }
    for (v, &(x, y)) in px.iter().enumerate() {
        let _ = writeln!(s, r#"<circle class="vertex" data-vertex="{v}" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
    }
    for (i, f) in g.marked_faces().into_iter().enumerate() {
        let (x, y) = if Some(f) == layout.outer {
            (margin / 2.0, margin / 2.0 + 14.0 * i as f64)
        } else {
            centres[f.0]
        };
        let _ = writeln!(
            s,
            r#"<text class="marked" data-face="{}" x="{x:.2}" y="{y:.2}" font-size="14" text-anchor="middle" fill="{}">F{}</text>"#,
            f.0,
            HOLE_COLORS[i],
            i + 1
        );
    }
    s.push_str("</svg>\n");
    s
}
