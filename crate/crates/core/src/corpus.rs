//! Small named graphs used in tests, benches and the CLI.

use crate::combmap::{CombinatorialMap, FaceId};
use crate::constructor::{FamilySpec, Rim};
use crate::exploration::SigmaGraph;

/// A triangle: two faces, so not a Σ-graph on its own.
pub fn triangle() -> CombinatorialMap {
    CombinatorialMap::from_rotations(vec![vec![0, 5], vec![2, 1], vec![4, 3]]).expect("valid")
}

/// Two vertices joined by three edges; every face is marked.
pub fn theta() -> SigmaGraph {
    let map = CombinatorialMap::from_rotations(vec![vec![0, 2, 4], vec![5, 3, 1]]).expect("valid");
    SigmaGraph::new(map, [FaceId(0), FaceId(1), FaceId(2)]).expect("three faces")
}

/// Two vertices joined by four edges with three of the four digons marked.
pub fn theta4() -> SigmaGraph {
    let map =
        CombinatorialMap::from_rotations(vec![vec![0, 2, 4, 6], vec![7, 5, 3, 1]]).expect("valid");
    SigmaGraph::new(map, [FaceId(0), FaceId(1), FaceId(2)]).expect("four faces")
}

/// Two triangles sharing one vertex. The outer face is hole 1.
pub fn bowtie() -> SigmaGraph {
    let map = CombinatorialMap::from_rotations(vec![
        vec![0, 5, 6, 11], // centre
        vec![2, 1],
        vec![4, 3],
        vec![8, 7],
        vec![10, 9],
    ])
    .expect("valid");
    let outer = map.face_ids().find(|&f| map.face_degree(f) == 6).expect("outer face");
    let mut inner = map.face_ids().filter(|&f| f != outer);
    let (a, b) = (inner.next().unwrap(), inner.next().unwrap());
    SigmaGraph::new(map, [outer, a, b]).expect("three faces")
}

/// Disjoint families of nested circles around each hole.
pub fn nested(c1: u32, c2: u32, c3: u32) -> SigmaGraph {
    FamilySpec::new([c1, c2, c3], [0, 0, 0]).build().expect("valid spec").graph
}

/// Four nested circles around hole 1; the hole-3 circle touches the
/// outermost of them and the hole-2 circle. `σ = (4,1,1,1,4,5)`.
pub fn touching_nest_spec() -> FamilySpec {
    FamilySpec::new([4, 1, 1], [1, 1, 0]).with_rims([Rim::Touch; 3])
}

/// One circle per hole, pairwise disjoint. `σ = (1,1,1,2,2,2)`.
pub fn three_circles_spec() -> FamilySpec {
    FamilySpec::new([1, 1, 1], [0, 0, 0])
}

/// `σ = (4,3,4,4,5,7)`.
pub fn crossing_spec() -> FamilySpec {
    FamilySpec::new([4, 3, 4], [3, 3, 0])
}

/// `σ = (2,3,0,3,2,5)`.
pub fn capped_spec() -> FamilySpec {
    FamilySpec::new([2, 3, 0], [0, 0, 0]).with_caps([true, true, false])
}

/// `σ = (2,7,6,8,6,7)`.
pub fn touching_rims_spec() -> FamilySpec {
    FamilySpec::new([0, 7, 6], [5, 0, 0]).with_rims([Rim::Touch; 3])
}

pub fn touching_nest() -> SigmaGraph {
    touching_nest_spec().build().expect("valid spec").graph
}

pub fn three_circles() -> SigmaGraph {
    three_circles_spec().build().expect("valid spec").graph
}

/// Every named graph, for sweeps over the corpus.
pub fn named() -> Vec<(String, SigmaGraph)> {
    let mut out = vec![
        ("theta".to_string(), theta()),
        ("theta4".to_string(), theta4()),
        ("bowtie".to_string(), bowtie()),
        ("touching_nest".to_string(), touching_nest()),
        ("three_circles".to_string(), three_circles()),
    ];
    for c in [(1, 1, 1), (2, 1, 1), (3, 1, 1), (2, 2, 0)] {
        out.push((format!("nested-{}-{}-{}", c.0, c.1, c.2), nested(c.0, c.1, c.2)));
    }
    out
}
