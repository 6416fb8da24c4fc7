//! Random spherical maps for property and acceptance tests.

#![allow(dead_code)]

use lamination_core::{make_sigma_graph, CombinatorialMap, Dart, FaceId, SigmaGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn insert_after(rot: &mut [Vec<usize>], at: Dart, new: usize) {
    for r in rot.iter_mut() {
        if let Some(p) = r.iter().position(|&d| d == at.0) {
            r.insert(p + 1, new);
            return;
        }
    }
    unreachable!("dart {at:?} not in any rotation")
}

/// Grows a map from a single loop until it has `faces` faces. Each step adds
/// a pendant vertex, subdivides an edge, or draws a chord across a face.
pub fn random_map(rng: &mut impl Rng, faces: usize) -> CombinatorialMap {
    let mut rot: Vec<Vec<usize>> = vec![vec![0, 1]];
    let mut map = CombinatorialMap::from_rotations(rot.clone()).expect("loop");
    let mut guard = 0;
    while map.num_faces() < faces || guard < 2 {
        guard += 1;
        let e = map.num_edges();
        let (x, y) = (2 * e, 2 * e + 1);
        match rng.gen_range(0..4) {
            0 => {
                // pendant vertex in a random corner
                let d = Dart(rng.gen_range(0..map.num_darts()));
                insert_after(&mut rot, d, x);
                rot.push(vec![y]);
            }
            1 => {
                // subdivide: old edge ends at the new vertex, new edge continues
                let old = rng.gen_range(0..e);
                let far = 2 * old + 1;
                for r in rot.iter_mut() {
                    if let Some(p) = r.iter().position(|&d| d == far) {
                        r[p] = y;
                    }
                }
                rot.push(vec![far, x]);
            }
            _ => {
                // chord between two corners of one face
                let f = FaceId(rng.gen_range(0..map.num_faces()));
                let walk = map.face(f).to_vec();
                let a = *walk.choose(rng).expect("faces are non-empty");
                let b = *walk.choose(rng).expect("faces are non-empty");
                insert_after(&mut rot, a.twin(), x);
                insert_after(&mut rot, if a == b { Dart(x) } else { b.twin() }, y);
            }
        }
        map = CombinatorialMap::from_rotations(rot.clone()).expect("construction stays spherical");
        if map.num_faces() > faces && faces >= 3 {
            // overshot by a chord: start again
            rot = vec![vec![0, 1]];
            map = CombinatorialMap::from_rotations(rot.clone()).expect("loop");
        }
    }
    map
}

/// A Σ-graph with between 3 and `max_faces` faces and random marks.
pub fn random_sigma_graph(seed: u64, max_faces: usize) -> SigmaGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let faces = rng.gen_range(3..=max_faces);
    let map = random_map(&mut rng, faces);
    let mut ids: Vec<usize> = (0..map.num_faces()).collect();
    ids.shuffle(&mut rng);
    make_sigma_graph(map, ids[0], ids[1], ids[2]).expect("three distinct faces")
}

use lamination_core::constructor::{pillowcase, BlockParams, FamilySpec};
use lamination_core::corpus;

/// Every `t` with `l_i <= max_l` and `n_i <= min(l_{i+1}, l_{i+2})`.
pub fn block_params(max_l: u32) -> Vec<BlockParams> {
    let mut out = Vec::new();
    for l1 in 0..=max_l {
        for l2 in 0..=max_l {
            for l3 in 0..=max_l {
                for n1 in 0..=l2.min(l3) {
                    for n2 in 0..=l3.min(l1) {
                        for n3 in 0..=l1.min(l2) {
                            out.push(BlockParams { l: [l1, l2, l3], n: [n1, n2, n3] });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every family layout with at most `max_count` circles per hole that builds.
pub fn family_specs(max_count: u32) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    let r = 0..=max_count;
    for c1 in r.clone() {
        for c2 in r.clone() {
            for c3 in r.clone() {
                let c = [c1, c2, c3];
                for p1 in 0..=c2.min(c3) {
                    for p2 in 0..=c3.min(c1) {
                        for p3 in 0..=c1.min(c2) {
                            let spec = FamilySpec::new(c, [p1, p2, p3]);
                            if spec.build().is_ok() {
                                out.push(spec);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Theta, the reference families, pillowcases with `l_i <= 2` and families with
/// at most three circles per hole.
pub fn oracle_corpus() -> Vec<(String, SigmaGraph)> {
    let mut out = vec![
        ("theta".to_string(), corpus::theta()),
        ("touching_nest".to_string(), corpus::touching_nest()),
        ("three_circles".to_string(), corpus::three_circles()),
    ];
    for t in block_params(2) {
        let g = pillowcase(&t).expect("valid parameters").graph;
        out.push((format!("pillowcase {:?}", t.to_array()), g));
    }
    for s in family_specs(3) {
        let g = s.build().expect("filtered").graph;
        out.push((format!("family {:?} {:?}", s.counts, s.depths), g));
    }
    out
}
