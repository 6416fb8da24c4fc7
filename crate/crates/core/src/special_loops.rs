//! Special loops around each marked face and the sextuple σ(G).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::exploration::{ExplorationError, SigmaGraph, SimpleLoop};
use crate::hole::Hole;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialLoopError {
    #[error("OutOfRange: k = {k} exceeds distance {max} between marked faces {from} and {toward}")]
    OutOfRange { from: Hole, toward: Hole, k: u32, max: u32 },
    #[error("OutOfRange: target hole must differ from the source hole")]
    SameHole,
    #[error(transparent)]
    Exploration(#[from] ExplorationError),
}

/// `(μ_1, μ_2, μ_3, δ_1, δ_2, δ_3)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[u32; 6]", into = "[u32; 6]")]
pub struct SigmaVector {
    pub mu: [u32; 3],
    pub delta: [u32; 3],
}

impl SigmaVector {
    pub fn new(mu: [u32; 3], delta: [u32; 3]) -> SigmaVector {
        SigmaVector { mu, delta }
    }

    pub fn to_array(self) -> [u32; 6] {
        let (m, d) = (self.mu, self.delta);
        [m[0], m[1], m[2], d[0], d[1], d[2]]
    }

    pub fn mu(&self, h: Hole) -> u32 {
        self.mu[h.index()]
    }

    pub fn delta(&self, h: Hole) -> u32 {
        self.delta[h.index()]
    }

    /// Entry `i` of the result is entry `perm[i]` of `self`.
    pub fn permuted(&self, perm: [Hole; 3]) -> SigmaVector {
        SigmaVector {
            mu: perm.map(|h| self.mu(h)),
            delta: perm.map(|h| self.delta(h)),
        }
    }

    pub fn nu(&self) -> NuVector {
        NuVector {
            nu: Hole::ALL.map(|h| {
                let (a, b) = h.others();
                self.mu(a) as i64 + self.mu(b) as i64 - self.delta(h) as i64
            }),
        }
    }
}

impl From<[u32; 6]> for SigmaVector {
    fn from(t: [u32; 6]) -> SigmaVector {
        SigmaVector { mu: [t[0], t[1], t[2]], delta: [t[3], t[4], t[5]] }
    }
}

impl From<SigmaVector> for [u32; 6] {
    fn from(s: SigmaVector) -> [u32; 6] {
        s.to_array()
    }
}

impl fmt::Display for SigmaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.to_array();
        write!(f, "({},{},{},{},{},{})", t[0], t[1], t[2], t[3], t[4], t[5])
    }
}

/// `ν_i = μ_{i+1} + μ_{i+2} - δ_i`, the depth of overlap between the families
/// of the two other holes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NuVector {
    pub nu: [i64; 3],
}

impl NuVector {
    pub fn get(&self, h: Hole) -> i64 {
        self.nu[h.index()]
    }
}

impl fmt::Display for NuVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.nu[0], self.nu[1], self.nu[2])
    }
}

/// Nested vertex-disjoint loops of one type, innermost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialLoopFamily {
    pub hole: Hole,
    pub loops: Vec<SimpleLoop>,
}

impl SpecialLoopFamily {
    pub fn len(&self) -> usize {
        self.loops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }
}

/// The loop of the `k`-th boundary around `from` that separates it from the
/// marked face of `toward`.
pub fn loop_toward(
    g: &SigmaGraph,
    from: Hole,
    toward: Hole,
    k: u32,
) -> Result<SimpleLoop, SpecialLoopError> {
    if from == toward {
        return Err(SpecialLoopError::SameHole);
    }
    let max = g.distances().get(g.marked(from), g.marked(toward));
    if k == 0 || k > max {
        return Err(SpecialLoopError::OutOfRange { from, toward, k, max });
    }
    let target = g.marked(toward);
    let set = g.boundary_loops(from, k)?;
    let found = set
        .loops
        .into_iter()
        .find(|b| b.outer.binary_search(&target).is_ok())
        .expect("every unexplored face lies beyond some boundary loop");
    Ok(found.lp)
}

/// Loops shared by the boundaries toward both other holes, for radii up to the
/// first divergence.
pub fn special_family(g: &SigmaGraph, hole: Hole) -> SpecialLoopFamily {
    let (a, b) = hole.others();
    let (fa, fb) = (g.marked(a), g.marked(b));
    let dist = g.distances();
    let limit = dist.get(g.marked(hole), fa).min(dist.get(g.marked(hole), fb));
    let mut loops = Vec::new();
    for k in 1..=limit {
        let set = g.boundary_loops(hole, k).expect("k within range");
        let toward = |f| set.loops.iter().position(|l| l.outer.binary_search(&f).is_ok());
        match (toward(fa), toward(fb)) {
            (Some(x), Some(y)) if x == y => loops.push(set.loops[x].lp.clone()),
            _ => break,
        }
    }
    SpecialLoopFamily { hole, loops }
}

pub fn special_families(g: &SigmaGraph, exec: Execution) -> Vec<SpecialLoopFamily> {
    exec.map(&Hole::ALL, |&h| special_family(g, h))
}

pub fn sigma_of(g: &SigmaGraph) -> SigmaVector {
    sigma_of_with(g, Execution::Sequential)
}

pub fn sigma_of_with(g: &SigmaGraph, exec: Execution) -> SigmaVector {
    let fams = special_families(g, exec);
    SigmaVector {
        mu: [0, 1, 2].map(|i| fams[i].len() as u32),
        delta: Hole::ALL.map(|h| g.opposite_distance(h)),
    }
}

pub fn depth_vector(g: &SigmaGraph) -> NuVector {
    sigma_of(g).nu()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exploration::LoopType;

    #[test]
    fn theta_has_one_digon_per_hole() {
        let g = corpus::theta();
        // the boundary of F1 is one digon with both other faces beyond it
        assert_eq!(
            loop_toward(&g, Hole::ONE, Hole::TWO, 1).unwrap().edge_set(),
            loop_toward(&g, Hole::ONE, Hole::THREE, 1).unwrap().edge_set()
        );
        assert_eq!(sigma_of(&g), SigmaVector::new([1, 1, 1], [1, 1, 1]));
    }

    #[test]
    fn nested_families_count_their_circles() {
        let g = corpus::nested(3, 1, 2);
        let fam = special_family(&g, Hole::ONE);
        assert_eq!(fam.len(), 3);
        for l in &fam.loops {
            assert_eq!(g.classify_loop(l).unwrap(), LoopType::Type(Hole::ONE));
        }
        for w in fam.loops.windows(2) {
            assert!(!w[0].shares_vertex(&w[1], g.map()));
        }
        assert_eq!(sigma_of(&g).mu, [3, 1, 2]);
    }

    #[test]
    fn innermost_loop_is_shared_by_both_directions() {
        let g = corpus::nested(2, 1, 1);
        let a = loop_toward(&g, Hole::ONE, Hole::TWO, 1).unwrap();
        let b = loop_toward(&g, Hole::ONE, Hole::THREE, 1).unwrap();
        assert!(a.same_edges(&b));
    }

    #[test]
    fn out_of_range_radius() {
        let g = corpus::theta();
        assert_eq!(
            loop_toward(&g, Hole::ONE, Hole::TWO, 2),
            Err(SpecialLoopError::OutOfRange { from: Hole::ONE, toward: Hole::TWO, k: 2, max: 1 })
        );
        assert_eq!(loop_toward(&g, Hole::ONE, Hole::ONE, 1), Err(SpecialLoopError::SameHole));
    }

    #[test]
    fn nu_is_depth_of_overlap() {
        let s = SigmaVector::from([4, 1, 1, 1, 4, 5]);
        assert_eq!(s.nu().nu, [1, 1, 0]);
        assert_eq!(s.to_string(), "(4,1,1,1,4,5)");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[4,1,1,1,4,5]");
        assert_eq!(serde_json::from_str::<SigmaVector>(&json).unwrap(), s);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let g = corpus::nested(2, 2, 1);
        assert_eq!(sigma_of_with(&g, Execution::Parallel), sigma_of_with(&g, Execution::Sequential));
    }
}
