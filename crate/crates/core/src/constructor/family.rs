//! Nested circle families around each hole, with optional crossings between
//! neighbouring families and optional tangent caps.

use serde::{Deserialize, Serialize};

use crate::exploration::SigmaGraph;
use crate::hole::Hole;

use super::arrangement::{AxisArrangement, AxisCircle, BuiltArrangement};
use super::ConstructError;

/// How the outermost circles of two overlapping families meet at the rim of
/// the overlap.
pub type FamilyCircles = [Vec<AxisCircle>; 3];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rim {
    /// Circle `a` of one family crosses circle `b` of the other iff `a + b <= p + 1`.
    #[default]
    Cross,
    /// As `Cross`, except circles with `a + b == p + 1` touch at one vertex.
    Touch,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    /// Nested circles around each hole.
    pub counts: [u32; 3],
    /// `depths[i]` is the overlap depth of the two families other than `i`.
    pub depths: [u32; 3],
    /// One extra circle around the family, tangent to its outermost circle.
    #[serde(default)]
    pub caps: [bool; 3],
    #[serde(default)]
    pub rims: [Rim; 3],
}

/// A family graph with the arrangement it was drawn from.
#[derive(Clone, Debug)]
pub struct FamilyGraph {
    pub graph: SigmaGraph,
    pub arrangement: BuiltArrangement,
}

impl FamilySpec {
    pub fn new(counts: [u32; 3], depths: [u32; 3]) -> FamilySpec {
        FamilySpec { counts, depths, ..FamilySpec::default() }
    }

    pub fn with_caps(mut self, caps: [bool; 3]) -> FamilySpec {
        self.caps = caps;
        self
    }

    pub fn with_rims(mut self, rims: [Rim; 3]) -> FamilySpec {
        self.rims = rims;
        self
    }

    fn validate(&self) -> Result<(), ConstructError> {
        for h in Hole::ALL {
            let (a, b) = h.others();
            let p = self.depths[h.index()];
            if p > self.counts[a.index()].min(self.counts[b.index()]) {
                return Err(ConstructError::InvariantViolated(format!(
                    "depth {p} between families {a} and {b} exceeds their counts"
                )));
            }
            if self.caps[h.index()] {
                if self.counts[h.index()] == 0 {
                    return Err(ConstructError::InvariantViolated(format!(
                        "cap on empty family {h}"
                    )));
                }
                if self.depths[a.index()] > 0 || self.depths[b.index()] > 0 {
                    return Err(ConstructError::InvariantViolated(format!(
                        "cap on family {h}, which overlaps a neighbour"
                    )));
                }
            }
        }
        if self.depths.iter().all(|&p| p > 0) {
            return Err(ConstructError::OverlappingCrossings);
        }
        if self.counts.iter().all(|&c| c == 0) {
            return Err(ConstructError::InvariantViolated("all families empty".into()));
        }
        Ok(())
    }

    /// Left-to-right order of the families along the axis, chosen so that
    /// every overlapping pair is adjacent.
    fn axis_order(&self) -> [Hole; 3] {
        let positive: Vec<usize> = (0..3).filter(|&i| self.depths[i] > 0).collect();
        match positive.as_slice() {
            [i, j] => {
                let k = 3 - i - j;
                [Hole::from_index(*j), Hole::from_index(k), Hole::from_index(*i)]
            }
            [i] => {
                let h = Hole::from_index(*i);
                [h.next(), h.prev(), h]
            }
            _ => Hole::ALL,
        }
    }

    /// Axis circles of each family, outermost first, plus caps.
    pub fn layout(&self) -> Result<(FamilyCircles, [Option<AxisCircle>; 3]), ConstructError> {
        self.validate()?;
        let order: Vec<Hole> = self
            .axis_order()
            .into_iter()
            .filter(|h| self.counts[h.index()] > 0)
            .collect();
        let count = |h: Hole| self.counts[h.index()] as i64;

        let mut lefts: [Vec<i64>; 3] = Default::default();
        let mut rights: [Vec<i64>; 3] = Default::default();
        // Pair frame with base B: left family's circle a ends at
        // B + 2(p + 1 - a) + s, right family's circle b starts at B + 2b.
        let frame_right = |base: i64, p: i64, s: i64, c: i64| -> Vec<i64> {
            (1..=c).map(|a| base + 2 * (p + 1 - a) + s).collect()
        };

        let first = order[0];
        let mut base = 0i64;
        for (pos, &h) in order.iter().enumerate() {
            let c = count(h);
            if pos == 0 {
                // lefts fixed below once the rights are known
            } else {
                lefts[h.index()] = (1..=c).map(|b| base + 2 * b).collect();
            }
            if let Some(&nx) = order.get(pos + 1) {
                let pair = 3 - h.index() - nx.index();
                let p = self.depths[pair] as i64;
                let s = match self.rims[pair] {
                    Rim::Cross => 1,
                    Rim::Touch => 0,
                };
                let inner_left = lefts[h.index()].last().copied().unwrap_or(0);
                let next_base = if pos == 0 {
                    base
                } else {
                    // keep this family's innermost circle clear of its own lefts
                    inner_left + 4 - 2 * (p + 1 - c) - s
                };
                rights[h.index()] = frame_right(next_base, p, s, c);
                base = next_base;
            } else {
                let inner_left = lefts[h.index()].last().copied().unwrap_or(0);
                rights[h.index()] = (1..=c).map(|b| inner_left + 2 * (c - b) + 2).collect();
            }
            if pos == 0 {
                let inner_right = *rights[h.index()].last().expect("non-empty family");
                lefts[first.index()] = (1..=c).map(|a| inner_right - 2 * (c - a) - 2).collect();
                if order.len() == 1 {
                    rights[h.index()] = (1..=c).map(|a| inner_right + 2 * (c - a)).collect();
                }
            }
        }

        let mut circles: [Vec<AxisCircle>; 3] = Default::default();
        let mut caps: [Option<AxisCircle>; 3] = [None; 3];
        for h in Hole::ALL {
            circles[h.index()] = lefts[h.index()]
                .iter()
                .zip(&rights[h.index()])
                .map(|(&l, &r)| AxisCircle::new(2 * l, 2 * r))
                .collect();
            if self.caps[h.index()] {
                let outer = circles[h.index()][0];
                caps[h.index()] = Some(AxisCircle::new(outer.left - 1, outer.right));
            }
        }
        Ok((circles, caps))
    }

    pub fn build(&self) -> Result<FamilyGraph, ConstructError> {
        let (circles, caps) = self.layout()?;
        let all: Vec<AxisCircle> = circles
            .iter()
            .flatten()
            .copied()
            .chain(caps.iter().flatten().copied())
            .collect();
        let arrangement = AxisArrangement::new(all.clone()).build()?;

        let mut marked = [arrangement.outer_face(); 3];
        for h in Hole::ALL {
            let Some(inner) = circles[h.index()].last() else { continue };
            // the leftmost elementary axis interval inside the innermost
            // circle that no other circle covers
            let pts = &arrangement.points;
            let start = pts.binary_search(&inner.left).expect("endpoint on axis");
            let x = pts[start..]
                .windows(2)
                .take_while(|w| w[1] <= inner.right)
                .find(|w| {
                    let mid = (w[0] + w[1]) as f64 / 2.0;
                    all.iter().filter(|c| c.covers(mid)).count() == circles[h.index()].len()
                        + usize::from(caps[h.index()].is_some())
                })
                .map(|w| w[0])
                .ok_or_else(|| {
                    ConstructError::InvariantViolated(format!("no private face inside family {h}"))
                })?;
            marked[h.index()] = arrangement.face_right_of(x).expect("axis point");
        }
        let graph = SigmaGraph::new(arrangement.map.clone(), marked)?;
        Ok(FamilyGraph { graph, arrangement })
    }
}

pub fn family_graph(spec: &FamilySpec) -> Result<SigmaGraph, ConstructError> {
    Ok(spec.build()?.graph)
}
