//! The lattice polytope of a sextuple and the realizability test.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::exploration::SigmaGraph;
use crate::hole::Hole;
use crate::special_loops::{sigma_of, NuVector, SigmaVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("NonPositiveDelta: δ_{0} must be at least 1")]
    NonPositiveDelta(Hole),
}

/// Numbers of loops of each type in a lamination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaminationType {
    pub m: [u32; 3],
}

impl LaminationType {
    pub fn new(x: u32, y: u32, z: u32) -> LaminationType {
        LaminationType { m: [x, y, z] }
    }

    pub fn is_origin(&self) -> bool {
        self.m == [0, 0, 0]
    }
}

impl fmt::Display for LaminationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m[0], self.m[1], self.m[2])
    }
}

/// Lattice points `(x, y, z) >= 0` with `x <= a, y <= b, z <= c, y + z <= d,
/// x + z <= e, x + y <= f`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaminationPolytope {
    pub tau: SigmaVector,
    pub points: Vec<LaminationType>,
}

impl LaminationPolytope {
    pub fn contains(&self, p: &LaminationType) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same point set without `(0, 0, 0)`.
    pub fn without_origin(mut self) -> LaminationPolytope {
        self.points.retain(|p| !p.is_origin());
        self
    }

    pub fn is_downward_closed(&self) -> bool {
        self.points.iter().all(|p| {
            (0..3).all(|i| {
                p.m[i] == 0 || {
                    let mut q = *p;
                    q.m[i] -= 1;
                    self.contains(&q)
                }
            })
        })
    }
}

pub fn in_polytope(tau: &SigmaVector, p: &LaminationType) -> bool {
    let [x, y, z] = p.m;
    let [a, b, c] = tau.mu;
    let [d, e, f] = tau.delta;
    x <= a && y <= b && z <= c && y + z <= d && x + z <= e && x + y <= f
}

pub fn enumerate_points(tau: SigmaVector) -> LaminationPolytope {
    enumerate_points_with(tau, Execution::Sequential)
}

pub fn enumerate_points_with(tau: SigmaVector, exec: Execution) -> LaminationPolytope {
    let xs: Vec<u32> = (0..=tau.mu[0]).collect();
    let slabs = exec.map(&xs, |&x| {
        let mut out = Vec::new();
        for y in 0..=tau.mu[1] {
            for z in 0..=tau.mu[2] {
                let p = LaminationType::new(x, y, z);
                if in_polytope(&tau, &p) {
                    out.push(p);
                }
            }
        }
        out
    });
    LaminationPolytope { tau, points: slabs.into_iter().flatten().collect() }
}

pub fn lamination_space(g: &SigmaGraph) -> LaminationPolytope {
    enumerate_points(sigma_of(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// `max(μ_{i+1}, μ_{i+2}) <= δ_i <= μ_{i+1} + μ_{i+2}`
    T1,
    /// `δ_{i+1} + δ_{i+2} <= 2μ_i + δ_i + 1`
    T2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Realizable,
    Violates { condition: Condition, hole: Hole },
}

impl Verdict {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Verdict::Realizable)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Realizable => write!(f, "Realizable"),
            Verdict::Violates { condition, hole } => write!(f, "Violates({condition:?}, {hole})"),
        }
    }
}

/// The first violated inequality, scanning all `T1` before any `T2`.
pub fn check_realizable(tau: SigmaVector) -> Result<Verdict, PolytopeError> {
    if let Some(h) = Hole::ALL.into_iter().find(|&h| tau.delta(h) < 1) {
        return Err(PolytopeError::NonPositiveDelta(h));
    }
    let (mu, delta) = (|h: Hole| tau.mu(h) as i64, |h: Hole| tau.delta(h) as i64);
    for h in Hole::ALL {
        let (a, b) = h.others();
        if delta(h) < mu(a).max(mu(b)) || delta(h) > mu(a) + mu(b) {
            return Ok(Verdict::Violates { condition: Condition::T1, hole: h });
        }
    }
    for h in Hole::ALL {
        let (a, b) = h.others();
        if delta(a) + delta(b) > 2 * mu(h) + delta(h) + 1 {
            return Ok(Verdict::Violates { condition: Condition::T2, hole: h });
        }
    }
    Ok(Verdict::Realizable)
}

pub fn nu_transform(tau: SigmaVector) -> NuVector {
    tau.nu()
}

/// Inverse of [`nu_transform`] for a fixed `μ`.
pub fn tau_from_mu_nu(mu: [u32; 3], nu: NuVector) -> Result<SigmaVector, PolytopeError> {
    let mut delta = [0u32; 3];
    for h in Hole::ALL {
        let (a, b) = h.others();
        let d = mu[a.index()] as i64 + mu[b.index()] as i64 - nu.get(h);
        if d < 1 {
            return Err(PolytopeError::NonPositiveDelta(h));
        }
        delta[h.index()] = d as u32;
    }
    Ok(SigmaVector { mu, delta })
}

/// `0 <= ν_i <= min(μ_{i+1}, μ_{i+2}, ν_{i+1} + ν_{i+2} + 1)` for every `i`.
pub fn nu_conditions_hold(mu: [u32; 3], nu: NuVector) -> bool {
    Hole::ALL.into_iter().all(|h| {
        let (a, b) = h.others();
        let bound = (mu[a.index()] as i64)
            .min(mu[b.index()] as i64)
            .min(nu.get(a) + nu.get(b) + 1);
        (0..=bound).contains(&nu.get(h))
    })
}

/// All realizable sextuples with every `μ_i <= max_mu`, in lexicographic order.
pub fn realizable_taus(max_mu: u32) -> Vec<SigmaVector> {
    let mut out = Vec::new();
    let r = 0..=max_mu;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                let mu = [a, b, c];
                let ranges: Vec<std::ops::RangeInclusive<u32>> = Hole::ALL
                    .iter()
                    .map(|h| {
                        let (x, y) = h.others();
                        let (x, y) = (mu[x.index()], mu[y.index()]);
                        x.max(y).max(1)..=x + y
                    })
                    .collect();
                for d in ranges[0].clone() {
                    for e in ranges[1].clone() {
                        for f in ranges[2].clone() {
                            let tau = SigmaVector::new(mu, [d, e, f]);
                            if check_realizable(tau) == Ok(Verdict::Realizable) {
                                out.push(tau);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: [u32; 6]) -> SigmaVector {
        SigmaVector::from(v)
    }

    #[test]
    fn trivial_polytope_is_the_origin() {
        let p = enumerate_points(t([0, 0, 0, 3, 4, 5]));
        assert_eq!(p.points, vec![LaminationType::new(0, 0, 0)]);
    }

    #[test]
    fn unit_sextuple_has_four_points() {
        // brute force over the 8-point box
        let mut expect = Vec::new();
        for x in 0..2u32 {
            for y in 0..2u32 {
                for z in 0..2u32 {
                    if x + y <= 1 && y + z <= 1 && x + z <= 1 {
                        expect.push(LaminationType::new(x, y, z));
                    }
                }
            }
        }
        let p = enumerate_points(t([1, 1, 1, 1, 1, 1]));
        assert_eq!(p.points, expect);
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn two_of_one_type_need_room() {
        let p = enumerate_points(t([1, 1, 1, 2, 2, 2]));
        assert!(!p.contains(&LaminationType::new(2, 0, 0)));
        assert!(p.contains(&LaminationType::new(1, 1, 1)));
        assert!(p.is_downward_closed());
    }

    #[test]
    fn json_shape() {
        let p = enumerate_points(t([1, 0, 0, 1, 1, 1]));
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"tau":[1,0,0,1,1,1],"points":[[0,0,0],[1,0,0]]}"#
        );
        assert_eq!(p.clone().without_origin().len(), 1);
    }

    #[test]
    fn verdicts() {
        assert_eq!(check_realizable(t([4, 1, 1, 1, 4, 5])), Ok(Verdict::Realizable));
        assert_eq!(check_realizable(t([2, 7, 6, 8, 6, 7])), Ok(Verdict::Realizable));
        assert_eq!(
            check_realizable(t([0, 0, 0, 1, 1, 1])),
            Ok(Verdict::Violates { condition: Condition::T1, hole: Hole::ONE })
        );
        // T1 holds everywhere but δ_2 + δ_3 = 8 > 2·0 + 2 + 1
        assert_eq!(
            check_realizable(t([0, 4, 4, 4, 4, 4])),
            Ok(Verdict::Violates { condition: Condition::T2, hole: Hole::ONE })
        );
        assert_eq!(
            check_realizable(t([1, 1, 1, 1, 0, 1])),
            Err(PolytopeError::NonPositiveDelta(Hole::TWO))
        );
    }

    #[test]
    fn nu_round_trip() {
        let tau = t([4, 3, 4, 4, 5, 7]);
        let nu = nu_transform(tau);
        assert_eq!(nu.nu, [3, 3, 0]);
        assert_eq!(tau_from_mu_nu(tau.mu, nu), Ok(tau));
        let gap = tau_from_mu_nu([2, 3, 3], NuVector { nu: [3, 1, 1] }).unwrap();
        assert_eq!(gap, t([2, 3, 3, 3, 4, 4]));
        assert_eq!(check_realizable(gap), Ok(Verdict::Realizable));
        let mu = [2, 1, 3];
        let flat = tau_from_mu_nu(mu, NuVector::default()).unwrap();
        assert_eq!(flat.delta, [4, 5, 3]);
        assert_eq!(nu_transform(flat), NuVector::default());
    }

    #[test]
    fn verdict_matches_nu_conditions() {
        for a in 0..4u32 {
            for b in 0..4u32 {
                for c in 0..4u32 {
                    for d in 1..8u32 {
                        for e in 1..8u32 {
                            for f in 1..8u32 {
                                let tau = SigmaVector::new([a, b, c], [d, e, f]);
                                assert_eq!(
                                    check_realizable(tau).unwrap().is_realizable(),
                                    nu_conditions_hold(tau.mu, tau.nu()),
                                    "{tau}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn realizable_list_is_complete_for_small_mu() {
        let list = realizable_taus(2);
        let mut brute = 0;
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    for d in 1..6u32 {
                        for e in 1..6u32 {
                            for f in 1..6u32 {
                                if check_realizable(SigmaVector::new([a, b, c], [d, e, f]))
                                    .unwrap()
                                    .is_realizable()
                                {
                                    brute += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(list.len(), brute);
    }

    #[test]
    fn parallel_enumeration_matches() {
        let tau = t([3, 3, 2, 4, 5, 5]);
        assert_eq!(enumerate_points_with(tau, Execution::Parallel), enumerate_points(tau));
    }
}
