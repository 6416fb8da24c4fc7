//! Choosing a witness graph for a realizable sextuple.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::exploration::SigmaGraph;
use crate::hole::Hole;
use crate::polytope::{check_realizable, Verdict};
use crate::special_loops::{sigma_of, SigmaVector};

use super::blocks::{pillowcase, BlockParams};
use super::family::{FamilySpec, Rim};
use super::ConstructError;

/// Which branch of the case analysis applies once indices are sorted so that
/// `ν_3 <= ν_2 <= ν_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// `ν_2 < ν_1 <= μ_1 + ν_2`
    A,
    /// `ν_1 = ν_2`, `ν_3 >= 1`
    B,
    /// `ν_1 = ν_2`, `ν_3 = 0`, `μ_3 >= 1`
    C,
    /// `ν_1 = ν_2 = ν_3 = 0`, `μ_3 = 0`
    D,
    /// `ν_1 > μ_1 + ν_2`
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "lowercase")]
pub enum Route {
    Pillowcase(BlockParams),
    Family(FamilySpec),
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Pillowcase(t) => write!(f, "pillowcase t={:?}", t.to_array()),
            Route::Family(s) => write!(
                f,
                "family counts={:?} depths={:?} caps={:?} rims={:?}",
                s.counts, s.depths, s.caps, s.rims
            ),
        }
    }
}

/// A verified witness for `tau`.
#[derive(Clone, Debug)]
pub struct Construction {
    pub tau: SigmaVector,
    pub graph: SigmaGraph,
    pub case: Case,
    /// Route in the sorted frame; hole `i` there is hole `perm[i]` of `tau`.
    pub route: Route,
    pub perm: [Hole; 3],
    /// Whether the case recipe failed and the search supplied the witness.
    pub fallback: bool,
}

fn build(route: &Route) -> Result<SigmaGraph, ConstructError> {
    match route {
        Route::Pillowcase(t) => Ok(pillowcase(t)?.graph),
        Route::Family(s) => Ok(s.build()?.graph),
    }
}

/// Builds the route and keeps it only if its sextuple is exactly `tau`.
fn verified(route: &Route, tau: SigmaVector) -> Option<SigmaGraph> {
    let g = build(route).ok()?;
    (sigma_of(&g) == tau).then_some(g)
}

/// Permutation sorting `ν` into non-increasing order (stable).
fn sorting_perm(tau: SigmaVector) -> [Hole; 3] {
    let nu = tau.nu();
    let mut perm = Hole::ALL;
    perm.sort_by_key(|h| std::cmp::Reverse(nu.get(*h)));
    perm
}

fn inverse(perm: [Hole; 3]) -> [Hole; 3] {
    let mut inv = Hole::ALL;
    for (i, h) in perm.iter().enumerate() {
        inv[h.index()] = Hole::from_index(i);
    }
    inv
}

/// Case and recipe route for a sextuple already sorted by `ν`.
pub fn recipe(tau: SigmaVector) -> (Case, Result<Route, ConstructError>) {
    let [m1, m2, m3] = tau.mu.map(|m| m as i64);
    let [v1, v2, v3] = tau.nu().nu;
    let pillow = |t: [i64; 6]| BlockParams::new(t).map(Route::Pillowcase);
    if v2 < v1 && v1 <= m1 + v2 {
        (Case::A, pillow([v2 - v1 + m1, m2 - 1, m3 - 1, v1 - 1, 2 * v2 - v1, v2 + v3 - v1]))
    } else if v1 == v2 && v3 >= 1 {
        (Case::B, pillow([m1 - 1, m2 - 1, m3 - 1, v1 - 1, v2 - 1, v3 - 1]))
    } else if v1 == v2 && v3 == 0 && m3 >= 1 {
        let spec = FamilySpec::new(tau.mu, [v1 as u32, v2 as u32, 0]);
        (Case::C, Ok(Route::Family(spec)))
    } else if v1 == v2 && v3 == 0 {
        let spec = FamilySpec::new(tau.mu, [0; 3]).with_caps([true, true, false]);
        (Case::D, Ok(Route::Family(spec)))
    } else {
        let spec = FamilySpec::new([0, tau.mu[1], tau.mu[2]], [v1 as u32, 0, 0])
            .with_rims([Rim::Touch; 3]);
        (Case::E, Ok(Route::Family(spec)))
    }
}

pub fn construct(tau: SigmaVector) -> Result<Construction, ConstructError> {
    construct_with(tau, Execution::default())
}

pub fn construct_with(tau: SigmaVector, exec: Execution) -> Result<Construction, ConstructError> {
    match check_realizable(tau) {
        Ok(Verdict::Realizable) => {}
        Ok(v) => return Err(ConstructError::NotRealizable(format!("{tau}: {v}"))),
        Err(e) => return Err(ConstructError::NotRealizable(format!("{tau}: {e}"))),
    }
    let perm = sorting_perm(tau);
    let sorted = tau.permuted(perm);
    let back = inverse(perm);
    let (case, route) = recipe(sorted);

    let recipe_note = match &route {
        Ok(r) => match verified(r, sorted) {
            Some(g) => {
                return Ok(Construction {
                    tau,
                    graph: g.relabelled(back),
                    case,
                    route: *r,
                    perm,
                    fallback: false,
                })
            }
            None => format!("case {case:?} route {r} does not reproduce {sorted}"),
        },
        Err(e) => format!("case {case:?} parameters invalid: {e}"),
    };
    match search_with(sorted, exec) {
        Ok((route, g)) => Ok(Construction {
            tau,
            graph: g.relabelled(back),
            case,
            route,
            perm,
            fallback: true,
        }),
        Err(e) => Err(ConstructError::ConstructionFailed(format!("{recipe_note}; {e}"))),
    }
}

/// Pillowcase parameters whose closed forms give `tau`, then family layouts
/// checked by full analysis.
pub fn search(tau: SigmaVector) -> Result<(Route, SigmaGraph), ConstructError> {
    search_with(tau, Execution::default())
}

pub fn search_with(tau: SigmaVector, exec: Execution) -> Result<(Route, SigmaGraph), ConstructError> {
    let mut pillows = Vec::new();
    let mu = tau.mu;
    for l1 in 0..=mu[0] {
        for l2 in 0..=mu[1] {
            for l3 in 0..=mu[2] {
                for n1 in 0..=l2.min(l3) {
                    for n2 in 0..=l3.min(l1) {
                        for n3 in 0..=l1.min(l2) {
                            let t = BlockParams { l: [l1, l2, l3], n: [n1, n2, n3] };
                            if t.predicted_sigma() == tau {
                                pillows.push(Route::Pillowcase(t));
                            }
                        }
                    }
                }
            }
        }
    }
    let check = |r: &Route| verified(r, tau).map(|g| (*r, g));
    if let Some(hit) = exec.find_map_first(&pillows, check) {
        return Ok(hit);
    }
    let families = family_candidates(tau);
    exec.find_map_first(&families, check)
        .ok_or(ConstructError::SearchExhausted(tau.to_string()))
}

fn family_candidates(tau: SigmaVector) -> Vec<Route> {
    let max_delta = *tau.delta.iter().max().expect("three entries");
    let mut out = Vec::new();
    let counts_range = |i: usize| 0..=tau.mu[i] + 1;
    for c1 in counts_range(0) {
        for c2 in counts_range(1) {
            for c3 in counts_range(2) {
                let counts = [c1, c2, c3];
                let bound = |i: usize| {
                    let (a, b) = Hole::from_index(i).others();
                    counts[a.index()].min(counts[b.index()]).min(max_delta)
                };
                for p1 in 0..=bound(0) {
                    for p2 in 0..=bound(1) {
                        for p3 in 0..=bound(2) {
                            let depths = [p1, p2, p3];
                            if depths.iter().all(|&p| p > 0) {
                                continue;
                            }
                            for rim_bits in 0..8u8 {
                                let rims = [0, 1, 2].map(|i| {
                                    if rim_bits >> i & 1 == 1 { Rim::Touch } else { Rim::Cross }
                                });
                                // rim style only matters for overlapping pairs
                                if (0..3).any(|i| depths[i] == 0 && rims[i] == Rim::Touch) {
                                    continue;
                                }
                                for cap_bits in 0..8u8 {
                                    let caps = [0, 1, 2].map(|i| cap_bits >> i & 1 == 1);
                                    let spec = FamilySpec { counts, depths, caps, rims };
                                    if spec.layout().is_ok() {
                                        out.push(Route::Family(spec));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // layouts closest to "one circle per special loop" first
    let cost = |r: &Route| match r {
        Route::Family(s) => {
            let off: u32 = (0..3).map(|i| s.counts[i].abs_diff(tau.mu[i])).sum();
            let nu = tau.nu().nu;
            let depth_off: u32 = (0..3).map(|i| s.depths[i].abs_diff(nu[i].max(0) as u32)).sum();
            (off, depth_off, s.caps.iter().filter(|&&c| c).count())
        }
        Route::Pillowcase(_) => (0, 0, 0),
    };
    out.sort_by_key(cost);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: [u32; 6]) -> SigmaVector {
        SigmaVector::from(v)
    }

    #[test]
    fn reference_sextuples_use_their_cases() {
        for (tau, case) in [
            ([4, 3, 4, 4, 5, 7], Case::C),
            ([2, 3, 0, 3, 2, 5], Case::D),
            ([2, 7, 6, 8, 6, 7], Case::E),
            ([5, 4, 4, 6, 6, 5], Case::A),
        ] {
            let c = construct(t(tau)).unwrap();
            assert_eq!(sigma_of(&c.graph), t(tau));
            assert_eq!(c.case, case, "{tau:?}");
            assert!(!c.fallback, "{tau:?}");
        }
    }

    #[test]
    fn unit_sextuple() {
        let c = construct(t([1, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(sigma_of(&c.graph), t([1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn non_realizable_is_rejected_early() {
        assert!(matches!(
            construct(t([0, 0, 0, 1, 1, 1])),
            Err(ConstructError::NotRealizable(_))
        ));
    }

    #[test]
    fn search_inverts_closed_forms() {
        let (route, g) = search(t([5, 4, 4, 6, 6, 5])).unwrap();
        assert_eq!(route, Route::Pillowcase(BlockParams::new([4, 3, 2, 0, 1, 3]).unwrap()));
        assert_eq!(sigma_of(&g), t([5, 4, 4, 6, 6, 5]));
    }

    #[test]
    fn case_a_gap_falls_back() {
        let tau = t([2, 3, 3, 3, 4, 4]);
        let (case, route) = recipe(tau.permuted(sorting_perm(tau)));
        assert_eq!(case, Case::A);
        assert!(route.is_err());
        let c = construct(tau).unwrap();
        assert!(c.fallback);
        assert_eq!(sigma_of(&c.graph), tau);
    }

    #[test]
    fn unsorted_input_is_relabelled_back() {
        // the case C example with holes rotated
        let tau = t([4, 3, 4, 4, 5, 7]).permuted([Hole::TWO, Hole::THREE, Hole::ONE]);
        let c = construct(tau).unwrap();
        assert_eq!(sigma_of(&c.graph), tau);
    }
}
