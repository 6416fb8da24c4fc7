//! Batch checks: construction round trips, pillowcase closed forms, and the
//! brute-force comparison on single graphs.

use serde::Serialize;

use crate::constructor::{construct_with, pillowcase, BlockParams, Case, Route};
use crate::exec::Execution;
use crate::exploration::SigmaGraph;
use crate::oracle::{
    lamination_space_bruteforce, max_disjoint_all, minimal_cycle_catalog, OracleError,
};
use crate::polytope::{enumerate_points, realizable_taus, LaminationType};
use crate::special_loops::{sigma_of, SigmaVector};

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripEntry {
    pub tau: SigmaVector,
    pub case: Option<Case>,
    pub route: Option<Route>,
    pub fallback: bool,
    pub verified: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RoundtripReport {
    pub entries: Vec<RoundtripEntry>,
}

impl RoundtripReport {
    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.verified).count()
    }

    pub fn failures(&self) -> Vec<&RoundtripEntry> {
        self.entries.iter().filter(|e| !e.verified).collect()
    }

    pub fn fallbacks(&self) -> Vec<&RoundtripEntry> {
        self.entries.iter().filter(|e| e.verified && e.fallback).collect()
    }

    pub fn all_verified(&self) -> bool {
        self.entries.iter().all(|e| e.verified)
    }
}

/// Constructs every realizable sextuple with `μ_i <= max_mu` and re-analyses
/// the witness.
pub fn roundtrip(max_mu: u32, exec: Execution) -> RoundtripReport {
    let taus = realizable_taus(max_mu);
    let entries = exec.map(&taus, |&tau| match construct_with(tau, Execution::Sequential) {
        Ok(c) => RoundtripEntry {
            tau,
            case: Some(c.case),
            route: Some(c.route),
            fallback: c.fallback,
            verified: sigma_of(&c.graph) == tau,
            error: None,
        },
        Err(e) => RoundtripEntry {
            tau,
            case: None,
            route: None,
            fallback: false,
            verified: false,
            error: Some(e.to_string()),
        },
    });
    RoundtripReport { entries }
}

#[derive(Clone, Debug, Serialize)]
pub struct GridMismatch {
    pub t: BlockParams,
    pub predicted: SigmaVector,
    pub actual: Option<SigmaVector>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GridReport {
    pub checked: usize,
    pub mismatches: Vec<GridMismatch>,
}

/// Every valid `t` with `l_i <= max_l`.
pub fn block_params_up_to(max_l: u32) -> Vec<BlockParams> {
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

/// Compares the analysed sextuple of each pillowcase with its closed form.
pub fn pillowcase_grid(max_l: u32, exec: Execution) -> GridReport {
    let ts = block_params_up_to(max_l);
    let results = exec.map(&ts, |t| {
        let predicted = t.predicted_sigma();
        let actual = pillowcase(t).ok().map(|p| sigma_of(&p.graph));
        (actual != Some(predicted)).then_some(GridMismatch { t: *t, predicted, actual })
    });
    GridReport { checked: ts.len(), mismatches: results.into_iter().flatten().collect() }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub sigma: SigmaVector,
    /// Largest packing of disjoint cycles of each type.
    pub packings: [usize; 3],
    pub bruteforce_points: Vec<LaminationType>,
    pub polytope_points: Vec<LaminationType>,
    pub minimal_cycles: usize,
}

impl OracleReport {
    pub fn packings_agree(&self) -> bool {
        self.packings == self.sigma.mu.map(|m| m as usize)
    }

    pub fn spaces_agree(&self) -> bool {
        self.bruteforce_points == self.polytope_points
    }

    pub fn agrees(&self) -> bool {
        self.packings_agree() && self.spaces_agree()
    }
}

pub fn oracle_compare(g: &SigmaGraph, node_limit: u64, exec: Execution) -> Result<OracleReport, OracleError> {
    let sigma = sigma_of(g);
    let cat = minimal_cycle_catalog(g, node_limit, exec)?;
    let packings = max_disjoint_all(&cat, node_limit, exec)?;
    let bruteforce_points = lamination_space_bruteforce(&cat, node_limit)?;
    Ok(OracleReport {
        sigma,
        packings,
        bruteforce_points,
        polytope_points: enumerate_points(sigma).points,
        minimal_cycles: cat.len(),
    })
}
