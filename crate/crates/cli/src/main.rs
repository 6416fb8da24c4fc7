//! `lamination`: analyse Σ-graphs, test sextuples for realizability, build
//! witnesses and check them against brute force.
//!
//! Exit codes: 0 success or realizable, 1 a negative answer (not realizable,
//! a sweep mismatch, an oracle disagreement), 2 bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use lamination_core::constructor::{construct_with, pillowcase, BlockParams, FamilySpec, Rim, Route};
use lamination_core::io::{read_graph, read_graph_file, GraphFile};
use lamination_core::oracle::DEFAULT_NODE_LIMIT;
use lamination_core::polytope::{check_realizable, enumerate_points, PolytopeError, Verdict};
use lamination_core::render::{render_svg, render_svg_with, Layout, RenderOptions};
use lamination_core::special_loops::{sigma_of_with, SigmaVector};
use lamination_core::sweep::{oracle_compare, roundtrip};
use lamination_core::{Execution, Hole, SigmaGraph};

#[derive(Parser)]
#[command(name = "lamination", version, about = "Lamination spaces of graphs on a pair of pants")]
struct Cli {
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print σ, ν and the lamination types of a graph file.
    Analyze {
        path: PathBuf,
        /// Leave out the empty lamination (0,0,0).
        #[arg(long)]
        exclude_origin: bool,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a sextuple (M1 M2 M3 d1 d2 d3) is realized by some graph.
    Check {
        #[arg(num_args = 6, required = true)]
        tau: Vec<u32>,
    },
    /// Build a graph and write it as JSON.
    Construct(ConstructArgs),
    /// Construct every realizable sextuple with all M_i <= max_mu and re-analyse.
    Roundtrip {
        #[arg(long, default_value_t = 2)]
        max_mu: u32,
        /// Print every sextuple, not only fallbacks and failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Draw a graph file as SVG with its special loops.
    Render {
        path: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Do not highlight special loops.
        #[arg(long)]
        no_loops: bool,
        /// Ignore any layout stored in the file and use a Tutte layout.
        #[arg(long)]
        tutte: bool,
        #[arg(long, default_value_t = 600.0)]
        size: f64,
    },
    /// Compare brute-force cycle packings and lamination types with the polytope.
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        #[arg(long)]
        exclude_origin: bool,
    },
}

#[derive(Args)]
struct ConstructArgs {
    /// Target sextuple M1 M2 M3 d1 d2 d3.
    #[arg(num_args = 6, conflicts_with_all = ["pillowcase", "counts"])]
    tau: Vec<u32>,
    /// Pillowcase parameters l1 l2 l3 n1 n2 n3.
    #[arg(long, num_args = 6, allow_negative_numbers = true, conflicts_with = "counts")]
    pillowcase: Option<Vec<i64>>,
    /// Nested circles around each hole.
    #[arg(long, num_args = 3)]
    counts: Option<Vec<u32>>,
    /// Overlap depth opposite each hole (with --counts).
    #[arg(long, num_args = 3, requires = "counts")]
    depths: Option<Vec<u32>>,
    /// Hole whose family gets a tangent cap (repeatable, with --counts).
    #[arg(long, requires = "counts")]
    cap: Vec<usize>,
    /// Hole whose opposite overlap touches instead of crossing (repeatable).
    #[arg(long, requires = "counts")]
    touch: Vec<usize>,
    /// Output file; JSON goes to stdout and the report to stderr without it.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn hole_arg(h: usize) -> Result<Hole> {
    Hole::new(h).with_context(|| format!("hole must be 1, 2 or 3, got {h}"))
}

fn tau_arg(v: &[u32]) -> SigmaVector {
    SigmaVector::from([v[0], v[1], v[2], v[3], v[4], v[5]])
}

fn load(path: &Path) -> Result<SigmaGraph> {
    read_graph(path).with_context(|| format!("reading {}", path.display()))
}

fn analyze(path: &Path, exclude_origin: bool, json: bool, exec: Execution) -> Result<ExitCode> {
    let g = load(path)?;
    let sigma = sigma_of_with(&g, exec);
    let mut poly = enumerate_points(sigma);
    if exclude_origin {
        poly = poly.without_origin();
    }
    if json {
        let out = serde_json::json!({
            "sigma": sigma,
            "nu": sigma.nu(),
            "polytope": poly,
        });
        println!("{out}");
    } else {
        println!("sigma = {sigma}");
        println!("nu = {}", sigma.nu());
        println!("points ({}):", poly.len());
        for p in &poly.points {
            println!("  {p}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict_text(tau: SigmaVector) -> (bool, String) {
    match check_realizable(tau) {
        Ok(Verdict::Realizable) => (true, format!("{tau}: realizable")),
        Ok(Verdict::Violates { condition, hole }) => {
            (false, format!("{tau}: not realizable, {condition:?} violated at i={hole}"))
        }
        Err(PolytopeError::NonPositiveDelta(h)) => {
            (false, format!("{tau}: not realizable, d{h} must be at least 1"))
        }
    }
}

fn check(tau: SigmaVector) -> ExitCode {
    let (ok, text) = verdict_text(tau);
    println!("{text}");
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn emit_graph(g: &SigmaGraph, layout: Option<Layout>, out: &Option<PathBuf>, report: &str) -> Result<()> {
    let mut file = GraphFile::from_graph(g);
    if let Some(l) = layout {
        file = file.with_layout(l);
    }
    match out {
        Some(path) => {
            fs::write(path, file.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
            println!("{report}");
            println!("wrote {}", path.display());
        }
        None => {
            eprintln!("{report}");
            println!("{}", file.to_json());
        }
    }
    Ok(())
}

fn construct(args: &ConstructArgs, exec: Execution) -> Result<ExitCode> {
    if let Some(t) = &args.pillowcase {
        let t: [i64; 6] = t.as_slice().try_into().expect("clap enforces six values");
        let params = BlockParams::new(t)?;
        let g = pillowcase(&params)?.graph;
        let sigma = sigma_of_with(&g, exec);
        let predicted = params.predicted_sigma();
        let report = format!(
            "pillowcase t={:?}\nsigma = {sigma} (closed form {predicted}, {})",
            params.to_array(),
            if sigma == predicted { "match" } else { "MISMATCH" }
        );
        emit_graph(&g, None, &args.out, &report)?;
        return Ok(if sigma == predicted { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }
    if let Some(counts) = &args.counts {
        let mut spec = FamilySpec::new(
            [counts[0], counts[1], counts[2]],
            args.depths.as_ref().map_or([0; 3], |d| [d[0], d[1], d[2]]),
        );
        for &h in &args.cap {
            spec.caps[hole_arg(h)?.index()] = true;
        }
        for &h in &args.touch {
            spec.rims[hole_arg(h)?.index()] = Rim::Touch;
        }
        let fam = spec.build()?;
        let report = format!(
            "family counts={:?} depths={:?} caps={:?} rims={:?}\nsigma = {}",
            spec.counts,
            spec.depths,
            spec.caps,
            spec.rims,
            sigma_of_with(&fam.graph, exec)
        );
        emit_graph(&fam.graph, Some(fam.arrangement.drawing()), &args.out, &report)?;
        return Ok(ExitCode::SUCCESS);
    }
    if args.tau.len() != 6 {
        bail!("give a sextuple, --pillowcase or --counts");
    }
    let tau = tau_arg(&args.tau);
    let (ok, text) = verdict_text(tau);
    if !ok {
        println!("{text}");
        return Ok(ExitCode::from(1));
    }
    let c = construct_with(tau, exec)?;
    let sigma = sigma_of_with(&c.graph, exec);
    let report = format!(
        "case {:?}{}\nroute {} (holes sorted as {:?})\nverified sigma = {sigma} ({})",
        c.case,
        if c.fallback { ", recipe failed, found by search" } else { "" },
        c.route,
        c.perm.map(|h| h.number()),
        if sigma == tau { "match" } else { "MISMATCH" }
    );
    // relabelling keeps the map, so the family drawing still applies
    let layout = match c.route {
        Route::Family(spec) => Some(spec.build()?.arrangement.drawing()),
        Route::Pillowcase(_) => None,
    };
    emit_graph(&c.graph, layout, &args.out, &report)?;
    Ok(if sigma == tau { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_roundtrip(max_mu: u32, verbose: bool, exec: Execution) -> Result<ExitCode> {
    let r = roundtrip(max_mu, exec);
    let mut out = std::io::stdout().lock();
    writeln!(out, "{:<16} {:<5} {:<9} {:<8} route", "tau", "case", "status", "source")?;
    for e in &r.entries {
        if !(verbose || e.fallback || !e.verified) {
            continue;
        }
        writeln!(
            out,
            "{:<16} {:<5} {:<9} {:<8} {}",
            e.tau.to_string(),
            e.case.map_or("-".into(), |c| format!("{c:?}")),
            if e.verified { "pass" } else { "FAIL" },
            if e.fallback { "search" } else { "recipe" },
            e.route.map_or_else(|| e.error.clone().unwrap_or_default(), |r| r.to_string())
        )?;
    }
    writeln!(
        out,
        "{} sextuples: {} pass, {} fail, {} via search fallback",
        r.entries.len(),
        r.passed(),
        r.failures().len(),
        r.fallbacks().len()
    )?;
    Ok(if r.all_verified() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn render(path: &Path, out: &Path, no_loops: bool, tutte: bool, size: f64) -> Result<ExitCode> {
    let file = read_graph_file(path).with_context(|| format!("reading {}", path.display()))?;
    let g = file.to_graph().with_context(|| format!("reading {}", path.display()))?;
    let opts = RenderOptions { size, special_loops: !no_loops };
    let svg = match &file.layout {
        Some(l) if !tutte => {
            if !l.fits(g.map()) {
                bail!("layout in {} does not match its graph", path.display());
            }
            render_svg_with(&g, l, &opts)
        }
        _ => render_svg(&g, &opts),
    };
    fs::write(out, svg).with_context(|| format!("writing {}", out.display()))?;
    println!(
        "wrote {} ({} vertices, {} edges)",
        out.display(),
        g.map().num_vertices(),
        g.map().num_edges()
    );
    Ok(ExitCode::SUCCESS)
}

fn oracle(path: &Path, node_limit: u64, exclude_origin: bool, exec: Execution) -> Result<ExitCode> {
    let g = load(path)?;
    let r = oracle_compare(&g, node_limit, exec)?;
    let strip = |v: &[lamination_core::polytope::LaminationType]| {
        v.iter()
            .filter(|p| !(exclude_origin && p.is_origin()))
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("sigma = {}", r.sigma);
    println!("minimal cycles = {}", r.minimal_cycles);
    println!("packings = {:?} (capacities {:?})", r.packings, r.sigma.mu);
    println!("brute force = {}", strip(&r.bruteforce_points));
    println!("polytope    = {}", strip(&r.polytope_points));
    println!("{}", if r.agrees() { "agree" } else { "DISAGREE" });
    Ok(if r.agrees() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn dispatch(cli: &Cli) -> Result<ExitCode> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match &cli.command {
        Command::Analyze { path, exclude_origin, json } => analyze(path, *exclude_origin, *json, exec),
        Command::Check { tau } => Ok(check(tau_arg(tau))),
        Command::Construct(args) => construct(args, exec),
        Command::Roundtrip { max_mu, verbose } => run_roundtrip(*max_mu, *verbose, exec),
        Command::Render { path, out, no_loops, tutte, size } => render(path, out, *no_loops, *tutte, *size),
        Command::Oracle { path, node_limit, exclude_origin } => oracle(path, *node_limit, *exclude_origin, exec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            // sources are often already part of the message above them
            let mut text = e.to_string();
            for cause in e.chain().skip(1) {
                let c = cause.to_string();
                if !text.contains(&c) {
                    text = format!("{text}: {c}");
                }
            }
            eprintln!("error: {text}");
            ExitCode::from(2)
        }
    }
}
