//! Command implementations behind the `bicol` binary.
//!
//! Every command writes its primary output to the supplied writer so tests can
//! drive them in-process. [`run`] returns [`Outcome::Rejected`] when a
//! verification comes back negative; [`exit_code`] maps errors to codes.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::colouring::{chromatic, Colouring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::io::{read_colouring, read_graph, write_colouring, write_dot, write_graph};
use crate::oracle::{
    enumerate_hyperedges, enumerate_maximal_bicliques, exact_chromatic, verify_against,
    verify_colouring, Verdict, ENUMERATION_CAP, SEARCH_CAP,
};
use crate::power::{
    gen_circulant, recognize_power_graph, Biclique, Mode, PowerCycleParams, PowerGraph,
    PowerPathParams,
};
use crate::reduction::{build_instance, certify_reduction, normalize, parse_dimacs};

#[derive(Debug, Parser)]
#[command(
    name = "bicol",
    version,
    about = "Biclique- and star-colouring of powers of paths and cycles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Path,
    Cycle,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Path => "path",
            Kind::Cycle => "cycle",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Path,
    Cycle,
    Circulant,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a power of a path, power of a cycle or circulant graph.
    Gen(GenArgs),
    /// Chromatic number of a power graph with an optimal colouring.
    Chromatic(ChromaticArgs),
    /// Check a colouring; exits 1 and prints a witness when it fails.
    Verify(VerifyArgs),
    /// List the bicliques (or stars) of a graph as JSON.
    Bicliques(BicliquesArgs),
    /// Build the containment gadget for a DIMACS CNF formula.
    Reduce(ReduceArgs),
    /// CSV of chromatic numbers over a grid of (n, k).
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated distances, circulant only.
    #[arg(long, value_delimiter = ',')]
    pub distances: Vec<usize>,
    /// Graph JSON destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChromaticArgs {
    pub kind: Kind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Mode::Biclique)]
    pub mode: Mode,
    #[arg(long)]
    pub emit_colouring: Option<PathBuf>,
    /// Also write the graph, so the pair can be fed to `verify`.
    #[arg(long)]
    pub emit_graph: Option<PathBuf>,
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Re-check the colouring by subset scan and the value by exact search.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    pub colouring: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Biclique)]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct BicliquesArgs {
    #[arg(long, conflicts_with_all = ["kind", "n", "k"])]
    pub graph: Option<PathBuf>,
    #[arg(long, requires_all = ["n", "k"])]
    pub kind: Option<Kind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Biclique)]
    pub mode: Mode,
    /// Use the power-graph characterization instead of the subset scan.
    #[arg(long)]
    pub closed_form: bool,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub cnf: PathBuf,
    /// Output prefix; writes PREFIX.instance.json and PREFIX.normalized.cnf.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write PREFIX.report.json; exits 1 if any check fails.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub kind: Kind,
    /// Inclusive range `LO..HI` or a single value.
    #[arg(long, value_parser = parse_range)]
    pub k: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Biclique)]
    pub mode: Mode,
    /// Write graph and colouring files for every grid point here.
    #[arg(long)]
    pub emit_dir: Option<PathBuf>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `LO..HI` (inclusive) or `N`.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad bound {t:?}: {e}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A verification was negative (exit code 1).
    Rejected,
}

/// 2 for input, parse, domain, contract and I/O errors; 3 for capacity.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } => 3,
        _ => 2,
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Chromatic(a) => cmd_chromatic(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Bicliques(a) => cmd_bicliques(&a, out),
        Command::Reduce(a) => cmd_reduce(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
    }
}

fn power_graph(kind: Kind, n: usize, k: usize) -> Result<PowerGraph> {
    Ok(match kind {
        Kind::Path => PowerGraph::Path(PowerPathParams::new(n, k)?),
        Kind::Cycle => PowerGraph::Cycle(PowerCycleParams::new(n, k)?),
    })
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string(value).map_err(|e| Error::Internal(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<Outcome> {
    let g = match a.kind {
        GenKind::Circulant => {
            if a.k.is_some() {
                return Err(Error::input("circulant takes --distances, not --k"));
            }
            gen_circulant(a.n, &a.distances)?
        }
        kind => {
            if !a.distances.is_empty() {
                return Err(Error::input("--distances applies to circulant graphs only"));
            }
            let k = a.k.ok_or_else(|| Error::input("--k is required"))?;
            let kind = if kind == GenKind::Path {
                Kind::Path
            } else {
                Kind::Cycle
            };
            power_graph(kind, a.n, k)?.graph()
        }
    };
    if let Some(p) = &a.dot {
        fs::write(p, write_dot(&g, None)?)?;
    }
    match &a.out {
        Some(p) => write_graph(p, &g)?,
        None => writeln!(out, "{}", crate::io::graph_to_json(&g))?,
    }
    Ok(Outcome::Success)
}

pub fn cmd_chromatic(a: &ChromaticArgs, out: &mut dyn Write) -> Result<Outcome> {
    let pg = power_graph(a.kind, a.n, a.k)?;
    let res = chromatic(pg, a.mode)?;
    let g = pg.graph();

    let mut certified = serde_json::Value::Null;
    if a.certify {
        certified = certify_chromatic(&g, a.mode, res.value, &res.colouring)?;
    }
    if let Some(p) = &a.emit_colouring {
        write_colouring(p, &res.colouring)?;
    }
    if let Some(p) = &a.emit_graph {
        write_graph(p, &g)?;
    }
    if let Some(p) = &a.dot {
        fs::write(p, write_dot(&g, Some(&res.colouring))?)?;
    }
    let mut report = json!({
        "kind": a.kind.to_string(),
        "n": a.n,
        "k": a.k,
        "mode": a.mode,
        "value": res.value,
        "certificate": res.certificate.as_ref().map(|c| c.to_string()),
    });
    if a.certify {
        report["certified"] = certified;
    }
    emit(out, &report)?;
    Ok(Outcome::Success)
}

/// Independent re-check of a closed-form answer. The colouring is checked
/// against the subset scan when `n` is within [`ENUMERATION_CAP`] (closed form
/// otherwise) and the value against exact search when `n` is within
/// [`SEARCH_CAP`]. A disagreement is an internal error.
fn certify_chromatic(
    g: &Graph,
    mode: Mode,
    value: usize,
    c: &Colouring,
) -> Result<serde_json::Value> {
    let by_scan = g.n() <= ENUMERATION_CAP;
    let verdict = if by_scan {
        verify_against(&enumerate_hyperedges(g, mode)?, c)
    } else {
        verify_colouring(g, c, mode)?
    };
    if let Verdict::Monochromatic(w) = verdict {
        return Err(Error::Internal(format!(
            "emitted colouring leaves {w} monochromatic"
        )));
    }
    if c.num_colours() != value {
        return Err(Error::Internal(format!(
            "colouring uses {} colours, value is {value}",
            c.num_colours()
        )));
    }
    let exact = if g.n() <= SEARCH_CAP {
        let (best, _) = exact_chromatic(g, mode)?;
        if best != value {
            return Err(Error::Internal(format!(
                "closed form gives {value}, exact search gives {best}"
            )));
        }
        Some(best)
    } else {
        None
    };
    Ok(json!({
        "colouring": if by_scan { "subset-scan" } else { "closed-form" },
        "exact_value": exact,
    }))
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome> {
    let g = read_graph(&a.graph)?;
    let c = read_colouring(&a.colouring)?;
    match verify_colouring(&g, &c, a.mode)? {
        Verdict::Valid => {
            emit(out, &json!({ "valid": true, "mode": a.mode }))?;
            Ok(Outcome::Success)
        }
        Verdict::Monochromatic(w) => {
            emit(
                out,
                &json!({ "valid": false, "mode": a.mode, "witness": w, "colour": c.colour(w.members()[0]) }),
            )?;
            Ok(Outcome::Rejected)
        }
    }
}

pub fn cmd_bicliques(a: &BicliquesArgs, out: &mut dyn Write) -> Result<Outcome> {
    let (g, geometry) = match (&a.graph, a.kind) {
        (Some(p), None) => {
            let g = read_graph(p)?;
            let pg = recognize_power_graph(&g);
            (g, pg)
        }
        (None, Some(kind)) => {
            let (n, k) =
                a.n.zip(a.k)
                    .ok_or_else(|| Error::input("--n and --k are required"))?;
            let pg = power_graph(kind, n, k)?;
            (pg.graph(), Some(pg))
        }
        _ => {
            return Err(Error::input(
                "give either --graph or --kind with --n and --k",
            ))
        }
    };
    let list: Vec<Biclique> = if a.closed_form {
        let pg = geometry
            .ok_or_else(|| Error::input("--closed-form needs a power of a path or of a cycle"))?;
        match a.mode {
            Mode::Biclique => pg.bicliques(),
            Mode::Star => tag(&g, &pg.stars(), Some(&pg)),
        }
    } else {
        match a.mode {
            Mode::Biclique => {
                let mut v = enumerate_maximal_bicliques(&g)?;
                if let Some(pg) = &geometry {
                    v = v
                        .into_iter()
                        .map(|b| Biclique::classify(&g, &b.vertices, Some(pg)).unwrap_or(b))
                        .collect();
                }
                v
            }
            Mode::Star => tag(
                &g,
                &enumerate_hyperedges(&g, Mode::Star)?,
                geometry.as_ref(),
            ),
        }
    };
    emit(out, &list)?;
    Ok(Outcome::Success)
}

fn tag(g: &Graph, sets: &[VertexSet], pg: Option<&PowerGraph>) -> Vec<Biclique> {
    sets.iter()
        .map(|s| Biclique::classify(g, s, pg).expect("stars are complete bipartite"))
        .collect()
}

pub fn cmd_reduce(a: &ReduceArgs, out: &mut dyn Write) -> Result<Outcome> {
    let raw = parse_dimacs(&fs::read_to_string(&a.cnf)?)?;
    let f = normalize(&raw)?;
    let inst = build_instance(&f)?;
    let prefix = a.out.to_string_lossy().into_owned();
    let with_suffix = |s: &str| PathBuf::from(format!("{prefix}.{s}"));
    fs::write(with_suffix("instance.json"), inst.to_json() + "\n")?;
    fs::write(with_suffix("normalized.cnf"), f.to_dimacs())?;

    let mut summary = json!({
        "input_vars": raw.num_vars(),
        "input_clauses": raw.clauses().len(),
        "num_vars": f.num_vars(),
        "num_clauses": f.clauses().len(),
        "num_vertices": inst.graph.n(),
        "v_prime_size": inst.v_prime.len(),
    });
    let mut outcome = Outcome::Success;
    if a.certify {
        let report = certify_reduction(&f)?;
        let text =
            serde_json::to_string_pretty(&report).map_err(|e| Error::Internal(e.to_string()))?;
        fs::write(with_suffix("report.json"), text + "\n")?;
        summary["satisfiable"] = json!(report.satisfiable);
        summary["containment"] = json!(report.containment);
        summary["all_hold"] = json!(report.all_hold());
        if !report.all_hold() {
            outcome = Outcome::Rejected;
        }
    }
    emit(out, &summary)?;
    Ok(outcome)
}

/// One CSV row of a sweep; the colouring is kept for `--emit-dir`.
struct Point {
    n: usize,
    k: usize,
    value: usize,
    certificate: String,
    pg: PowerGraph,
    colouring: Colouring,
}

pub fn sweep_file_stem(kind: Kind, n: usize, k: usize, mode: Mode) -> String {
    format!("{kind}_n{n}_k{k}_{mode}")
}

pub fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<Outcome> {
    if *a.n.start() == 0 || *a.k.start() == 0 {
        return Err(Error::input("sweep ranges must start at 1 or more"));
    }
    let grid: Vec<(usize, usize)> =
        a.k.clone()
            .flat_map(|k| a.n.clone().map(move |n| (n, k)))
            .collect();
    let points = std::thread::scope(|s| {
        let workers = std::thread::available_parallelism()
            .map_or(1, |p| p.get())
            .min(8);
        let chunk = grid.len().div_ceil(workers).max(1);
        let handles: Vec<_> = grid
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|&(n, k)| {
                            let pg = power_graph(a.kind, n, k)?;
                            let r = chromatic(pg, a.mode)?;
                            Ok(Point {
                                n,
                                k,
                                value: r.value,
                                certificate: r
                                    .certificate
                                    .map(|c| c.to_string())
                                    .unwrap_or_default(),
                                pg,
                                colouring: r.colouring,
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect::<Result<Vec<Vec<Point>>>>()
    })?;

    if let Some(dir) = &a.emit_dir {
        fs::create_dir_all(dir)?;
    }
    let mut csv = String::from("n,k,kind,mode,value,certificate\n");
    for p in points.iter().flatten() {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.n, p.k, a.kind, a.mode, p.value, p.certificate
        ));
        if let Some(dir) = &a.emit_dir {
            emit_point(dir, a.kind, a.mode, p)?;
        }
    }
    match &a.out {
        Some(path) => fs::write(path, csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(Outcome::Success)
}

fn emit_point(dir: &Path, kind: Kind, mode: Mode, p: &Point) -> Result<()> {
    let stem = sweep_file_stem(kind, p.n, p.k, mode);
    write_graph(&dir.join(format!("{stem}.graph.json")), &p.pg.graph())?;
    write_colouring(&dir.join(format!("{stem}.colouring.json")), &p.colouring)
}
