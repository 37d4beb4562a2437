//! Command-line front end. Every subcommand reads a map (a JSON file or a
//! catalogued fixture name), runs one library operation and prints a
//! deterministic result. Exit status: 0 on success, 1 on a domain error
//! (reported as a JSON object `{"kind", "message"}` on stderr), 2 on a usage
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::combmap::Multiloop;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::io::{parse_pins, CanonicalMap, GraphFile, MapFile};
use crate::mobidisc::{mobidisc_formula, mobidisc_set, solve_hitting, HittingMode, MobidiscFormula};
use crate::pinning::{
    enumerate_minimal_pinning_sets, is_pinning, minimal_pinning_from, pinning_number_exact, semilattice, PinningReport,
    SemiLattice,
};
use crate::presentation::self_intersection;
use crate::reducer::{vc_to_loop, PlaneGraph};
use crate::regionset::RegionSet;

/// Version tag written into run manifests.
pub const MANIFEST_FORMAT: &str = "pinloop-run/1";

#[derive(Debug, Parser)]
#[command(name = "pinloop", version, about = "Pinning sets and mobidisc formulas of multiloops")]
pub struct Cli {
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write a JSON manifest of this run to the given path.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct MapArg {
    /// A combinatorial map JSON file, or the name of a catalogued fixture.
    #[arg(long)]
    pub map: String,
}

#[derive(Debug, Args, Serialize)]
pub struct BudgetArg {
    /// Largest region count accepted by the exhaustive searches.
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
pub enum Command {
    /// Validate a map and print its counts.
    Validate(MapArg),
    /// Print the canonical map with its region table.
    Regions(MapArg),
    /// Self-intersection number in the sphere punctured at the pins.
    Si {
        #[command(flatten)]
        #[serde(flatten)]
        map: MapArg,
        /// Comma-separated region labels or indices.
        #[arg(long, default_value = "")]
        pins: String,
    },
    /// Whether the pins form a pinning set.
    PinCheck {
        #[command(flatten)]
        #[serde(flatten)]
        map: MapArg,
        #[arg(long, default_value = "")]
        pins: String,
    },
    /// Greedy minimal pinning subset of the pins (all regions by default).
    PinMin {
        #[command(flatten)]
        #[serde(flatten)]
        map: MapArg,
        #[arg(long)]
        pins: Option<String>,
        /// Regions to try removing first, comma-separated.
        #[arg(long, default_value = "")]
        order: String,
    },
    /// The pinning number.
    PinNumber {
        #[command(flatten)]
        #[serde(flatten)]
        map: MapArg,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArg,
    },
    /// Optimal, minimal and forced pinning sets; optionally the semi-lattice as DOT.
    PinIdeal {
        #[command(flatten)]
        #[serde(flatten)]
        map: MapArg,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Every proper mobidisc of a loop, as lists of region names.
    Mobidiscs(MapArg),
    /// The pruned mobidisc formula in DIMACS form (`-` or no path: stdout).
    Cnf {
        #[command(flatten)]
        #[serde(flatten)]
        map: MapArg,
        #[arg(long)]
        dimacs: Option<String>,
    },
    /// Hitting sets of a DIMACS positive formula.
    Solve {
        #[arg(long)]
        dimacs: String,
        /// Enumerate every minimal solution instead of one minimum.
        #[arg(long)]
        all_minimal: bool,
    },
    /// The pinning semi-lattice as a DOT digraph.
    Semilattice {
        #[command(flatten)]
        #[serde(flatten)]
        map: MapArg,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build the loop of a plane graph from the vertex cover reduction.
    ReduceVc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A record of one invocation, enough to repeat it.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub format: &'static str,
    pub command: &'a Command,
    pub jobs: Option<usize>,
    /// Reserved: every algorithm is exact and deterministic.
    pub seed: u64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "kind": e.kind(), "message": e.to_string() }));
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest { format: MANIFEST_FORMAT, command: &cli.command, jobs: cli.jobs, seed: 0 };
        write_file(path, &pretty(&manifest)?)?;
    }
    match cli.jobs {
        Some(n) => {
            let pool =
                rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().map_err(|e| Error::Io(e.to_string()))?;
            let mut buffer = Vec::new();
            pool.install(|| dispatch(&cli.command, &mut buffer))?;
            emit(out, &String::from_utf8_lossy(&buffer))
        }
        None => dispatch(&cli.command, out),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn pretty<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Error::Parse(e.to_string()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
}

/// A map given as a path, or as a fixture name (`fig8`, `worked16.json`
/// and `loop_9_1_5.json` are accepted spellings of catalogued fixtures).
pub fn load_map(spec: &str) -> Result<Multiloop> {
    let path = Path::new(spec);
    if path.is_file() {
        return MapFile::parse(&read_file(path)?)?.to_multiloop();
    }
    let stem = spec.strip_suffix(".json").unwrap_or(spec);
    let stem = stem.strip_prefix("loop_").unwrap_or(stem);
    let name = match stem {
        "fig8" | "figure8" | "figure_eight" => "figure-eight",
        "milnor" | "milnor_doodle" => "milnor-doodle",
        "weak_bigon" => "weak-bigon",
        other => other,
    };
    if fixtures::CATALOG.iter().any(|e| e.name == name) {
        return fixtures::fixture(name);
    }
    Err(Error::Io(format!("{spec}: no such file or fixture")))
}

fn parse_order(m: &Multiloop, text: &str) -> Result<Vec<usize>> {
    let map = m.map();
    let mut order = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let set = parse_pins(map, item)?;
        order.extend(set.iter());
    }
    Ok(order)
}

fn names(m: &Multiloop, s: &RegionSet) -> Vec<String> {
    s.iter().map(|r| m.map().region_name(r)).collect()
}

fn named_report(m: &Multiloop, r: &PinningReport) -> serde_json::Value {
    let list = |sets: &[RegionSet]| sets.iter().map(|s| names(m, s)).collect::<Vec<_>>();
    json!({
        "pinning_number": r.pinning_number,
        "optimal_sets": list(&r.optimal_sets),
        "minimal_sets": list(&r.minimal_sets),
        "forced_regions": names(m, &r.forced_regions),
    })
}

fn lattice_dot(m: &Multiloop, lattice: &SemiLattice) -> String {
    lattice.to_dot(|r| m.map().region_name(r))
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Validate(a) => {
            let m = load_map(&a.map)?;
            let map = m.map();
            let summary = json!({
                "valid": true,
                "vertices": map.n_vertices(),
                "edges": map.n_edges(),
                "regions": map.n_regions(),
                "strands": m.n_strands(),
                "chi": map.euler_characteristic(),
                "genus": map.genus()?,
                "degrees": m.region_degrees(),
            });
            emit(out, &pretty(&summary)?)
        }
        Command::Regions(a) => {
            let m = load_map(&a.map)?;
            emit(out, &pretty(&CanonicalMap::of(&m)?)?)
        }
        Command::Si { map, pins } => {
            let m = load_map(&map.map)?;
            let p = parse_pins(m.map(), pins)?;
            emit(out, &format!("{}\n", self_intersection(&m, &p)?))
        }
        Command::PinCheck { map, pins } => {
            let m = load_map(&map.map)?;
            let p = parse_pins(m.map(), pins)?;
            emit(out, &format!("{}\n", is_pinning(&m, &p)?))
        }
        Command::PinMin { map, pins, order } => {
            let m = load_map(&map.map)?;
            let start = match pins {
                Some(p) => parse_pins(m.map(), p)?,
                None => m.all_regions(),
            };
            let order = parse_order(&m, order)?;
            let s = minimal_pinning_from(&m, &start, &order)?;
            emit(out, &format!("{}\n", serde_json::to_string(&names(&m, &s)).expect("strings serialize")))
        }
        Command::PinNumber { map, budget } => {
            let m = load_map(&map.map)?;
            emit(out, &format!("{}\n", pinning_number_exact(&m, budget.budget)?.pinning_number))
        }
        Command::PinIdeal { map, budget, dot } => {
            let m = load_map(&map.map)?;
            let minimal = enumerate_minimal_pinning_sets(&m, budget.budget)?;
            let report = PinningReport::from_minimal(m.n_regions(), minimal.clone());
            if let Some(path) = dot {
                let lattice = SemiLattice::from_minimal(m.n_regions(), &minimal);
                write_file(path, &lattice_dot(&m, &lattice))?;
            }
            emit(out, &pretty(&named_report(&m, &report))?)
        }
        Command::Mobidiscs(a) => {
            let m = load_map(&a.map)?;
            let sets: Vec<Vec<String>> = mobidisc_set(&m)?.iter().map(|s| names(&m, s)).collect();
            emit(out, &pretty(&sets)?)
        }
        Command::Cnf { map, dimacs } => {
            let m = load_map(&map.map)?;
            let f = mobidisc_formula(&m)?;
            let text = f.to_dimacs(|r| m.map().region_name(r));
            match dimacs.as_deref() {
                None | Some("-") => emit(out, &text),
                Some(path) => write_file(Path::new(path), &text),
            }
        }
        Command::Solve { dimacs, all_minimal } => {
            let text = if dimacs == "-" {
                let mut s = String::new();
                std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::Io(e.to_string()))?;
                s
            } else {
                read_file(Path::new(dimacs))?
            };
            let f = MobidiscFormula::from_dimacs(&text)?;
            let mode = if *all_minimal { HittingMode::AllMinimal } else { HittingMode::Minimum };
            let report = solve_hitting(&f, mode);
            let names = dimacs_names(&text, f.variables);
            let list = |s: &RegionSet| s.iter().map(|r| names[r].clone()).collect::<Vec<_>>();
            let value = json!({
                "pinning_number": report.pinning_number,
                "optimal_sets": report.optimal_sets.iter().map(list).collect::<Vec<_>>(),
                "minimal_sets": report.minimal_sets.iter().map(list).collect::<Vec<_>>(),
                "forced_regions": list(&report.forced_regions),
            });
            emit(out, &pretty(&value)?)
        }
        Command::Semilattice { map, budget, dot } => {
            let m = load_map(&map.map)?;
            let text = lattice_dot(&m, &semilattice(&m, budget.budget)?);
            match dot {
                Some(path) => write_file(path, &text),
                None => emit(out, &text),
            }
        }
        Command::ReduceVc { graph, out: path } => {
            let g = PlaneGraph::from_file(&GraphFile::parse(&read_file(graph)?)?)?;
            let red = vc_to_loop(&g)?;
            let m = &red.multiloop;
            let file = MapFile::from_multiloop(m);
            let document = json!({
                "sigma": file.sigma,
                "orientation": file.orientation,
                "labels": file.labels,
                "correspondence": red.correspondence,
                "forced_pins": red.forced_pins,
                "edge_bigons": red.edge_bigons,
                "epsilon": red.epsilon.to_string(),
            });
            write_file(path, &pretty(&document)?)?;
            let summary = json!({
                "double_points": m.n_double_points(),
                "regions": m.n_regions(),
                "edges": g.edges().len(),
                "forced_pins": red.forced_pins.len(),
                "correspondence": red
                    .correspondence
                    .iter()
                    .enumerate()
                    .map(|(v, r)| json!({ "vertex": v, "region": r }))
                    .collect::<Vec<_>>(),
            });
            emit(out, &pretty(&summary)?)
        }
    }
}

/// Variable names from `c <index> <name>` comments, defaulting to the
/// 0-based region index.
fn dimacs_names(text: &str, variables: usize) -> Vec<String> {
    let mut names: Vec<String> = (0..variables).map(|r| r.to_string()).collect();
    for line in text.lines() {
        let mut it = line.split_whitespace();
        if it.next() != Some("c") {
            continue;
        }
        if let (Some(i), Some(name)) = (it.next().and_then(|i| i.parse::<usize>().ok()), it.next()) {
            if (1..=variables).contains(&i) {
                names[i - 1] = name.to_string();
            }
        }
    }
    names
}
