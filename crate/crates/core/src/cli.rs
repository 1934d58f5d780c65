//! Command-line front end.
//!
//! Exit codes: 0 success, 1 target not met, 2 usage or input error,
//! 3 numeric certification failure (precision cap reached).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{self, BoundRecord, Setting};
use crate::diagram::WiringDiagram;
use crate::faces::{count_triangles, partial_report};
use crate::geometry::{self, GeometryError, LineArrangement, Seed, DEFAULT_PRECISION};
use crate::render::{render_arrangement, render_diagram, RenderOptions};
use crate::search::{depth_first_search, SearchConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_TARGET_NOT_MET: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

/// Default working precision in bits for constructions.
pub const PRECISION_ENV: &str = "TRIMAX_PRECISION";

#[derive(Debug, Parser)]
#[command(
    name = "trimax",
    version,
    about = "Triangles in line and pseudo-line arrangements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search wiring diagrams for many triangles.
    Search(SearchArgs),
    /// Count triangles and segment usage of a diagram or arrangement file.
    Count(CountArgs),
    /// Print upper bounds and known values.
    Bounds(BoundsArgs),
    /// Build a seed arrangement and double it repeatedly.
    Duplicate(DuplicateArgs),
    /// Draw a diagram or arrangement file as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    /// Stop at the first diagram with this many triangles.
    #[arg(long)]
    pub target: Option<usize>,
    /// Maximum number of unused bounded segments.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Search for the true maximum instead of stopping at the target.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Turn off the budget rules.
    #[arg(long)]
    pub no_prune: bool,
    /// Write the witness here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, conflicts_with = "range", required_unless_present = "range")]
    pub n: Option<u64>,
    /// Inclusive range `a..b`.
    #[arg(long)]
    pub range: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DuplicateArgs {
    /// `hex7` or `simmons15`.
    #[arg(long)]
    pub seed: String,
    #[arg(long, default_value_t = 1)]
    pub iterations: u32,
    /// Offset of the two near-axis anchors, e.g. `0.001` or `1/1000`.
    #[arg(long)]
    pub eps: Option<String>,
    /// Starting precision in bits; defaults to $TRIMAX_PRECISION or 256.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Arrangement file to write.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Wiring diagram file to write; defaults to the arrangement path with
    /// extension `wd`.
    #[arg(long)]
    pub wiring: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Shade triangles (diagrams only).
    #[arg(long)]
    pub highlight: bool,
    #[arg(long, default_value_t = 800)]
    pub width: u32,
    #[arg(long, default_value_t = 400)]
    pub height: u32,
    #[arg(long, default_value_t = 20)]
    pub margin: u32,
    #[arg(long)]
    pub no_labels: bool,
}

/// Error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        let code = match e {
            GeometryError::PrecisionInsufficient { .. } | GeometryError::CertificationFailed(_) => {
                EXIT_PRECISION
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

// Like `println!`, but a closed stdout (e.g. `| head`) is not an error.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn print_json(value: &impl Serialize) {
    out!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

enum Input {
    Diagram(WiringDiagram),
    Arrangement(LineArrangement),
}

fn is_arrangement(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("lines"))
}

fn load(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    if is_arrangement(&text) {
        LineArrangement::parse(&text)
            .map(Input::Arrangement)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    } else {
        WiringDiagram::parse(&text)
            .map(Input::Diagram)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

fn search(a: SearchArgs) -> Outcome {
    let mut cfg = SearchConfig::new(a.n).with_threads(a.threads);
    if let Some(t) = a.target {
        cfg = cfg.with_target(t);
    }
    if let Some(b) = a.budget {
        cfg = cfg.with_budget(b);
    }
    if a.exhaustive {
        cfg = cfg.exhaustive();
    }
    if a.no_prune {
        cfg = cfg.without_pruning();
    }
    let r = depth_first_search(&cfg).map_err(|e| Failure::usage(e.to_string()))?;
    if let (Some(path), Some(w)) = (&a.out, &r.witness) {
        write(path, &w.to_text())?;
    }
    let secs = r.elapsed.as_secs_f64();
    if a.json {
        print_json(&json!({
            "n": a.n,
            "best": r.best_count,
            "nodes": r.nodes_visited,
            "complete": r.complete,
            "seconds": secs,
            "witness": r.witness.as_ref().map(|w| w.columns()),
        }));
    } else {
        out!(
            "best={} nodes={} time={secs:.3}s complete={}",
            r.best_count,
            r.nodes_visited,
            r.complete
        );
    }
    if r.target_met(a.target) {
        Ok(EXIT_OK)
    } else {
        eprintln!("no diagram with {} triangles", a.target.unwrap_or(0));
        Ok(EXIT_TARGET_NOT_MET)
    }
}

fn count_diagram(d: &WiringDiagram, json: bool) {
    if !d.is_complete() {
        let p = partial_report(d);
        if json {
            print_json(&json!({
                "n": d.n(),
                "complete": false,
                "closed_triangles": p.closed_triangles,
                "provably_unused": p.provably_unused,
            }));
        } else {
            out!(
                "incomplete closed_triangles={} provably_unused={}",
                p.closed_triangles,
                p.provably_unused
            );
        }
        return;
    }
    let r = count_triangles(d);
    if json {
        print_json(&json!({
            "n": d.n(),
            "complete": true,
            "triangles": r.triangle_count,
            "used": r.used.len(),
            "unused": r.unused.len(),
            "wire_contact": r.wire_contact,
        }));
    } else {
        out!(
            "triangles={} used={} unused={}",
            r.triangle_count,
            r.used.len(),
            r.unused.len()
        );
        let contact: Vec<String> = r.wire_contact.iter().map(|c| c.to_string()).collect();
        out!("contact={}", contact.join(","));
    }
}

fn count(a: CountArgs) -> Outcome {
    match load(&a.input)? {
        Input::Diagram(d) => count_diagram(&d, a.json),
        Input::Arrangement(arr) => {
            let w = arr.certified_wiring()?;
            count_diagram(&w.diagram, a.json);
        }
    }
    Ok(EXIT_OK)
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::usage(format!("bad range {s:?}, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn show(v: Option<u64>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

fn known(r: &BoundRecord) -> String {
    match (r.known_lower, r.known_upper) {
        (Some(l), Some(u)) if l == u => l.to_string(),
        (l, u) => format!("{}-{}", show(l), show(u)),
    }
}

fn bounds_cmd(a: BoundsArgs) -> Outcome {
    let (lo, hi) = match (&a.range, a.n) {
        (Some(r), _) => parse_range(r)?,
        (None, Some(n)) => (n, n),
        (None, None) => return Err(Failure::usage("give --n or --range")),
    };
    let mut rows = Vec::new();
    for n in lo..=hi {
        match bounds::known_values(n) {
            Ok(records) => {
                for r in records {
                    if !a.json {
                        out!(
                            "n={} {:?} {:?} formula={} known={}",
                            n,
                            r.setting,
                            r.kind,
                            r.formula_upper,
                            known(&r)
                        );
                    }
                    rows.push(serde_json::to_value(r).expect("serializable"));
                }
            }
            Err(_) => {
                for setting in [Setting::Affine, Setting::Projective] {
                    let f = bounds::formula_upper(n, setting)
                        .map_err(|e| Failure::usage(e.to_string()))?;
                    if !a.json {
                        out!("n={n} {setting:?} formula={f}");
                    }
                    rows.push(json!({"n": n, "setting": setting, "formula_upper": f}));
                }
            }
        }
    }
    if a.json {
        print_json(&rows);
    }
    Ok(EXIT_OK)
}

fn precision_default() -> Result<u32, Failure> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{PRECISION_ENV}={v:?} is not a bit count"))),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

fn duplicate_cmd(a: DuplicateArgs) -> Outcome {
    let seed: Seed = a.seed.parse()?;
    let eps = match &a.eps {
        Some(s) => match geometry::parse_scalar(s) {
            Some(geometry::Scalar::Exact(r)) => Some(r),
            _ => return Err(Failure::usage(format!("bad eps {s:?}"))),
        },
        None => None,
    };
    let precision = match a.precision {
        Some(p) => p,
        None => precision_default()?,
    };
    if precision < 2 {
        return Err(Failure::usage("precision must be at least 2 bits"));
    }
    let (arr, rounds) = geometry::iterate_duplication(seed, a.iterations, eps, precision)?;
    if let Some(out) = &a.out {
        write(out, &arr.to_text()?)?;
        let wiring_path = a.wiring.clone().unwrap_or_else(|| out.with_extension("wd"));
        let w = arr.certified_wiring()?;
        write(&wiring_path, &w.diagram.to_text())?;
    }
    if a.json {
        let rows: Vec<_> = rounds
            .iter()
            .map(|r| json!({"round": r.round, "n": r.lines, "triangles": r.triangles, "precision": r.precision}))
            .collect();
        print_json(&rows);
    } else {
        for r in &rounds {
            out!(
                "round={} n={} triangles={} precision={}",
                r.round,
                r.lines,
                r.triangles,
                r.precision
            );
        }
    }
    Ok(EXIT_OK)
}

fn render_cmd(a: RenderArgs) -> Outcome {
    let opts = RenderOptions {
        width: a.width,
        height: a.height,
        margin: a.margin,
        label_wires: !a.no_labels,
        highlight_triangles: a.highlight,
    };
    opts.validate().map_err(Failure::usage)?;
    let svg = match load(&a.input)? {
        Input::Diagram(d) => render_diagram(&d, &opts),
        Input::Arrangement(arr) => render_arrangement(&arr, &opts)?,
    };
    write(&a.out, &svg)?;
    Ok(EXIT_OK)
}

pub fn execute(cli: Cli) -> Outcome {
    match cli.command {
        Command::Search(a) => search(a),
        Command::Count(a) => count(a),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Duplicate(a) => duplicate_cmd(a),
        Command::Render(a) => render_cmd(a),
    }
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let code = match execute(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    let _ = std::io::stdout().flush();
    code
}
