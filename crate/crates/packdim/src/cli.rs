//! Command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::apollonian::AP_LEVEL_CAP;
use crate::bounds::{
    bounds_on, build_set, table1, table1_rows, table_csv, BoundResult, BoundsConfig, Kappa, Mode, Variant,
};
use crate::curvature::{read_cache, s_iterate, write_cache, BuildOptions, Depth, Packing, TailMethod, Triple, CACHE_VERSION};
use crate::error::{Error, Result};
use crate::orbit::{fit_exponent, orbit_bfs, write_heights, write_histogram, FitTarget, PowerFit};
use crate::render::{base_circles, orbit_shapes, render_svg, RenderOptions, Viewport};

/// Directory for triple-set caches; unset disables caching.
pub const CACHE_ENV: &str = "PACKDIM_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Bounds,
    Orbit,
    Render,
    Table1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
    Bin,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            "bin" => Ok(Format::Bin),
            _ => Err(Error::Config(format!("unknown format '{s}'"))),
        }
    }
}

fn parse_tail(s: &str) -> Result<TailMethod> {
    match s {
        "enclosure" => Ok(TailMethod::Enclosure),
        "integral" => Ok(TailMethod::Integral),
        _ => Err(Error::Config(format!("unknown tail method '{s}'"))),
    }
}

fn parse_viewport(s: &str) -> Result<[f64; 4]> {
    let bad = || Error::Config(format!("viewport '{s}' is not x0,y0,x1,y1"));
    let v: Vec<f64> = s.split(',').map(|x| x.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
    match v[..] {
        [x0, y0, x1, y1] if x0 < x1 && y0 < y1 => Ok([x0, y0, x1, y1]),
        _ => Err(bad()),
    }
}

/// Everything one invocation needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub packing: Packing,
    /// Expansion levels; `None` runs the Apollonian expansion to a fixpoint.
    pub m: Option<usize>,
    pub kappa: Option<Kappa>,
    pub variant: Variant,
    pub mode: Mode,
    pub tail: TailMethod,
    pub eps_tail: f64,
    pub hmax: Option<i64>,
    pub out_path: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
    pub fit: FitTarget,
    pub bucket: u64,
    pub render: RenderOptions,
    pub symmetries: bool,
    /// Largest `m` included by `table1`.
    pub max_m: usize,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let format = match command {
            Command::Bounds => Format::Json,
            Command::Orbit => Format::Json,
            Command::Render => Format::Svg,
            Command::Table1 => Format::Csv,
        };
        RunConfig {
            command,
            packing: Packing::BoydMallows,
            m: None,
            kappa: None,
            variant: Variant::Improved,
            mode: Mode::Fast,
            tail: TailMethod::Enclosure,
            eps_tail: 1e-10,
            hmax: None,
            out_path: None,
            format,
            threads: None,
            fit: FitTarget::Cumulative,
            bucket: 1024,
            render: RenderOptions::default(),
            symmetries: false,
            max_m: 5,
            cache_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.into()));
        let allowed: &[Format] = match self.command {
            Command::Bounds => &[Format::Json, Format::Csv],
            Command::Orbit => &[Format::Json, Format::Csv, Format::Bin],
            Command::Render => &[Format::Svg],
            Command::Table1 => &[Format::Json, Format::Csv],
        };
        if !allowed.contains(&self.format) {
            return bad(&format!("format {:?} is not available for {:?}", self.format, self.command));
        }
        if self.hmax.is_some() && !matches!(self.command, Command::Orbit | Command::Render) {
            return bad("hmax only applies to orbit and render");
        }
        if matches!(self.command, Command::Orbit | Command::Render) && self.hmax.is_some_and(|h| h < 2) {
            return bad("hmax must be at least 2");
        }
        if self.command == Command::Bounds {
            if self.kappa.is_none() {
                return bad("bounds needs a kappa");
            }
            if self.packing == Packing::BoydMallows && self.m.is_none() {
                return bad("bounds for bm needs m");
            }
        }
        if self.kappa.is_some() && self.command != Command::Bounds {
            return bad("kappa only applies to bounds");
        }
        if !(self.eps_tail > 0.0) {
            return bad("eps_tail must be positive");
        }
        if self.threads == Some(0) {
            return bad("threads must be positive");
        }
        if self.render.r_min <= 0.0 {
            return bad("r_min must be positive");
        }
        Ok(())
    }

    fn bounds_config(&self) -> BoundsConfig {
        BoundsConfig { mode: self.mode, tail: self.tail, eps_tail: self.eps_tail, ..Default::default() }
    }
}

/// What a run produced, for the one-line summary.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Bounds(BoundResult),
    Orbit { count: usize, fit: Option<PowerFit> },
    Render { circles: usize },
    Table { rows: usize },
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Bounds(r) => write!(
                f,
                "{} m={} kappa={} {:?}: lambda={:.6} mu={:.6} ({} triples, {:.2}s)",
                r.packing.name(),
                r.m,
                r.kappa,
                r.variant,
                r.lambda,
                r.mu,
                r.set_size,
                r.wall_time_s
            ),
            Outcome::Orbit { count, fit } => match fit {
                Some(p) => write!(f, "orbit: {count} vectors, fit y = {:.6} x^{:.6}", p.a, p.b),
                None => write!(f, "orbit: {count} vectors"),
            },
            Outcome::Render { circles } => write!(f, "render: {circles} shapes"),
            Outcome::Table { rows } => write!(f, "table1: {rows} rows"),
        }
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn cache_path(dir: &Path, packing: Packing, kappa: &Kappa, depth: Depth) -> PathBuf {
    let k: String = kappa.as_str().chars().map(|c| if c.is_ascii_alphanumeric() || c == '.' { c } else { '_' }).collect();
    let d = match depth {
        Depth::Levels(m) => format!("m{m}"),
        Depth::Fixpoint(_) => "fix".to_string(),
    };
    let name = format!("{}-k{}-{}-v{}-{}.bin", packing.name(), k, d, CACHE_VERSION, env!("CARGO_PKG_VERSION"));
    dir.join(name)
}

fn cached_set(dir: &Path, packing: Packing, kappa: &Kappa, depth: Depth, budget: usize) -> Result<crate::curvature::TripleSet<f64>> {
    let path = cache_path(dir, packing, kappa, depth);
    if !path.exists() {
        std::fs::create_dir_all(dir)?;
        let root = Triple::<f64>::from_ints(0, 1, 1)?;
        let opts = BuildOptions { budget, track_weights: true };
        let set = s_iterate(packing, &kappa.to_scalar::<f64>(), &root, depth, opts)?;
        write_cache(&path, &set, kappa.as_str())?;
    }
    let (header, set) = read_cache(&path)?;
    if header.packing != packing || header.kappa != kappa.as_str() {
        return Err(Error::Cache(format!("{} does not match the request", path.display())));
    }
    Ok(set)
}

fn run_bounds(cfg: &RunConfig) -> Result<Outcome> {
    let kappa = cfg.kappa.as_ref().expect("validated");
    let depth = match cfg.m {
        Some(m) => Depth::Levels(m),
        None => Depth::Fixpoint(AP_LEVEL_CAP),
    };
    let bc = cfg.bounds_config();
    let start = std::time::Instant::now();
    let set = match &cfg.cache_dir {
        Some(dir) => cached_set(dir, cfg.packing, kappa, depth, bc.budget)?,
        None => build_set::<f64>(cfg.packing, kappa, depth, bc.budget)?,
    };
    let iset = match cfg.mode {
        Mode::Rigorous => Some(build_set(cfg.packing, kappa, depth, bc.budget)?),
        Mode::Fast => None,
    };
    let mut r = bounds_on(&set, iset.as_ref(), kappa, &[cfg.variant], &bc)?.remove(0);
    r.wall_time_s = start.elapsed().as_secs_f64();
    let mut w = sink(cfg.out_path.as_deref())?;
    match cfg.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &r)?;
            writeln!(w)?;
        }
        _ => {
            let mut c = csv::Writer::from_writer(&mut w);
            c.serialize(&r)?;
            c.flush()?;
        }
    }
    w.flush()?;
    Ok(Outcome::Bounds(r))
}

#[derive(Serialize)]
struct OrbitSummary {
    hmax: i64,
    count: usize,
    fit_target: &'static str,
    a: f64,
    b: f64,
}

fn run_orbit(cfg: &RunConfig) -> Result<Outcome> {
    let hmax = cfg.hmax.unwrap_or(1 << 19);
    let orbit = orbit_bfs(hmax)?;
    let heights = orbit.heights();
    let fit = fit_exponent(&heights, cfg.fit).ok();
    let mut w = sink(cfg.out_path.as_deref())?;
    match cfg.format {
        Format::Bin => {
            let path = cfg.out_path.as_deref().ok_or_else(|| Error::Config("bin output needs an out path".into()))?;
            drop(w);
            write_heights(path, &heights)?;
        }
        Format::Csv => {
            write_histogram(&mut w, &heights, cfg.bucket)?;
            w.flush()?;
        }
        _ => {
            let f = fit.ok_or(Error::DegenerateData)?;
            let s = OrbitSummary {
                hmax,
                count: orbit.count(),
                fit_target: match cfg.fit {
                    FitTarget::Cumulative => "cumulative",
                    FitTarget::Rank => "rank",
                },
                a: f.a,
                b: f.b,
            };
            serde_json::to_writer_pretty(&mut w, &s)?;
            writeln!(w)?;
            w.flush()?;
        }
    }
    Ok(Outcome::Orbit { count: orbit.count(), fit })
}

fn run_render(cfg: &RunConfig) -> Result<Outcome> {
    let shapes = orbit_shapes(cfg.hmax.unwrap_or(1 << 8), &base_circles(), cfg.symmetries)?;
    let svg = render_svg(&shapes, &cfg.render);
    let mut w = sink(cfg.out_path.as_deref())?;
    w.write_all(svg.as_bytes())?;
    w.flush()?;
    Ok(Outcome::Render { circles: shapes.len() })
}

fn run_table(cfg: &RunConfig) -> Result<Outcome> {
    let rows: Vec<_> = table1_rows().into_iter().filter(|(m, _, _)| *m <= cfg.max_m).collect();
    let table = table1(&rows, &cfg.bounds_config())?;
    let mut w = sink(cfg.out_path.as_deref())?;
    match cfg.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &table)?;
            writeln!(w)?;
        }
        _ => table_csv(&table, &mut w)?,
    }
    w.flush()?;
    Ok(Outcome::Table { rows: table.len() })
}

/// Validates and executes one command.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let job = || match cfg.command {
        Command::Bounds => run_bounds(cfg),
        Command::Orbit => run_orbit(cfg),
        Command::Render => run_render(cfg),
        Command::Table1 => run_table(cfg),
    };
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(job),
        None => job(),
    }
}

#[derive(Parser, Debug)]
#[command(name = "packdim", version, about = "Dimension bounds, orbit counts and pictures for circle packings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// λ and μ for one (m, κ).
    Bounds(BoundsArgs),
    /// Orbit count and exponent fit.
    Orbit(OrbitArgs),
    /// SVG picture of the packing.
    Render(RenderArgs),
    /// The bounds table.
    Table1(TableArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// fast or rigorous.
    #[arg(long, default_value = "fast")]
    pub mode: Mode,
    /// enclosure or integral.
    #[arg(long, default_value = "enclosure", value_parser = parse_tail)]
    pub tail: TailMethod,
    #[arg(long, default_value_t = 1e-10)]
    pub eps_tail: f64,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// bm or apollonian.
    #[arg(long, default_value = "bm")]
    pub packing: Packing,
    /// Levels of expansion; omit for an Apollonian fixpoint run.
    #[arg(long)]
    pub m: Option<usize>,
    /// Decimal, `b0` or `b0^k`.
    #[arg(long)]
    pub kappa: Kappa,
    /// improved or basic.
    #[arg(long, default_value = "improved")]
    pub variant: Variant,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// json or csv.
    #[arg(long, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    /// Cutoff on the primitive height.
    #[arg(long, default_value_t = 1 << 19)]
    pub hmax: i64,
    /// json (summary), csv (cumulative histogram) or bin (sorted heights).
    #[arg(long, default_value = "json")]
    pub format: Format,
    /// cumulative or rank.
    #[arg(long, default_value = "cumulative")]
    pub fit: FitTarget,
    /// Histogram bucket width.
    #[arg(long, default_value_t = 1024)]
    pub bucket: u64,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long, default_value_t = 1 << 8)]
    pub hmax: i64,
    #[arg(long, default_value_t = 1e-3)]
    pub r_min: f64,
    /// Print rounded curvatures inside the circles.
    #[arg(long)]
    pub labels: bool,
    /// Draw the generating mirrors dotted.
    #[arg(long)]
    pub symmetries: bool,
    /// `x0,y0,x1,y1` in plane coordinates.
    #[arg(long, default_value = "-0.6,-0.1,2,1.1", value_parser = parse_viewport, allow_hyphen_values = true)]
    pub viewport: [f64; 4],
    #[arg(long, default_value_t = 1200.0)]
    pub width: f64,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Include rows up to this m.
    #[arg(long, default_value_t = 5)]
    pub max_m: usize,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    pub format: Format,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let solve = |cfg: &mut RunConfig, s: &SolveArgs| {
            cfg.mode = s.mode;
            cfg.tail = s.tail;
            cfg.eps_tail = s.eps_tail;
        };
        let mut cfg = match self.command {
            Sub::Bounds(a) => {
                let mut c = RunConfig::new(Command::Bounds);
                c.packing = a.packing;
                c.m = a.m;
                c.kappa = Some(a.kappa);
                c.variant = a.variant;
                c.format = a.format;
                solve(&mut c, &a.solve);
                c
            }
            Sub::Orbit(a) => {
                let mut c = RunConfig::new(Command::Orbit);
                c.hmax = Some(a.hmax);
                c.format = a.format;
                c.fit = a.fit;
                c.bucket = a.bucket;
                c
            }
            Sub::Render(a) => {
                let mut c = RunConfig::new(Command::Render);
                c.hmax = Some(a.hmax);
                c.symmetries = a.symmetries;
                c.render = RenderOptions {
                    viewport: Viewport { x0: a.viewport[0], y0: a.viewport[1], x1: a.viewport[2], y1: a.viewport[3], width_px: a.width },
                    r_min: a.r_min,
                    labels: a.labels,
                };
                c
            }
            Sub::Table1(a) => {
                let mut c = RunConfig::new(Command::Table1);
                c.max_m = a.max_m;
                c.format = a.format;
                solve(&mut c, &a.solve);
                c
            }
        };
        cfg.threads = self.threads;
        cfg.out_path = self.out;
        cfg.cache_dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
        cfg
    }
}

/// Machine-readable error record.
#[derive(Serialize)]
pub struct ErrorRecord {
    pub error: String,
    pub message: String,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        let dbg = format!("{e:?}");
        let kind = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        ErrorRecord { error: kind, message: e.to_string() }
    }
}
