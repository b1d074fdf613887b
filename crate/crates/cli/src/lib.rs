//! Command-line front end. [`run`] takes the argument list and output
//! streams so the binary and the tests drive the same code.
//!
//! Exit codes: 0 on success, 1 for parse, validation or I/O failures, 2 for
//! usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use polysphere_core::codec::{self, CodecError, Coords};
use polysphere_core::render::{self, RenderOptions};
use polysphere_core::verify::{self, CheckConfig, EXACT_TOL};
use polysphere_core::{
    phi_forward, phi_inverse, phi_inverse_cartesian, plan, validate_plan, ModuliSpec, PlanMode,
    DEFAULT_TOL,
};

#[derive(Debug, Parser)]
#[command(
    name = "polysphere",
    version,
    about = "Map planar (1^(n-1), r)-polygons to the sphere and back, and plan morphs between them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polygon JSON to coordinates JSON (suspension and Cartesian).
    Map(IoArgs),
    /// Coordinates JSON (`t` or `x`) to polygon JSON.
    Unmap(IoArgs),
    /// Mirror a polygon across the x-axis.
    Reflect(IoArgs),
    /// Geodesic morph between two polygons.
    Plan(PlanArgs),
    /// Polygons pulled back from uniform sphere samples.
    Sample(SampleArgs),
    /// Randomized property sweep; prints a JSON summary.
    Check(SampleArgs),
    /// Draw a polygon or every frame of a plan as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct IoArgs {
    /// Input file, or `-` for stdin.
    #[arg(default_value = "-")]
    pub input: PathBuf,
    /// Absolute distance tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    /// Start polygon file.
    pub from: PathBuf,
    /// Goal polygon file.
    pub to: PathBuf,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    pub steps: u32,
    #[arg(long, default_value = "oriented")]
    pub mode: PlanMode,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Directory for one SVG per frame.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Draw construction overlays in the SVG frames.
    #[arg(long)]
    pub overlay: bool,
    /// Also write the trajectory as CSV, one row per frame.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Polygon or plan file, or `-` for stdin.
    #[arg(default_value = "-")]
    pub input: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long)]
    pub overlay: bool,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("{0}")]
    Failed(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err(path))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err(path))
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn spec_of(n: usize, r: f64) -> Result<ModuliSpec, CliError> {
    ModuliSpec::new(n, r).map_err(failed)
}

/// Executes one parsed command, writing its result to `out`.
pub fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let text = match cmd {
        Command::Map(a) => {
            let tol = a.tol.unwrap_or(DEFAULT_TOL);
            let p = codec::decode_valid_polygon(&read_input(&a.input)?, tol)?;
            let s = phi_forward(&p, tol).map_err(failed)?;
            codec::encode_coords(p.spec(), &s)
        }
        Command::Unmap(a) => {
            let tol = a.tol.unwrap_or(DEFAULT_TOL);
            let doc = codec::decode_coords(&read_input(&a.input)?)?;
            let spec = doc.spec()?;
            let p = match doc.to_coords(tol)? {
                Coords::Suspension(s) => phi_inverse(spec, &s, tol),
                Coords::Cartesian(v) => phi_inverse_cartesian(spec, &v, tol),
            }
            .map_err(failed)?;
            codec::encode_polygon(&p)
        }
        Command::Reflect(a) => {
            let tol = a.tol.unwrap_or(DEFAULT_TOL);
            let p = codec::decode_valid_polygon(&read_input(&a.input)?, tol)?;
            codec::encode_polygon(&p.reflect())
        }
        Command::Plan(a) => {
            let tol = a.tol.unwrap_or(DEFAULT_TOL);
            let p = codec::decode_valid_polygon(&read_input(&a.from)?, tol)?;
            let q = codec::decode_valid_polygon(&read_input(&a.to)?, tol)?;
            let path = plan(p.spec(), &p, &q, a.steps as usize, a.mode, tol).map_err(failed)?;
            if let Some(csv_path) = &a.csv {
                let csv = codec::plan_to_csv(&path)?;
                fs::write(csv_path, csv).map_err(io_err(csv_path))?;
            }
            if let Some(dir) = &a.out {
                let opts = RenderOptions {
                    overlays: a.overlay,
                    tol,
                    ..RenderOptions::default()
                };
                render::write_svgs(dir, "frame", &render::render_plan(&path, &opts))
                    .map_err(io_err(dir))?;
            }
            codec::encode_plan(&path)
        }
        Command::Sample(a) => {
            let spec = spec_of(a.n, a.r)?;
            let tol = a.tol.unwrap_or(EXACT_TOL);
            let ps = verify::sample_polygons(spec, a.seed, a.count, tol).map_err(failed)?;
            codec::encode_polygons(&ps)
        }
        Command::Check(a) => {
            let cfg = CheckConfig {
                spec: spec_of(a.n, a.r)?,
                count: a.count,
                seed: a.seed,
                tol: a.tol.unwrap_or(EXACT_TOL),
            };
            let summary = verify::run_check(&cfg);
            let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
            if !summary.passed {
                writeln!(out, "{text}").map_err(io_err(Path::new("stdout")))?;
                return Err(CliError::Failed("property check failed".to_string()));
            }
            text
        }
        Command::Render(a) => {
            let tol = a.tol.unwrap_or(DEFAULT_TOL);
            let input = read_input(&a.input)?;
            let opts = RenderOptions {
                overlays: a.overlay,
                tol,
                ..RenderOptions::default()
            };
            let is_plan = serde_json::from_str::<serde_json::Value>(&input)
                .map(|v| v.get("frames").is_some())
                .unwrap_or(false);
            let (stem, docs) = if is_plan {
                let path = codec::decode_plan(&input)?;
                let report = validate_plan(&path, 1e-8_f64.max(tol));
                if !report.is_empty() {
                    return Err(CliError::Failed(format!("invalid plan: {report}")));
                }
                ("frame", render::render_plan(&path, &opts))
            } else {
                let p = codec::decode_valid_polygon(&input, tol)?;
                ("polygon", vec![render::render_polygon(&p, &opts)])
            };
            let paths = render::write_svgs(&a.out, stem, &docs).map_err(io_err(&a.out))?;
            paths
                .iter()
                .map(|p| p.display().to_string())
                .collect::<Vec<_>>()
                .join("\n")
        }
    };
    writeln!(out, "{text}").map_err(io_err(Path::new("stdout")))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
