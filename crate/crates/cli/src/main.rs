use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use stickknot::certificate::{compute_delta, iteration_bounds, IterationInputs};
use stickknot::diagnostics::{diagnose_iteration, project, project_along, sample_floor, Frame};
use stickknot::{PolyKnot, TangentTest};
use stickknot_cli::knotfile::KnotFile;
use stickknot_cli::sweep::{self, SweepConfig};
use stickknot_cli::{render, report, CliError};

/// Largest insertion count accepted on the command line; the vertex count
/// doubles with every insertion.
const MAX_INSERTIONS: u32 = 24;

#[derive(Parser)]
#[command(name = "stickknot", version, about = "Certified Bézier approximations of stick knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply J rounds of midpoint insertion and write the refined polygon.
    Insert {
        #[arg(short)]
        j: u32,
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print the polygon's norms and the convergence bound tables.
    Bounds {
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        jmax: u32,
    },
    /// Print the distance certificate δ and its intermediate radii.
    Delta {
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
    },
    /// Print the certified insertion count M and its components.
    Iterations {
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        omega1: Option<f64>,
        #[arg(long)]
        omega2: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        /// Also require the exact tangent-deviation ratio, not just the
        /// simplified one.
        #[arg(long)]
        strict_tangent: bool,
    },
    /// Sample the curve after J insertions and compute its knot determinant.
    Diagnose {
        input: PathBuf,
        #[arg(short)]
        j: u32,
        /// Polyline sample count; defaults to the minimum for level J.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a projection as SVG, breaking the understrand at crossings.
    Render {
        input: PathBuf,
        /// Draw the Bézier curve after J insertions instead of the polygon.
        #[arg(short)]
        j: Option<u32>,
        #[arg(long, default_value = "xy")]
        plane: Plane,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare certified and observed insertion counts on random polygons.
    Sweep {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        sticks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jmax: u32,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Copy)]
enum Plane {
    Fixed(Frame),
    Seed(u64),
}

impl FromStr for Plane {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xy" => Ok(Plane::Fixed(Frame::XY)),
            "xz" => Ok(Plane::Fixed(Frame::XZ)),
            "yz" => Ok(Plane::Fixed(Frame::YZ)),
            _ => s
                .strip_prefix("seed:")
                .and_then(|k| k.parse().ok())
                .map(Plane::Seed)
                .ok_or_else(|| format!("expected xy, xz, yz or seed:K, got {s:?}")),
        }
    }
}

fn load(path: &Path) -> Result<PolyKnot, CliError> {
    let file = KnotFile::read(path)?;
    Ok(PolyKnot::validate(&file.vertices())?)
}

fn write_out(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Output {
        path: path.display().to_string(),
        source,
    })
}

fn check_level(j: u32) -> Result<(), CliError> {
    if j > MAX_INSERTIONS {
        return Err(CliError::Usage(format!(
            "at most {MAX_INSERTIONS} insertions are supported, got {j}"
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Insert { j, input, output } => {
            check_level(j)?;
            let file = KnotFile::read(&input)?;
            let p = PolyKnot::validate(&file.vertices())?.refine(j);
            KnotFile::from_polygon(&p, file.name)
                .write(&output)
                .map_err(|source| CliError::Output {
                    path: output.display().to_string(),
                    source,
                })?;
            Ok(format!("vertices = {}\n", p.len()))
        }
        Command::Bounds { input, jmax } => Ok(report::bounds(&load(&input)?, jmax)),
        Command::Delta { input, epsilon } => Ok(report::delta(&compute_delta(&load(&input)?, epsilon)?)),
        Command::Iterations {
            input,
            epsilon,
            omega1,
            omega2,
            lambda,
            delta,
            strict_tangent,
        } => {
            let test = if strict_tangent {
                TangentTest::Strict
            } else {
                TangentTest::Simplified
            };
            let (computed, _) = IterationInputs::from_polygon(&load(&input)?, epsilon)?;
            let mut out = report::iterations("computed", &iteration_bounds(&computed, test)?);
            if omega1.is_some() || omega2.is_some() || lambda.is_some() || delta.is_some() {
                let injected = IterationInputs {
                    omega1: omega1.unwrap_or(computed.omega1),
                    omega2: omega2.unwrap_or(computed.omega2),
                    lambda: lambda.unwrap_or(computed.lambda),
                    delta: delta.unwrap_or(computed.delta),
                    ..computed
                };
                out.push('\n');
                out.push_str(&report::iterations("injected", &iteration_bounds(&injected, test)?));
            }
            Ok(out)
        }
        Command::Diagnose { input, j, samples, seed } => {
            check_level(j)?;
            let p = load(&input)?;
            let samples = samples.unwrap_or_else(|| sample_floor(&p, j));
            Ok(report::diagnose(&diagnose_iteration(&p, j, samples, seed)?))
        }
        Command::Render { input, j, plane, output } => {
            let p = load(&input)?;
            let points = match j {
                Some(j) => {
                    check_level(j)?;
                    let mut pts = p.refine(j).bezier().sample(sample_floor(&p, j) + 1)?;
                    pts.pop();
                    pts
                }
                None => p.vertices().to_vec(),
            };
            let diagram = match plane {
                Plane::Fixed(frame) => project_along(&points, frame)?,
                Plane::Seed(seed) => project(&points, seed)?,
            };
            let title = match j {
                Some(j) => format!("Bezier curve after {j} insertions"),
                None => "stick knot".to_string(),
            };
            write_out(&output, render::svg(&diagram, j.is_none(), &title).as_bytes())?;
            Ok(format!("crossings = {}\n", diagram.crossing_count()))
        }
        Command::Sweep {
            count,
            sticks,
            seed,
            jmax,
            epsilon,
            output,
        } => {
            check_level(jmax)?;
            let config = SweepConfig {
                count,
                sticks,
                seed,
                jmax,
                epsilon,
            };
            let records = sweep::run(&config)?;
            let mut buf = Vec::new();
            sweep::write_csv(&records, &mut buf).map_err(|e| CliError::Usage(e.to_string()))?;
            write_out(&output, &buf)?;
            Ok(format!("rows = {}\n", records.len()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
