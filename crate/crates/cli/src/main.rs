//! `mayocut`: solve, verify, generate and plot touching ham-sandwich cuts.
//!
//! Exit codes: 0 success, 1 verification failed, 2 solver limit reached,
//! 3 unreadable input or bad flags, 4 plot of a non-planar document.

mod format;
mod plot;
mod report;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mayocut::measure::{cell_size_for, DEFAULT_SUPERSAMPLE};
use mayocut::oracle::{verify_grids, BoundingBox};
use mayocut::scalar::parse_rational;
use mayocut::{
    enumerate_all_cuts, gen_saltpepper, rasterize, solve_measure_cut, solve_touching_cut, verify,
    Error, MeasureConfig, MeasureInput, Parallelism, SolverConfig, Strategy,
};
use serde_json::{json, Value};

use format::{parse_document, parse_list, parse_plane, write_instance, Document};

#[derive(Parser)]
#[command(name = "mayocut", version, about = "Touching ham-sandwich cuts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a touching bisector.
    Solve {
        #[command(subcommand)]
        target: SolveTarget,
    },
    /// Check a plane against an instance or shape file; exits 1 if it fails.
    Verify {
        /// Instance or shape file, `-` for standard input.
        file: String,
        /// Plane as `u=a,b,…;c=v`.
        #[arg(long, allow_hyphen_values = true)]
        plane: String,
        /// Resolution for shape files: cell diameter bound and touching distance.
        #[arg(long, default_value_t = 0.0625)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Draw a planar instance or shape file as SVG.
    Plot {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        plane: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum SolveTarget {
    /// Atomic instance: a plane through one atom of each set.
    Discrete {
        file: String,
        /// Report every touching cut through one atom per set.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shape file: refine along a schedule of tolerances.
    Measure {
        file: String,
        /// Strictly decreasing tolerances, comma separated.
        #[arg(long)]
        schedule: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Sweep)]
        strategy: StrategyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Two unit-mass point sets, "salt" and "pepper", drawn in a box.
    Saltpepper {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        salt: usize,
        #[arg(long)]
        pepper: usize,
        /// `x0,y0,x1,y1`.
        #[arg(long, default_value = "0,0,1,1", allow_hyphen_values = true)]
        bbox: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Sweep,
    Enumerate,
}

/// A failure and its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. }
            | Error::RetryLimit { .. }
            | Error::NoAdmissibleDirection { .. }
            | Error::SweepUnsupported(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("mayocut: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parallelism() -> Result<Parallelism, Failure> {
    match std::env::var("MAYOCUT_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Parallelism)
            .map_err(|_| input(format!("MAYOCUT_THREADS={v:?} is not a thread count"))),
        Err(_) => Ok(Parallelism::default()),
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result
        .map(|_| text)
        .map_err(|e| input(format!("{path}: {e}")))
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize") + "\n";
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve {
            target: SolveTarget::Discrete { file, all, out },
        } => {
            let Document::Instance(inst) =
                parse_document(&read_source(&file)?).map_err(|e| input(format!("{file}: {e}")))?
            else {
                return Err(input(format!(
                    "{file}: solve discrete needs an instance file, not shapes"
                )));
            };
            let config = SolverConfig {
                parallelism: parallelism()?,
                ..SolverConfig::default()
            };
            let value = if all {
                let cuts = enumerate_all_cuts(&inst, &config)?;
                json!({ "cuts": cuts.iter().map(report::solution).collect::<Vec<_>>() })
            } else {
                report::solution(&solve_touching_cut(&inst, &config)?)
            };
            emit(&value, out.as_deref())?;
            Ok(0)
        }
        Command::Solve {
            target:
                SolveTarget::Measure {
                    file,
                    schedule,
                    strategy,
                    out,
                },
        } => {
            let Document::Shapes(shapes) =
                parse_document(&read_source(&file)?).map_err(|e| input(format!("{file}: {e}")))?
            else {
                return Err(input(format!(
                    "{file}: solve measure needs a shape file, not an instance"
                )));
            };
            let schedule =
                parse_list(&schedule, "schedule", |s| s.parse::<f64>().ok()).map_err(input)?;
            let strategy = match strategy {
                StrategyArg::Sweep => Strategy::Sweep,
                StrategyArg::Enumerate => Strategy::Enumerate,
            };
            let config = MeasureConfig {
                parallelism: parallelism()?,
                ..MeasureConfig::default()
            };
            let inputs: Vec<MeasureInput> = shapes.into_iter().map(MeasureInput::Shape).collect();
            let solution = solve_measure_cut(&inputs, &schedule, strategy, &config)?;
            emit(&report::measure_solution(&solution), out.as_deref())?;
            Ok(0)
        }
        Command::Verify {
            file,
            plane,
            eps,
            out,
        } => {
            let doc =
                parse_document(&read_source(&file)?).map_err(|e| input(format!("{file}: {e}")))?;
            let plane = parse_plane(&plane).map_err(|e| input(format!("--plane: {e}")))?;
            let verdict = match doc {
                Document::Instance(inst) => {
                    let r = verify(&inst, &plane, 0.0)?;
                    emit(&report::verify_report(&r, &plane), out.as_deref())?;
                    r.verdict
                }
                Document::Shapes(shapes) => {
                    if !(eps.is_finite() && eps > 0.0) {
                        return Err(input("--eps must be positive"));
                    }
                    let h = cell_size_for(eps, plane.dim());
                    let grids = shapes
                        .iter()
                        .map(|s| rasterize(s, h, DEFAULT_SUPERSAMPLE))
                        .collect::<Result<Vec<_>, _>>()?;
                    let plane = plane.to_f64();
                    let r = verify_grids(&grids, &plane, eps)?;
                    emit(&report::grid_verify_report(&r, &plane, eps), out.as_deref())?;
                    r.verdict
                }
            };
            Ok(if verdict { 0 } else { 1 })
        }
        Command::Gen {
            kind:
                GenKind::Saltpepper {
                    seed,
                    salt,
                    pepper,
                    bbox,
                },
        } => {
            let corners = parse_list(&bbox, "--bbox", parse_rational).map_err(input)?;
            if corners.len() != 4 {
                return Err(input("--bbox takes x0,y0,x1,y1"));
            }
            let bbox = BoundingBox::new(corners[..2].to_vec(), corners[2..].to_vec())?;
            print!(
                "{}",
                write_instance(&gen_saltpepper(seed, salt, pepper, &bbox)?)
            );
            Ok(0)
        }
        Command::Plot { file, plane, out } => {
            let doc =
                parse_document(&read_source(&file)?).map_err(|e| input(format!("{file}: {e}")))?;
            if doc.dim() != 2 {
                return Err(Failure {
                    code: 4,
                    message: format!("plot needs a planar document, got dimension {}", doc.dim()),
                });
            }
            let plane = plane
                .map(|p| parse_plane(&p).map_err(|e| input(format!("--plane: {e}"))))
                .transpose()?
                .map(|p| p.to_f64());
            if plane.as_ref().is_some_and(|p| p.dim() != 2) {
                return Err(input("--plane must be a line"));
            }
            std::fs::write(&out, plot::render(&doc, plane.as_ref()))
                .map_err(|e| input(format!("{}: {e}", out.display())))?;
            Ok(0)
        }
    }
}
