use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use lwfr::basis::{Correction, PointKind, ReferenceOperators};
use lwfr::driver::output::{errors_csv, write_text};
use lwfr::driver::{convergence_study, run, RunConfig};
use lwfr::numflux::Dissipation;
use lwfr::stability::{find_cfl, find_cfl_2d, scan_region_2d, tables, KappaGrid};

#[derive(Parser)]
#[command(name = "lwfr", version, about = "Lax-Wendroff flux reconstruction solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configuration to its final time.
    Solve {
        config: PathBuf,
        /// Overrides `output_dir` from the file.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Grid refinement study; prints errors.csv to stdout.
    Convergence {
        config: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "40,80,160,320")]
        grids: Vec<usize>,
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Fourier stability limit; prints JSON.
    Stability {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "gl")]
        points: PointKind,
        #[arg(long, default_value = "radau")]
        correction: Correction,
        #[arg(long, default_value = "d2")]
        dissipation: Dissipation,
        /// Diagonal 2-D limit instead of the 1-D one.
        #[arg(long)]
        two_d: bool,
        /// Write the 2-D stability region as sigma1,sigma2,stable.
        #[arg(long)]
        region: Option<PathBuf>,
        /// Points per axis of the region grid.
        #[arg(long, default_value_t = 41)]
        resolution: usize,
    },
    /// Reference operators as CSV.
    Operators {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "gl")]
        points: PointKind,
        #[arg(long, default_value = "radau")]
        correction: Correction,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn load(path: &PathBuf, output_dir: Option<PathBuf>) -> lwfr::Result<RunConfig> {
    let mut cfg = RunConfig::load(path)?;
    if output_dir.is_some() {
        cfg.output_dir = output_dir;
    }
    Ok(cfg)
}

fn dispatch(cmd: Command) -> lwfr::Result<()> {
    match cmd {
        Command::Solve { config, output_dir } => {
            let cfg = load(&config, output_dir)?;
            let out = run(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&out).expect("output serializes"));
        }
        Command::Convergence {
            config,
            grids,
            output_dir,
        } => {
            let cfg = load(&config, output_dir)?;
            let report = convergence_study(&cfg, &grids)?;
            print!("{}", errors_csv(&report));
        }
        Command::Stability {
            degree,
            points,
            correction,
            dissipation,
            two_d,
            region,
            resolution,
        } => {
            let ops = ReferenceOperators::new(points, degree, correction)?;
            let grid = KappaGrid::default();
            let cfl = if two_d {
                find_cfl_2d(&ops, dissipation, grid, 1e-3)?
            } else {
                find_cfl(&ops, dissipation, 1e-4)?
            };
            let table = tables::cfl(correction, dissipation, degree, two_d).ok();
            if let Some(path) = &region {
                let r = scan_region_2d(&ops, dissipation, resolution.max(2), grid)?;
                write_text(path, &r.to_csv())?;
            }
            let out = json!({
                "degree": degree,
                "points": points,
                "correction": correction,
                "dissipation": dissipation,
                "two_d": two_d,
                "cfl": cfl,
                "table_cfl": table,
                "region": region,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Command::Operators {
            degree,
            points,
            correction,
        } => {
            print!("{}", ReferenceOperators::new(points, degree, correction)?.to_csv());
        }
    }
    Ok(())
}
