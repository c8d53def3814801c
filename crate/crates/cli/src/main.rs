//! `origami`: validate origami templates and compute their Riemann-Roch
//! characters.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails or
//! the template is rejected, 2 on usage, I/O or parse errors.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use toric_origami::rational::parse_rational;

#[derive(Parser)]
#[command(name = "origami", version, about = "Riemann-Roch characters of toric origami templates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Delzant condition, the folds and the signs of a template.
    Validate { path: PathBuf },
    /// Print the signed lattice-point character.
    Rr {
        path: PathBuf,
        /// Emit JSON including the per-face breakdown.
        #[arg(long)]
        json: bool,
    },
    /// Compare the vertex-cone sum with the specialized character.
    Oracle {
        path: PathBuf,
        /// Comma-separated integer direction; found automatically if omitted.
        #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
        direction: Option<Direction>,
    },
    /// Classify lattice points into covering regions and audit the sum.
    Covering {
        path: PathBuf,
        /// Neighbourhood radius as `p/q`; defaults to an admissible value.
        #[arg(long, value_parser = parse_positive_rational)]
        epsilon: Option<BigRational>,
        /// Run the audit even when epsilon is not admissible.
        #[arg(long)]
        allow_inadmissible: bool,
        #[arg(long)]
        json: bool,
    },
    /// Certify that the folded cylinder has no L^2 kernel.
    Cylinder {
        /// Perturbation parameter as `p/q`.
        #[arg(long, default_value = "0", value_parser = parse_exact_rational, allow_hyphen_values = true)]
        t: BigRational,
        /// Fourier modes as `lo..hi` (inclusive).
        #[arg(long, default_value = "-5..5", value_parser = parse_modes, allow_hyphen_values = true)]
        modes: Modes,
        #[arg(long)]
        json: bool,
    },
    /// List the lattice points of every polytope.
    Enumerate {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print a generated template.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Two simplices {x >= 0, sum x <= k/2} folded along the hypotenuse.
    Sphere {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1", value_parser = parse_positive_rational)]
        k: BigRational,
    },
    /// The simplex {x >= 0, sum x <= k}.
    Simplex {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1", value_parser = parse_positive_rational)]
        k: BigRational,
    },
    /// The trapezoid {x >= 0, 0 <= y <= height, x + a y <= width}.
    Hirzebruch {
        #[arg(long)]
        a: i64,
        #[arg(long, default_value = "1", value_parser = parse_positive_rational)]
        height: BigRational,
        #[arg(long, value_parser = parse_positive_rational)]
        width: BigRational,
    },
}

#[derive(Clone, Debug)]
struct Direction(Vec<i64>);

#[derive(Clone, Debug)]
struct Modes(i64, i64);

fn parse_exact_rational(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_positive_rational(s: &str) -> Result<BigRational, String> {
    let r = parse_exact_rational(s)?;
    if r > BigRational::from_integer(0.into()) {
        Ok(r)
    } else {
        Err(format!("{s} is not positive"))
    }
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| format!("invalid direction component {x:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Direction)
}

fn parse_modes(s: &str) -> Result<Modes, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("invalid lower mode {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("invalid upper mode {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty mode range {s}"));
    }
    Ok(Modes(lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { path } => commands::validate(&path),
        Command::Rr { path, json } => commands::rr(&path, json),
        Command::Oracle { path, direction } => commands::oracle(&path, direction.map(|d| d.0)),
        Command::Covering { path, epsilon, allow_inadmissible, json } => {
            commands::covering(&path, epsilon, allow_inadmissible, json)
        }
        Command::Cylinder { t, modes, json } => commands::cylinder(&t, modes.0..=modes.1, json),
        Command::Enumerate { path, json } => commands::enumerate(&path, json),
        Command::Generate { kind } => match kind {
            GenerateKind::Sphere { n, k } => commands::generate_sphere(n, &k),
            GenerateKind::Simplex { n, k } => commands::generate_simplex(n, &k),
            GenerateKind::Hirzebruch { a, height, width } => commands::generate_hirzebruch(a, &height, &width),
        },
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
