use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use equideg::degree::DegreeEngine;
use equideg::systems::SystemKind;
use equideg_cli::commands::{self, GroupSpec, InvariantRequest, Labeling};
use equideg_cli::error::{CliError, CliResult};
use equideg_cli::output::{self, OutputFormat};

/// Equivariant degree computations for S4 × O(2) and the cube-coupled
/// networks.
#[derive(Parser, Debug)]
#[command(name = "equideg", version, about)]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum System {
    Mdde,
    Ide,
}

impl From<System> for SystemKind {
    fn from(system: System) -> Self {
        match system {
            System::Mdde => SystemKind::Mdde,
            System::Ide => SystemKind::Ide,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugacy classes of subgroups: s4, o2, s4xo2 or s4xdm:<m>.
    Ccs { group: String },
    /// Product of two generators of A(S4 × O(2)), given as ID or ID:n.
    Mul {
        left: String,
        right: String,
        /// Recompute the product by orbit counting and require agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Region, ω(α₀) and branch counts at one parameter point.
    Invariant {
        #[arg(value_enum)]
        system: System,
        #[arg(long, allow_hyphen_values = true)]
        c1: f64,
        #[arg(long, allow_hyphen_values = true)]
        c2: f64,
        /// Crossing surface as `j,l`; defaults to the primary one.
        #[arg(long)]
        surface: Option<String>,
        #[arg(long, value_enum, default_value_t = Labeling::Table)]
        labeling: Labeling,
    },
    /// Regenerates the ω table and diffs it against the reference copy.
    Table {
        #[arg(value_enum)]
        system: System,
    },
    /// Region labels on a grid of cell centres.
    Grid {
        #[arg(value_enum)]
        system: System,
        #[arg(long, default_value_t = 40)]
        resolution: usize,
    },
}

fn parse_surface(text: &str) -> CliResult<(usize, u32)> {
    let bad = || CliError::Usage(format!("malformed surface `{text}`; expected j,l"));
    let (j, l) = text.split_once(',').ok_or_else(bad)?;
    Ok((j.trim().parse().map_err(|_| bad())?, l.trim().parse().map_err(|_| bad())?))
}

/// Prints the report and returns whether the command succeeded.
fn run(cli: Cli) -> CliResult<bool> {
    let format = cli.format;
    let engine = DegreeEngine::new();
    let (text, ok) = match cli.command {
        Command::Ccs { group } => {
            let spec: GroupSpec = group.parse()?;
            (output::classes(&commands::ccs(&engine, spec)?, format)?, true)
        }
        Command::Mul { left, right, oracle } => {
            (output::product(&commands::mul(&engine, &left, &right, oracle)?, format)?, true)
        }
        Command::Invariant { system, c1, c2, surface, labeling } => {
            let request = InvariantRequest {
                kind: system.into(),
                c1,
                c2,
                surface: surface.as_deref().map(parse_surface).transpose()?,
                labeling,
            };
            (output::invariant(&commands::invariant(&engine, &request)?, format)?, true)
        }
        Command::Table { system } => {
            let report = commands::table(&engine, system.into())?;
            (output::table(&report, format)?, report.passed)
        }
        Command::Grid { system, resolution } => (output::grid(&commands::grid(system.into(), resolution)?, format)?, true),
    };
    print!("{text}");
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
