//! zadic: exact-arithmetic checks for Zariskian localizations of f-adic
//! rings, with deterministic JSON reports.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use zadic_cli::report::{self, Report};
use zadic_cli::{commands, CliError};

#[derive(Parser)]
#[command(
    name = "zadic",
    version,
    about = "Zariskian localization checks with exact arithmetic"
)]
struct Cli {
    /// Print the report JSON schema and exit.
    #[arg(long)]
    schema: bool,
    /// Include wall-clock timing in the report (excluded from the
    /// byte-determinism contract).
    #[arg(long, global = true)]
    timing: bool,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Unit and nilpotence decisions in the Zariskisation of a ring.
    Zar {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        element: String,
    },
    /// Rational-subset membership matrix over a valuation sample.
    Spa {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        subset: String,
        /// Valuation grid file (JSON array of {kind, ...}).
        #[arg(long)]
        valuations: Option<String>,
        /// Generate a deterministic grid of this size instead.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Čech exactness trials over a standard rational cover.
    Cech {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        cover: String,
        #[arg(long, default_value = "A")]
        module: String,
        #[arg(long, default_value_t = 200)]
        trials: u32,
        #[arg(long)]
        seed: u64,
    },
    /// Machine-checked replay of the Tate-acyclicity counterexample.
    Cex {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        grid_degree: u32,
        #[arg(long, default_value_t = 2)]
        grid_height: i64,
        #[arg(long, default_value_t = 100)]
        valuations: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Topological tensor product of two rings over a constant base.
    Tensor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        base: String,
    },
    /// Quotient f-adic ring by a finitely generated ideal.
    Quotient {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: String,
    },
}

fn emit(report: &Report, out: Option<&PathBuf>) -> i32 {
    let text = report.to_pretty_json();
    print!("{text}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    report.exit_code()
}

fn main() {
    let cli = Cli::parse();
    if cli.schema {
        print!("{}", report::report_schema());
        std::process::exit(0);
    }
    let command = match cli.command {
        Some(c) => c,
        None => {
            eprintln!("error: a subcommand is required (or --schema)");
            std::process::exit(2);
        }
    };
    let start = Instant::now();
    let result = match &command {
        Command::Zar { ring, element } => commands::run_zar(ring, element),
        Command::Spa {
            ring,
            subset,
            valuations,
            grid,
        } => commands::run_spa(ring, subset, valuations.as_deref(), *grid),
        Command::Cech {
            ring,
            cover,
            module,
            trials,
            seed,
        } => commands::run_cech(ring, cover, module, *trials, *seed),
        Command::Cex {
            p,
            grid_degree,
            grid_height,
            valuations,
            seed,
        } => commands::run_cex(*p, *grid_degree, *grid_height, *valuations, *seed),
        Command::Tensor { left, right, base } => commands::run_tensor(left, right, base),
        Command::Quotient { ring, ideal } => commands::run_quotient(ring, ideal),
    };
    let code = match result {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            emit(&report, cli.out.as_ref())
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            2
        }
        Err(CliError::Engine {
            message,
            undecidable,
        }) => {
            let mut report = Report::new("error", serde_json::json!({}));
            if undecidable {
                report.push_undecidable("engine", message);
            } else {
                report.push("engine", false, message);
            }
            emit(&report, cli.out.as_ref())
        }
    };
    std::process::exit(code);
}
