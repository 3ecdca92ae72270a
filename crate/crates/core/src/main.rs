//! Batch verification front-end.
//!
//! `nova verify <file>` parses a plain-text algebra description and runs
//! the selected identity suites over the configured eps x level grid. The
//! process exits nonzero iff any check fails (expected negatives count as
//! passes); window overflows are reported as INCONCLUSIVE and also fail
//! the run, so they can never mask a regression.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nova::scalar::parse_rational;
use nova::specfile::{parse_spec, SuiteKind};
use nova::suites::{all_passed, any_inconclusive, render_json, render_text, run_suites};

#[derive(Parser)]
#[command(
    name = "nova",
    version,
    about = "Exact verification of Novikov-algebra vertex structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra file and run the verification suites.
    Verify {
        /// Path to the algebra description file.
        spec: PathBuf,
        /// Suites to run (defaults to the file's selection).
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Comma-separated deformation parameters, overriding the file.
        #[arg(long)]
        eps: Option<String>,
        /// Comma-separated levels (exact rationals), overriding the file.
        #[arg(long)]
        level: Option<String>,
        /// Series truncation order N.
        #[arg(long)]
        order: Option<u32>,
        /// Module degree cap G.
        #[arg(long = "degree-cap")]
        degree_cap: Option<i64>,
        /// Mode window M for Lie checks.
        #[arg(long = "mode-window")]
        mode_window: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            spec,
            suites,
            eps,
            level,
            order,
            degree_cap,
            mode_window,
            report,
        } => {
            let mut parsed = match parse_spec(&spec) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("{}: {e}", spec.display());
                    return ExitCode::from(2);
                }
            };
            if !suites.is_empty() {
                let mut selected = Vec::new();
                for name in &suites {
                    match SuiteKind::from_name(name) {
                        Some(k) => selected.push(k),
                        None => {
                            eprintln!("unknown suite `{name}`");
                            return ExitCode::from(2);
                        }
                    }
                }
                parsed.suites = selected;
            }
            if let Some(eps) = eps {
                match eps
                    .split(',')
                    .map(|s| s.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                {
                    Ok(list) => parsed.eps_list = list,
                    Err(_) => {
                        eprintln!("bad --eps list `{eps}`");
                        return ExitCode::from(2);
                    }
                }
            }
            if let Some(level) = level {
                match level
                    .split(',')
                    .map(|s| parse_rational(s.trim()))
                    .collect::<Result<Vec<_>, _>>()
                {
                    Ok(list) => parsed.level_list = list,
                    Err(e) => {
                        eprintln!("bad --level list: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            if let Some(n) = order {
                parsed.order = n;
            }
            if let Some(g) = degree_cap {
                parsed.degree_cap = g;
            }
            if let Some(m) = mode_window {
                parsed.mode_window = m;
            }
            let start = std::time::Instant::now();
            let results = run_suites(&parsed);
            match report {
                ReportFormat::Text => {
                    print!("{}", render_text(&results));
                    if any_inconclusive(&results) {
                        println!(
                            "note: window overflows left checks inconclusive; enlarge the windows"
                        );
                    }
                    println!("elapsed: {:?}", start.elapsed());
                }
                ReportFormat::Json => println!("{}", render_json(&results)),
            }
            if all_passed(&results) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
