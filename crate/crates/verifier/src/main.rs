use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use injsupp_verify::config::parse_window;
use injsupp_verify::{emit_report, run_scenario, Config, Format, ScenarioName};

/// Checks support and injective-resolution claims over Z[x]/(x^2).
#[derive(Parser)]
#[command(name = "verify", version)]
struct Cli {
    /// Scenarios to run
    #[arg(required = true, value_enum)]
    scenarios: Vec<ScenarioName>,

    #[arg(long)]
    prime: Option<u64>,

    /// Degree window, e.g. -6:6
    #[arg(long, allow_hyphen_values = true, value_parser = window_arg)]
    window: Option<(i64, i64)>,

    #[arg(long)]
    torsion_bound: Option<u32>,

    /// Random elements per degree
    #[arg(long)]
    samples: Option<usize>,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long, value_enum)]
    format: Option<Format>,

    /// key = value file with defaults for the flags above
    #[arg(long)]
    config: Option<PathBuf>,

    /// Write the report here instead of standard output
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn window_arg(s: &str) -> Result<(i64, i64), String> {
    parse_window(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match cli.config.as_deref().map(Config::load).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let flags = Config {
        prime: cli.prime,
        window: cli.window,
        torsion_bound: cli.torsion_bound,
        samples: cli.samples,
        seed: cli.seed,
        format: cli.format,
    };
    let cfg = flags.over(file);
    let scenarios: Vec<_> = cli.scenarios.iter().map(|&n| cfg.scenario(n)).collect();
    for s in &scenarios {
        if let Err(e) = s.validate() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut reports = Vec::new();
    for s in &scenarios {
        match run_scenario(s) {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    if let Err(e) = emit_report(&reports, cfg.format.unwrap_or(Format::Text), cli.out.as_deref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
