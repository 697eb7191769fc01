//! Scenario runner: assembles the objects over `R = Z[x]/(x²)`, runs each
//! claim check and renders a report.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

pub mod config;
pub mod corpus;
mod scenarios;

pub use config::{Config, ConfigError};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioName {
    PropSupport,
    PropMain,
    RemarkAss,
    RemarkIhulls,
    FoxbyBoundedBelow,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 5] = [
        ScenarioName::PropSupport,
        ScenarioName::PropMain,
        ScenarioName::RemarkAss,
        ScenarioName::RemarkIhulls,
        ScenarioName::FoxbyBoundedBelow,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::PropSupport => "prop-support",
            ScenarioName::PropMain => "prop-main",
            ScenarioName::RemarkAss => "remark-ass",
            ScenarioName::RemarkIhulls => "remark-ihulls",
            ScenarioName::FoxbyBoundedBelow => "foxby-bounded-below",
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: ScenarioName,
    pub prime: u64,
    pub window: (i64, i64),
    pub torsion_bound: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Scenario {
    pub fn new(name: ScenarioName, prime: u64) -> Self {
        Scenario { name, prime, window: (-6, 6), torsion_bound: 12, samples: 200, seed: 0 }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !injsupp::exactnum::is_prime(self.prime) {
            return Err(ConfigError::NotPrime(self.prime));
        }
        if self.window.0 > self.window.1 {
            return Err(ConfigError::EmptyWindow(self.window.0, self.window.1));
        }
        if self.torsion_bound == 0 {
            return Err(ConfigError::Invalid("torsion-bound".into(), "must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(rename = "paperRef")]
    pub paper_ref: String,
    pub status: Status,
    pub witness: Option<String>,
    #[serde(rename = "elapsedMs")]
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: String,
    pub prime: u64,
    pub window: [i64; 2],
    pub checks: Vec<Check>,
    pub overall: Status,
    pub version: String,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// The report with every timing field zeroed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let cw = self.checks.iter().map(|c| c.paper_ref.len()).max().unwrap_or(5).max(5);
        let mut s = format!(
            "scenario {}  p={}  window [{}, {}]  version {}\n",
            self.scenario, self.prime, self.window[0], self.window[1], self.version
        );
        s.push_str(&format!("{:<w$}  {:<7}  {:>8}  {:<cw$}  witness\n", "check", "status", "ms", "claim"));
        for c in &self.checks {
            s.push_str(&format!(
                "{:<w$}  {:<7}  {:>8}  {:<cw$}  {}\n",
                c.name,
                c.status.to_string(),
                c.elapsed_ms,
                c.paper_ref,
                c.witness.as_deref().unwrap_or("-")
            ));
        }
        s.push_str(&format!("overall: {}\n", self.overall));
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Outcome of one check body.
pub(crate) enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

/// Collects timed checks; an engine error counts as a failure.
pub(crate) struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn new() -> Self {
        Runner { checks: Vec::new() }
    }

    pub(crate) fn check(&mut self, name: &str, claim: &str, body: impl FnOnce() -> injsupp::Result<Outcome>) {
        let t = Instant::now();
        let (status, witness) = match body() {
            Ok(Outcome::Pass(w)) => (Status::Pass, w),
            Ok(Outcome::Fail(w)) => (Status::Fail, w),
            Ok(Outcome::Skip(w)) => (Status::Skipped, w),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.checks.push(Check {
            name: name.to_string(),
            paper_ref: claim.to_string(),
            status,
            witness: Some(witness).filter(|w| !w.is_empty()),
            elapsed_ms: t.elapsed().as_millis() as u64,
        });
    }
}

pub(crate) fn verdict(ok: bool, witness: String) -> Outcome {
    if ok {
        Outcome::Pass(witness)
    } else {
        Outcome::Fail(witness)
    }
}

/// Runs every check of a scenario. Deterministic given the seed.
pub fn run_scenario(s: &Scenario) -> Result<Report, ConfigError> {
    s.validate()?;
    let mut runner = Runner::new();
    match s.name {
        ScenarioName::PropMain => scenarios::prop_main(s, &mut runner),
        ScenarioName::PropSupport => scenarios::prop_support(s, &mut runner),
        ScenarioName::RemarkAss => scenarios::remark_ass(s, &mut runner),
        ScenarioName::RemarkIhulls => scenarios::remark_ihulls(s, &mut runner),
        ScenarioName::FoxbyBoundedBelow => scenarios::foxby(s, &mut runner),
    }
    let checks = runner.checks;
    let overall = if checks.iter().any(|c| c.status == Status::Fail) { Status::Fail } else { Status::Pass };
    Ok(Report {
        scenario: s.name.to_string(),
        prime: s.prime,
        window: [s.window.0, s.window.1],
        checks,
        overall,
        version: VERSION.to_string(),
    })
}

/// Writes reports to `out` or standard output. Several JSON reports are
/// written as one array.
pub fn emit_report(reports: &[Report], format: Format, out: Option<&Path>) -> std::io::Result<()> {
    let body = match format {
        Format::Json if reports.len() == 1 => reports[0].to_json(),
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        Format::Text => reports.iter().map(Report::to_text).collect::<Vec<_>>().join("\n"),
    };
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            writeln!(f, "{body}")
        }
        None => {
            let mut o = std::io::stdout().lock();
            writeln!(o, "{body}")
        }
    }
}
