//! `bmwis`: solve, generate, benchmark and verify budgeted MWIS instances.
//!
//! Exit codes: 0 success, 1 bench ratio audit failed, 2 unreadable or
//! invalid input (including rejected parameters), 3 algorithm not applicable
//! to the input, 4 size cap exceeded, 5 a verification check was falsified.

mod bench;
mod gen;
mod solve;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bmwis_core::Error;

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "bmwis", version, about = "Budgeted maximum weight independent set toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for `bench`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Emit JSON instead of text or CSV.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one instance file.
    Solve(solve::SolveArgs),
    /// Generate an instance family.
    Gen(gen::GenArgs),
    /// Run algorithms over every `.bmwis` file of a directory and print CSV.
    Bench(bench::BenchArgs),
    /// Numeric and combinatorial checks of the hardness constructions.
    Verify(verify::VerifyArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Lagrange,
    Trim,
    SideKnapsack,
    Exact,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Lagrange => "lagrange",
            Algo::Trim => "trim",
            Algo::SideKnapsack => "side-knapsack",
            Algo::Exact => "exact",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    Flow,
    Brute,
}

impl From<Oracle> for bmwis_core::OracleKind {
    fn from(o: Oracle) -> Self {
        match o {
            Oracle::Flow => bmwis_core::OracleKind::BipartiteFlow,
            Oracle::Brute => bmwis_core::OracleKind::BruteForce,
        }
    }
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(2, message)
    }

    pub fn with_context(mut self, context: &str) -> Self {
        self.message = format!("{context}: {}", self.message);
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotBipartite => 3,
            Error::CapExceeded { .. } | Error::Overflow(_) => 4,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

pub type CliResult<T> = Result<T, Failure>;

pub fn read_instance(path: &PathBuf) -> CliResult<(String, bmwis_core::BudgetedInstance)> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let inst = bmwis_core::format::parse_instance(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok((text, inst))
}

pub fn print_json(value: &serde_json::Value) -> CliResult<()> {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value)?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::new(1, e.to_string())),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Command::Solve(a) => solve::run(&cli.global, a),
        Command::Gen(a) => gen::run(&cli.global, a),
        Command::Bench(a) => bench::run(&cli.global, a),
        Command::Verify(a) => verify::run(&cli.global, a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
