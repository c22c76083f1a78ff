use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fock_core::fockspace::{Exponent, Flavor};
use fock_oplab::config::{Command, RunConfig, Suite};
use fock_oplab::{run, CliError};

#[derive(Parser)]
#[command(name = "fock-oplab", version, about = "Weighted composition operators on Fock spaces")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify an operator as unbounded, bounded or compact.
    Classify(Common),
    /// Fock norm of a function.
    Norm(Common),
    /// Iterate coefficients and their deviation from the limit.
    Iterate(Common),
    /// Evidence that the operator is not supercyclic.
    Dynamics(Common),
    /// Run every acceptance criterion.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// Operator spec (JSON).
    #[arg(long)]
    op: Option<PathBuf>,
    /// Function spec (JSON).
    #[arg(long)]
    function: Option<PathBuf>,
    /// Exponent: a number ≥ 1 or `inf`.
    #[arg(long, value_parser = parse_exponent)]
    p: Option<Exponent>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_parser = parse_flavor)]
    flavor: Option<Flavor>,
    #[arg(long, default_value_t = fock_oplab::config::DEFAULT_TOL)]
    tol: f64,
    /// Iterate count (`--n` works too).
    #[arg(long = "N", alias = "n")]
    n: Option<u32>,
    /// Grid radius and points per side for the iterate deviation.
    #[arg(long, num_args = 2, value_names = ["RADIUS", "SIZE"])]
    eval_grid: Option<Vec<String>>,
    #[arg(long, value_parser = parse_suite)]
    suite: Option<Suite>,
    /// JSON report path; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = fock_oplab::config::DEFAULT_SEED)]
    seed: u64,
}

fn parse_exponent(s: &str) -> Result<Exponent, String> {
    s.parse()
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|_| format!("unknown flavor {s:?}"))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|_| format!("unknown suite {s:?}"))
}

fn config(command: Command, c: Common) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::new(command);
    if let Some(path) = &c.op {
        cfg.load_op(path)?;
    }
    if let Some(path) = &c.function {
        cfg.load_function(path)?;
    }
    cfg.p = c.p;
    cfg.alpha = c.alpha;
    cfg.flavor = c.flavor;
    cfg.tol = c.tol;
    cfg.n = c.n;
    cfg.suite = c.suite;
    cfg.out = c.out;
    cfg.csv = c.csv;
    cfg.seed = c.seed;
    if let Some(grid) = c.eval_grid {
        cfg.grid_radius = grid[0]
            .parse()
            .map_err(|_| CliError::ConfigInvalid(format!("bad grid radius {:?}", grid[0])))?;
        cfg.grid_size = grid[1]
            .parse()
            .map_err(|_| CliError::ConfigInvalid(format!("bad grid size {:?}", grid[1])))?;
    }
    Ok(cfg)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("FOCK_OPLAB_THREADS") else { return Ok(()) };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::ConfigInvalid(format!("FOCK_OPLAB_THREADS={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::ConfigInvalid(e.to_string()))
}

fn main() -> ExitCode {
    // clap's own usage-error code is 2, which here means a refused operator
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (command, common) = match cli.command {
        Cmd::Classify(c) => (Command::Classify, c),
        Cmd::Norm(c) => (Command::Norm, c),
        Cmd::Iterate(c) => (Command::Iterate, c),
        Cmd::Dynamics(c) => (Command::Dynamics, c),
        Cmd::Verify(c) => (Command::Verify, c),
    };
    let result = configure_threads().and_then(|_| config(command, common)).and_then(|cfg| {
        let outcome = run(&cfg)?;
        if cfg.out.is_none() {
            println!("{}", outcome.report.to_json());
        }
        if command == Command::Verify {
            if let Some(list) = outcome.report.results["criteria"].as_array() {
                for c in list {
                    let pass = c["passed"].as_bool().unwrap_or(false);
                    eprintln!(
                        "[{}] criterion {:>2} {}",
                        if pass { "PASS" } else { "FAIL" },
                        c["id"],
                        c["name"].as_str().unwrap_or("")
                    );
                }
            }
        }
        for w in &outcome.report.warnings {
            eprintln!("warning: {w}");
        }
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
