//! Command-line front end: argument parsing, seeding and NDJSON reports for
//! the verification and exploration workflows.

use std::ffi::OsString;
use std::fs;

use clap::Parser;

pub mod cli;
pub mod explore;
pub mod report;
pub mod rings;
pub mod seeds;
pub mod verify;

use cli::{Cli, Command, ExploreWhat, RunConfig, SeedAction};
use report::Reporter;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    /// bad flags or inputs; reported on stderr with exit code 2
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Identity(#[from] identity_lab::IdentityError),
    #[error(transparent)]
    Seed(#[from] model_seeds::SeedError),
    #[error(transparent)]
    Staircase(#[from] staircase_core::StaircaseError),
    #[error(transparent)]
    Gcs(#[from] gcs_engine::GcsError),
    #[error(transparent)]
    Matrix(#[from] matrix_core::MatrixError),
    #[error(transparent)]
    Arith(#[from] exact_arith::ArithError),
}

/// Exit code plus the report text.
pub struct RunResult {
    pub code: i32,
    pub report: String,
}

/// Dispatch a parsed command. The report goes to `--out` for verify and
/// explore; seed commands use `--out` for the seed file instead.
pub fn run(cli: Cli) -> Result<RunResult, HarnessError> {
    let (name, cfg) = match &cli.command {
        Command::Verify { what, cfg } => (format!("verify {}", value_name(what)), cfg),
        Command::Explore { what, cfg } => (format!("explore {}", value_name(what)), cfg),
        Command::Seed { action } => match action {
            SeedAction::Build { cfg, .. } => ("seed build".to_string(), cfg),
            SeedAction::Mutate { cfg, .. } => ("seed mutate".to_string(), cfg),
            SeedAction::Show { cfg, .. } => ("seed show".to_string(), cfg),
        },
    };
    check_config(cfg)?;
    let mut rep = Reporter::new(name, cfg.seed);
    let report_path = match &cli.command {
        Command::Verify { what, cfg } => {
            verify::verify(*what, cfg, &mut rep)?;
            cfg.out.clone()
        }
        Command::Explore { what, cfg } => {
            match what {
                ExploreWhat::Yz => explore::yz(cfg, &mut rep)?,
                ExploreWhat::Orbit => explore::orbit(cfg, &mut rep)?,
            }
            cfg.out.clone()
        }
        Command::Seed { action } => {
            match action {
                SeedAction::Build { kind, cfg } => seeds::build(*kind, cfg, &mut rep)?,
                SeedAction::Mutate { at, file, cfg } => seeds::mutate(at, cfg, file, &mut rep)?,
                SeedAction::Show { file, cfg } => seeds::show(cfg, file, &mut rep)?,
            }
            None
        }
    };
    let (report, ok) = rep.finish();
    if let Some(p) = report_path {
        fs::write(p, &report)?;
    }
    Ok(RunResult {
        code: if ok { 0 } else { 1 },
        report,
    })
}

fn value_name<T: clap::ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn check_config(cfg: &RunConfig) -> Result<(), HarnessError> {
    if cfg.trials == Some(0) {
        return Err(HarnessError::Config("--trials must be at least 1".into()));
    }
    Ok(())
}

/// A bad modulus override panics deep inside the arithmetic; surface it as
/// a configuration error before anything runs.
fn check_modulus() -> Result<(), String> {
    if std::env::var_os(exact_arith::MODULUS_ENV).is_none() {
        return Ok(());
    }
    let hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let r = std::panic::catch_unwind(exact_arith::modulus);
    std::panic::set_hook(hook);
    r.map(|_| ()).map_err(|p| {
        p.downcast_ref::<String>()
            .cloned()
            .unwrap_or_else(|| format!("{} is not a usable modulus", exact_arith::MODULUS_ENV))
    })
}

/// Parse, run, print. Returns the process exit code: 0 when every check
/// passed, 1 when one failed or a computation errored, 2 for bad usage.
pub fn main_with<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Err(msg) = check_modulus() {
        eprintln!("error: {msg}");
        return 2;
    }
    let to_file = match &cli.command {
        Command::Verify { cfg, .. } | Command::Explore { cfg, .. } => cfg.out.is_some(),
        Command::Seed { .. } => false,
    };
    match run(cli) {
        Ok(r) => {
            if !to_file {
                print!("{}", r.report);
            }
            r.code
        }
        Err(HarnessError::Config(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
