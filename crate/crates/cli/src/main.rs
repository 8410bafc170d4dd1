use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use g2kit::config::{parse_config, Config};
use g2kit::report::{build_report, compute_group, compute_strata, Command, Stage, StageError};
use g2kit::Error;

mod cache;
mod render;

/// Exact verification pipeline for flat G2 orbifolds and their resolutions.
#[derive(Parser, Debug)]
#[command(name = "g2kit", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Built-in configuration (default: paper).
    #[arg(long, global = true, conflicts_with = "config")]
    preset: Option<String>,

    /// Configuration file (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for cached closures and strata.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Group generated by the configured isometries.
    Closure,
    /// Singular strata of the quotient.
    Strata,
    /// Betti numbers of the orbifold and of the resolution model.
    Betti,
    /// Poincare duals of the strata.
    Pd,
    /// Triple Massey product and the formality verdict.
    Massey,
    /// Everything.
    Report,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Closure => Command::Closure,
            Cmd::Strata => Command::Strata,
            Cmd::Betti => Command::Betti,
            Cmd::Pd => Command::Pd,
            Cmd::Massey => Command::Massey,
            Cmd::Report => Command::Report,
        }
    }
}

const EXIT_PIPELINE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NOT_WELL_DEFINED: u8 = 3;

fn load_config(cli: &Cli) -> Result<Config, Error> {
    match (&cli.config, &cli.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
            parse_config(&text)
        }
        (None, Some(name)) => Config::preset(name),
        (None, None) => Config::preset("paper"),
    }
}

fn run(cli: &Cli) -> Result<String, StageError> {
    let config = load_config(cli).map_err(|error| StageError { stage: Stage::Config, error })?;
    let command = Command::from(cli.command);
    let cache = cli.cache.as_ref().map(|dir| cache::Cache::new(dir, &cache::key(&config.canonical_json())));

    let group = match cache.as_ref().and_then(cache::Cache::group) {
        Some(g) => g,
        None => {
            let g = compute_group(&config)?;
            if let Some(c) = &cache {
                if let Err(e) = c.store_group(&g) {
                    eprintln!("warning: could not write cache: {e}");
                }
            }
            g
        }
    };
    let strata = if matches!(command, Command::Closure) {
        None
    } else {
        Some(match cache.as_ref().and_then(cache::Cache::strata) {
            Some(s) => s,
            None => {
                let s = compute_strata(&config, &group)?;
                if let Some(c) = &cache {
                    if let Err(e) = c.store_strata(&s) {
                        eprintln!("warning: could not write cache: {e}");
                    }
                }
                s
            }
        })
    };
    let report = build_report(&config, command, &group, strata.as_deref())?;
    Ok(match cli.format {
        Format::Json => report.to_json(),
        Format::Text => render::text(&report),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match (&e.stage, &e.error) {
                (_, Error::NotWellDefined(_)) => EXIT_NOT_WELL_DEFINED,
                (Stage::Config, _) | (_, Error::Config { .. }) => EXIT_CONFIG,
                _ => EXIT_PIPELINE,
            };
            ExitCode::from(code)
        }
    }
}
