//! The `umbrella` command line.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};

use crate::config::SweepOptions;
use crate::{fixtures, load_config, mesh, report, verify};

/// Curvature invariants of curves through a Whitney umbrella.
#[derive(Parser)]
#[command(name = "umbrella", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the invariant report of a configuration as JSON.
    Report {
        /// Configuration file or bundled fixture name.
        config: String,
    },
    /// Compare the series oracle with the closed-form tables.
    Verify {
        /// Configuration file or bundled fixture name.
        config: Option<String>,
        /// Seeded random draws in every subcase instead of one configuration.
        #[arg(long, conflicts_with = "config")]
        sweep: bool,
        #[arg(long, requires = "sweep")]
        seed: Option<u64>,
        #[arg(long, requires = "sweep")]
        draws: Option<usize>,
    },
    /// Write umbrella.obj, curve.obj and od_w.obj.
    Mesh {
        /// Configuration file or bundled fixture name.
        config: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Bundled fixtures.
    Fixtures {
        #[arg(long)]
        list: bool,
        /// Print one fixture's configuration.
        #[arg(long, value_name = "NAME")]
        show: Option<String>,
    },
}

/// Runs one command, writing its standard output to `stdout`. Returns the exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Report { config } => {
            let v = load_config(&config)?;
            write!(stdout, "{}", report::render(&report::run_report(&v)?))?;
        }
        Command::Verify { config, sweep, seed, draws } => {
            let rows = if sweep {
                let d = SweepOptions::default();
                verify::sweep(seed.unwrap_or(d.seed), draws.unwrap_or(d.draws))?
            } else {
                let Some(config) = config else { bail!("verify needs a configuration or --sweep") };
                let v = load_config(&config)?;
                vec![verify::verify_one(&v.coefficients, &v.curve, v.order, None)?]
            };
            write!(stdout, "{}", verify::render(&rows))?;
            if verify::has_failures(&rows) {
                return Ok(1);
            }
        }
        Command::Mesh { config, out } => {
            let v = load_config(&config)?;
            for path in mesh::run_mesh(&v, &out)? {
                writeln!(stdout, "{}", path.display())?;
            }
        }
        Command::Fixtures { list, show } => {
            if let Some(name) = show {
                let Some(f) = fixtures::find(&name) else { bail!("no bundled fixture named {name:?}") };
                write!(stdout, "{}", f.text)?;
            } else if list {
                for f in fixtures::FIXTURES {
                    writeln!(stdout, "{:<12} {}", f.name, f.description)?;
                }
            } else {
                bail!("fixtures needs --list or --show NAME");
            }
        }
    }
    Ok(0)
}

