//! Reports, verification sweeps and mesh export behind the `umbrella` binary.

pub mod app;
pub mod config;
pub mod fixtures;
pub mod mesh;
pub mod report;
pub mod verify;

use std::path::Path;

use anyhow::{bail, Context, Result};

use config::{parse_config, Validated};

/// A path to a JSON configuration, or the name of a bundled fixture.
pub fn load_config(arg: &str) -> Result<Validated> {
    let path = Path::new(arg);
    let text = if path.exists() {
        std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?
    } else if let Some(f) = fixtures::find(arg) {
        f.text.to_string()
    } else {
        bail!("no configuration file or bundled fixture named {arg:?}");
    };
    Ok(parse_config(&text)?)
}
