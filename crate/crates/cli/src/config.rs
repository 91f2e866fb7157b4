//! Run configuration: JSON in, validated domain objects out.
//!
//! Rationals are strings (`"3"`, `"-5/4"`); surface coefficient keys are
//! `"i,j"` for `a_ij` and `"i"` for `b_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use umbrella_core::model::{default_order, CurveSpec, UmbrellaCoefficients};
use umbrella_core::series::{Field, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Truncation degree of the umbrella's normal form.
    pub k: usize,
    /// Series order; defaults to `m_min (k + 1) - 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default)]
    pub field: FieldChoice,
    pub surface: SurfaceConfig,
    pub curve: CurveConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mesh: Option<MeshOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepOptions>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldChoice {
    #[default]
    Exact,
    Float,
}

impl FieldChoice {
    pub fn field(self) -> Field {
        match self {
            FieldChoice::Exact => Field::Exact,
            FieldChoice::Float => Field::Float,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    #[serde(default)]
    pub a: BTreeMap<String, String>,
    #[serde(default)]
    pub b: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum CurveConfig {
    Mpq { m: usize, p: usize, q: usize, c: Vec<String> },
    Mp { m: usize, p: usize, c: Vec<String> },
    General { u: Vec<String>, v: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshOptions {
    #[serde(default = "default_x_range")]
    pub x_range: (f64, f64),
    #[serde(default = "default_y_range")]
    pub y_range: (f64, f64),
    #[serde(default = "default_uv_range")]
    pub u_range: (f64, f64),
    #[serde(default = "default_uv_range")]
    pub v_range: (f64, f64),
    #[serde(default = "default_nx")]
    pub nx: usize,
    #[serde(default = "default_ny")]
    pub ny: usize,
}

fn default_x_range() -> (f64, f64) {
    (-0.3, 0.3)
}

fn default_y_range() -> (f64, f64) {
    (-0.2, 0.2)
}

fn default_uv_range() -> (f64, f64) {
    (-0.5, 0.5)
}

fn default_nx() -> usize {
    41
}

fn default_ny() -> usize {
    11
}

impl Default for MeshOptions {
    fn default() -> Self {
        Self {
            x_range: default_x_range(),
            y_range: default_y_range(),
            u_range: default_uv_range(),
            v_range: default_uv_range(),
            nx: default_nx(),
            ny: default_ny(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepOptions {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_draws")]
    pub draws: usize,
}

fn default_draws() -> usize {
    10
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { seed: 0, draws: default_draws() }
    }
}

/// Every violation found in a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub violations: Vec<String>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration:")?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

/// A configuration together with the objects it describes.
#[derive(Clone, Debug, PartialEq)]
pub struct Validated {
    pub config: RunConfig,
    pub coefficients: UmbrellaCoefficients,
    pub curve: CurveSpec,
    pub order: usize,
}

pub fn parse_config(text: &str) -> Result<Validated, ConfigError> {
    let config: RunConfig = serde_json::from_str(text).map_err(|e| ConfigError { violations: vec![e.to_string()] })?;
    validate(config)
}

pub fn emit_config(config: &RunConfig) -> String {
    let mut s = serde_json::to_string_pretty(config).expect("configs serialize");
    s.push('\n');
    s
}

fn rational(text: &str, what: &str, errors: &mut Vec<String>) -> Option<Rational> {
    match Rational::from_str(text.trim()) {
        Ok(r) => Some(r),
        Err(_) => {
            errors.push(format!("{what}: malformed rational {text:?}"));
            None
        }
    }
}

fn index_pair(key: &str, errors: &mut Vec<String>) -> Option<(usize, usize)> {
    let parsed = key
        .split_once(',')
        .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)));
    if parsed.is_none() {
        errors.push(format!("surface.a: malformed key {key:?}, expected \"i,j\""));
    }
    parsed
}

fn rationals(v: &[String], what: &str, errors: &mut Vec<String>) -> Vec<Rational> {
    v.iter()
        .enumerate()
        .filter_map(|(i, s)| rational(s, &format!("{what}[{i}]"), errors))
        .collect()
}

/// Checks everything, then canonicalizes rational strings and keys.
pub fn validate(mut config: RunConfig) -> Result<Validated, ConfigError> {
    let mut errors = Vec::new();

    let mut a = BTreeMap::new();
    for (key, value) in &config.surface.a {
        let ij = index_pair(key, &mut errors);
        let r = rational(value, &format!("surface.a[{key}]"), &mut errors);
        if let (Some(ij), Some(r)) = (ij, r) {
            if a.insert(ij, r).is_some() {
                errors.push(format!("surface.a: duplicate key {key:?}"));
            }
        }
    }
    let mut b = BTreeMap::new();
    for (key, value) in &config.surface.b {
        let i = key.trim().parse::<usize>().ok();
        if i.is_none() {
            errors.push(format!("surface.b: malformed key {key:?}, expected \"i\""));
        }
        let r = rational(value, &format!("surface.b[{key}]"), &mut errors);
        if let (Some(i), Some(r)) = (i, r) {
            if b.insert(i, r).is_some() {
                errors.push(format!("surface.b: duplicate key {key:?}"));
            }
        }
    }
    let coefficients = match UmbrellaCoefficients::new(config.k, a.clone(), b.clone()) {
        Ok(c) => Some(c),
        Err(e) => {
            errors.push(e.to_string());
            None
        }
    };

    let curve = match &config.curve {
        CurveConfig::Mpq { m, p, q, c } => CurveSpec::Mpq { m: *m, p: *p, q: *q, c: rationals(c, "curve.c", &mut errors) },
        CurveConfig::Mp { m, p, c } => CurveSpec::Mp { m: *m, p: *p, c: rationals(c, "curve.c", &mut errors) },
        CurveConfig::General { u, v } => CurveSpec::General {
            u: rationals(u, "curve.u", &mut errors),
            v: rationals(v, "curve.v", &mut errors),
        },
    };
    if let Err(e) = curve.validate() {
        errors.push(e.to_string());
    }

    if let Some(mesh) = &config.mesh {
        if mesh.nx < 2 || mesh.ny < 2 {
            errors.push(format!("mesh: resolution must be at least 2 (got {} x {})", mesh.nx, mesh.ny));
        }
        for (name, (lo, hi)) in [("x_range", mesh.x_range), ("y_range", mesh.y_range), ("u_range", mesh.u_range), ("v_range", mesh.v_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                errors.push(format!("mesh.{name}: degenerate range [{lo}, {hi}]"));
            }
        }
    }
    if let Some(sweep) = &config.sweep {
        if sweep.draws == 0 {
            errors.push("sweep.draws must be positive".into());
        }
    }

    let Some(coefficients) = coefficients.filter(|_| errors.is_empty()) else {
        return Err(ConfigError { violations: errors });
    };
    let order = config.order.unwrap_or_else(|| default_order(&coefficients, &curve));

    config.surface.a = a.iter().map(|((i, j), r)| (format!("{i},{j}"), r.to_string())).collect();
    config.surface.b = b.iter().map(|(i, r)| (i.to_string(), r.to_string())).collect();
    config.curve = match &curve {
        CurveSpec::Mpq { m, p, q, c } => CurveConfig::Mpq { m: *m, p: *p, q: *q, c: strings(c) },
        CurveSpec::Mp { m, p, c } => CurveConfig::Mp { m: *m, p: *p, c: strings(c) },
        CurveSpec::General { u, v } => CurveConfig::General { u: strings(u), v: strings(v) },
    };
    Ok(Validated { config, coefficients, curve, order })
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}
