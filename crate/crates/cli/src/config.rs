//! Run configuration: defaults, an optional TOML key-value config file, and
//! command-line flags, in ascending precedence.

use std::path::PathBuf;

use clap::Args;
use mfao_core::{
    BcsAngles, C64, IntegrationMethod, ModelParams, Occupations, StateVector,
};

use crate::output::OutputFormat;

/// CLI failure with its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Invalid configuration or arguments (exit code 2).
    #[error("{0}")]
    Argument(String),
    /// Filesystem failure (exit code 3).
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Argument(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

pub fn io_err(path: &std::path::Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Common flags shared by every subcommand. Flags override the config file,
/// which overrides the built-in defaults.
#[derive(Debug, Args, Default, Clone)]
pub struct RunArgs {
    /// Single-particle level energy ħω
    #[arg(long, value_name = "F")]
    pub hbar_omega: Option<f64>,

    /// Pair interaction strength U
    #[arg(long, value_name = "F")]
    pub u: Option<f64>,

    /// Magnetic coupling times field intensity, g_B·B
    #[arg(long, value_name = "F")]
    pub gbb: Option<f64>,

    /// Initial pair phase θ₀
    #[arg(long, value_name = "F")]
    pub theta0: Option<f64>,

    /// Initial spin phase φ₀
    #[arg(long, value_name = "F")]
    pub phi0: Option<f64>,

    /// Initial spin mixing angle γ₀
    #[arg(long, value_name = "F")]
    pub gamma0: Option<f64>,

    /// Initial pair mixing angle ξ₀
    #[arg(long, value_name = "F")]
    pub xi0: Option<f64>,

    /// Quasiparticle occupation p₁ ∈ [0, 1]
    #[arg(long, value_name = "F")]
    pub p1: Option<f64>,

    /// Quasiparticle occupation p₂ ∈ [0, 1]
    #[arg(long, value_name = "F")]
    pub p2: Option<f64>,

    /// Initial amplitudes ρ,β,α,τ with each complex value as re:im
    #[arg(long, value_name = "R,B,A,T")]
    pub state: Option<String>,

    /// End of the time grid (grid starts at 0)
    #[arg(long, value_name = "F")]
    pub t_end: Option<f64>,

    /// Number of grid steps (grid has steps+1 points)
    #[arg(long, value_name = "N")]
    pub steps: Option<usize>,

    /// Integration method: closed_form or rk4
    #[arg(long, value_name = "METHOD")]
    pub method: Option<String>,

    /// Output format: csv or json
    #[arg(long, value_name = "FORMAT")]
    pub format: Option<String>,

    /// Output path; stdout when omitted
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Key-value (TOML) config file; flags override its entries
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Run label recorded in JSON metadata
    #[arg(long, value_name = "NAME")]
    pub label: Option<String>,
}

/// Fully resolved, validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ModelParams,
    pub angles0: BcsAngles,
    pub occupations: Occupations,
    pub state0: StateVector,
    pub t_end: f64,
    pub steps: usize,
    pub method: IntegrationMethod,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub label: String,
}

/// Raw option bag prior to validation; the config file fills unset flags.
#[derive(Debug, Default)]
struct Raw {
    hbar_omega: Option<f64>,
    u: Option<f64>,
    gbb: Option<f64>,
    theta0: Option<f64>,
    phi0: Option<f64>,
    gamma0: Option<f64>,
    xi0: Option<f64>,
    p1: Option<f64>,
    p2: Option<f64>,
    state: Option<String>,
    t_end: Option<f64>,
    steps: Option<usize>,
    method: Option<String>,
    format: Option<String>,
    out: Option<PathBuf>,
    label: Option<String>,
}

fn toml_f64(key: &str, v: &toml::Value) -> Result<f64, CliError> {
    v.as_float()
        .or_else(|| v.as_integer().map(|i| i as f64))
        .ok_or_else(|| CliError::Argument(format!("config key `{key}` must be a number")))
}

fn toml_str(key: &str, v: &toml::Value) -> Result<String, CliError> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| CliError::Argument(format!("config key `{key}` must be a string")))
}

fn load_config_file(path: &std::path::Path, raw: &mut Raw) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| CliError::Argument(format!("{}: {e}", path.display())))?;
    for (key, value) in &table {
        match key.as_str() {
            "hbar_omega" => {
                raw.hbar_omega.get_or_insert(toml_f64(key, value)?);
            }
            "u" => {
                raw.u.get_or_insert(toml_f64(key, value)?);
            }
            "gbb" => {
                raw.gbb.get_or_insert(toml_f64(key, value)?);
            }
            "theta0" => {
                raw.theta0.get_or_insert(toml_f64(key, value)?);
            }
            "phi0" => {
                raw.phi0.get_or_insert(toml_f64(key, value)?);
            }
            "gamma0" => {
                raw.gamma0.get_or_insert(toml_f64(key, value)?);
            }
            "xi0" => {
                raw.xi0.get_or_insert(toml_f64(key, value)?);
            }
            "p1" => {
                raw.p1.get_or_insert(toml_f64(key, value)?);
            }
            "p2" => {
                raw.p2.get_or_insert(toml_f64(key, value)?);
            }
            "state" => {
                raw.state.get_or_insert(toml_str(key, value)?);
            }
            "t_end" => {
                raw.t_end.get_or_insert(toml_f64(key, value)?);
            }
            "steps" => {
                let n = value.as_integer().ok_or_else(|| {
                    CliError::Argument("config key `steps` must be an integer".to_string())
                })?;
                if n < 0 {
                    return Err(CliError::Argument("steps must be >= 1".to_string()));
                }
                raw.steps.get_or_insert(n as usize);
            }
            "method" => {
                raw.method.get_or_insert(toml_str(key, value)?);
            }
            "format" => {
                raw.format.get_or_insert(toml_str(key, value)?);
            }
            "out" => {
                raw.out.get_or_insert(PathBuf::from(toml_str(key, value)?));
            }
            "label" => {
                raw.label.get_or_insert(toml_str(key, value)?);
            }
            other => {
                return Err(CliError::Argument(format!(
                    "unknown config key `{other}`"
                )))
            }
        }
    }
    Ok(())
}

/// Parse `re:im` (or a bare real part) into a complex amplitude.
fn parse_complex(part: &str) -> Result<C64, CliError> {
    let bad = |s: &str| CliError::Argument(format!("invalid complex amplitude `{s}`"));
    match part.split_once(':') {
        Some((re, im)) => Ok(C64::new(
            re.trim().parse().map_err(|_| bad(part))?,
            im.trim().parse().map_err(|_| bad(part))?,
        )),
        None => Ok(C64::new(
            part.trim().parse().map_err(|_| bad(part))?,
            0.0,
        )),
    }
}

pub fn parse_state(s: &str) -> Result<StateVector, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Argument(format!(
            "state needs 4 comma-separated amplitudes, got {}",
            parts.len()
        )));
    }
    let mut v = StateVector::zeros();
    for (k, part) in parts.iter().enumerate() {
        v[k] = parse_complex(part)?;
    }
    Ok(v)
}

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Argument(format!("{name} must be finite, got {x}")))
    }
}

impl RunConfig {
    /// Defaults are illustrative, not distinguished: ħω = 1, U = 0.5,
    /// g_B·B = 0.25, zero initial angles, occupations (0.3, 0.6), an
    /// equal-amplitude state, and a 1000-step grid to t = 10.
    pub fn resolve(args: &RunArgs) -> Result<Self, CliError> {
        let mut raw = Raw {
            hbar_omega: args.hbar_omega,
            u: args.u,
            gbb: args.gbb,
            theta0: args.theta0,
            phi0: args.phi0,
            gamma0: args.gamma0,
            xi0: args.xi0,
            p1: args.p1,
            p2: args.p2,
            state: args.state.clone(),
            t_end: args.t_end,
            steps: args.steps,
            method: args.method.clone(),
            format: args.format.clone(),
            out: args.out.clone(),
            label: args.label.clone(),
        };
        if let Some(path) = &args.config {
            load_config_file(path, &mut raw)?;
        }

        let params = ModelParams::new(
            finite("hbar_omega", raw.hbar_omega.unwrap_or(1.0))?,
            finite("u", raw.u.unwrap_or(0.5))?,
            finite("gbb", raw.gbb.unwrap_or(0.25))?,
        );
        let angles0 = BcsAngles::new(
            finite("theta0", raw.theta0.unwrap_or(0.0))?,
            finite("phi0", raw.phi0.unwrap_or(0.0))?,
            finite("gamma0", raw.gamma0.unwrap_or(0.0))?,
            finite("xi0", raw.xi0.unwrap_or(0.0))?,
        );
        let occupations = Occupations::new(raw.p1.unwrap_or(0.3), raw.p2.unwrap_or(0.6))
            .map_err(|e| CliError::Argument(e.to_string()))?;
        let state0 = match &raw.state {
            Some(s) => parse_state(s)?,
            None => StateVector::from_element(C64::from(0.5)),
        };
        if state0.norm() == 0.0 {
            return Err(CliError::Argument(
                "state vector must have nonzero norm".to_string(),
            ));
        }
        if !state0.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(CliError::Argument(
                "state amplitudes must be finite".to_string(),
            ));
        }
        let t_end = finite("t_end", raw.t_end.unwrap_or(10.0))?;
        if t_end < 0.0 {
            return Err(CliError::Argument(format!(
                "t_end must be >= 0, got {t_end}"
            )));
        }
        let steps = raw.steps.unwrap_or(1000);
        if steps < 1 {
            return Err(CliError::Argument("steps must be >= 1".to_string()));
        }
        let method = raw
            .method
            .as_deref()
            .unwrap_or("closed_form")
            .parse::<IntegrationMethod>()
            .map_err(|e| CliError::Argument(e.to_string()))?;
        let format = raw
            .format
            .as_deref()
            .unwrap_or("csv")
            .parse::<OutputFormat>()
            .map_err(CliError::Argument)?;
        Ok(RunConfig {
            params,
            angles0,
            occupations,
            state0,
            t_end,
            steps,
            method,
            format,
            out: raw.out,
            label: raw.label.unwrap_or_else(|| "run".to_string()),
        })
    }

    /// The time grid for this run: `steps + 1` uniform points on [0, t_end],
    /// collapsing to the single point {0} when t_end = 0.
    pub fn grid(&self) -> Vec<f64> {
        if self.t_end == 0.0 {
            vec![0.0]
        } else {
            mfao_core::meanfield::uniform_grid(self.t_end, self.steps)
        }
    }
}
