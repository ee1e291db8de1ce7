//! Run configuration and its resolution into concrete sample points.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spinor_lab_core::{sample_points, Kinematics, KinematicsLiteral, PhaseMode, PhasePair, SamplePoint};

use crate::error::CliError;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SWEEP_COUNT: usize = 1000;
/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "SPINOR_LAB_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KinematicsSampler {
    Random,
}

/// Either an explicit point or `"random"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KinematicsSpec {
    Explicit(KinematicsLiteral),
    Sampled(KinematicsSampler),
}

/// Either explicit `(β₊, β₋)` or a sampler mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhasesSpec {
    Explicit(PhasePair),
    Sampled(PhaseMode),
}

/// JSON run configuration. Every field is optional; command-line flags
/// override whatever the file sets.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub kinematics: Option<KinematicsSpec>,
    #[serde(default)]
    pub phases: Option<PhasesSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub with_controls: Option<bool>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_json(&read_input(path)?)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }
}

/// Read a file, with `-` meaning standard input.
pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| CliError::Io { path: path.to_owned(), message: e.to_string() })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_owned(), message: e.to_string() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Verify,
    Sweep,
}

/// Where the sample points came from, as stamped into reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    pub precision: &'static str,
    pub seed: Option<u64>,
    pub count: usize,
    pub kinematics: String,
    pub phases: String,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub points: Vec<SamplePoint>,
    pub environment: Environment,
    pub tol: f64,
    pub with_controls: bool,
}

/// Tolerance precedence: config/flag, then `SPINOR_LAB_TOL`, then the default.
pub fn resolve_tol(explicit: Option<f64>) -> Result<f64, CliError> {
    let tol = match explicit {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => {
                s.trim().parse::<f64>().map_err(|_| CliError::Invalid(format!("{TOL_ENV}={s:?} is not a number")))?
            }
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Invalid(format!("tolerance must be positive and finite, got {tol}")));
    }
    Ok(tol)
}

fn sampler_name(mode: PhaseMode) -> &'static str {
    match mode {
        PhaseMode::Generic => "generic",
        PhaseMode::UnitModulus => "unit_modulus",
        PhaseMode::Real => "real",
    }
}

/// A single explicit point, for commands that need exactly one.
pub fn explicit_point(cfg: &RunConfig) -> Result<(Kinematics, PhasePair), CliError> {
    let kin = match cfg.kinematics {
        Some(KinematicsSpec::Explicit(k)) => Kinematics::try_from(k)?,
        Some(KinematicsSpec::Sampled(_)) => {
            return Err(CliError::Invalid("this command needs explicit kinematics, not a sampler".into()))
        }
        None => return Err(CliError::Invalid("no kinematics given (use --m/--p/--theta/--phi or --config)".into())),
    };
    let phases = match cfg.phases {
        Some(PhasesSpec::Explicit(p)) => p,
        Some(PhasesSpec::Sampled(_)) => {
            return Err(CliError::Invalid("this command needs explicit phases, not a sampler".into()))
        }
        None => return Err(CliError::Invalid("no phases given (use --beta-plus/--beta-minus or --config)".into())),
    };
    Ok((kin, phases))
}

/// Turn a config into the list of points to evaluate.
///
/// Sweeps default to random kinematics, generic phases and 1000 points and
/// must involve at least one sampler. Any sampler requires a seed.
pub fn plan(cfg: &RunConfig, mode: RunMode) -> Result<Plan, CliError> {
    let kinematics = match (cfg.kinematics, mode) {
        (Some(k), _) => k,
        (None, RunMode::Sweep) => KinematicsSpec::Sampled(KinematicsSampler::Random),
        (None, RunMode::Verify) => {
            return Err(CliError::Invalid("no kinematics given (use --m/--p/--theta/--phi or --config)".into()))
        }
    };
    let phases = match (cfg.phases, mode) {
        (Some(p), _) => p,
        (None, RunMode::Sweep) => PhasesSpec::Sampled(PhaseMode::Generic),
        (None, RunMode::Verify) => {
            return Err(CliError::Invalid("no phases given (use --beta-plus/--beta-minus or --config)".into()))
        }
    };
    let explicit_kin = match kinematics {
        KinematicsSpec::Explicit(k) => Some(Kinematics::try_from(k)?),
        KinematicsSpec::Sampled(_) => None,
    };
    let (explicit_phases, phase_mode) = match phases {
        PhasesSpec::Explicit(p) => (Some(p), PhaseMode::Generic),
        PhasesSpec::Sampled(m) => (None, m),
    };
    let sampled = explicit_kin.is_none() || explicit_phases.is_none();
    if mode == RunMode::Sweep && !sampled {
        return Err(CliError::Invalid("sweep needs sampled kinematics or phases".into()));
    }
    let count = match (cfg.count, sampled, mode) {
        (Some(0), _, _) => return Err(CliError::Invalid("count must be at least 1".into())),
        (Some(n), true, _) => n,
        (Some(1) | None, false, _) => 1,
        (Some(_), false, _) => return Err(CliError::Invalid("count applies only to sampled points".into())),
        (None, true, RunMode::Sweep) => DEFAULT_SWEEP_COUNT,
        (None, true, RunMode::Verify) => 1,
    };
    let seed = match (cfg.seed, sampled) {
        (Some(s), _) => Some(s),
        (None, true) => return Err(CliError::Invalid("a seed is required whenever points are sampled".into())),
        (None, false) => None,
    };
    let points = match seed.filter(|_| sampled) {
        Some(s) => sample_points(s, count, phase_mode)
            .into_iter()
            .map(|p| SamplePoint { kin: explicit_kin.unwrap_or(p.kin), phases: explicit_phases.unwrap_or(p.phases) })
            .collect(),
        None => vec![SamplePoint {
            kin: explicit_kin.expect("explicit when not sampled"),
            phases: explicit_phases.expect("explicit when not sampled"),
        }],
    };
    let tol = resolve_tol(cfg.tol)?;
    Ok(Plan {
        points,
        environment: Environment {
            precision: "f64",
            seed,
            count,
            kinematics: if explicit_kin.is_some() { "explicit" } else { "random" }.into(),
            phases: if explicit_phases.is_some() { "explicit" } else { sampler_name(phase_mode) }.into(),
            tol,
        },
        tol,
        with_controls: cfg.with_controls.unwrap_or(false),
    })
}
