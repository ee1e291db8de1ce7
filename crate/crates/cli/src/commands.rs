//! The four subcommands, independent of argument parsing.

use serde::Deserialize;
use spinor_lab_core::complex_serde::{mat4_to_pairs, vec4_from_pairs};
use spinor_lab_core::{
    closed_form_functions, gamma_closed_form, gamma_from_spin_sums, CVec4, SpinorLabel, SpinorLiteral,
};

use crate::config::{explicit_point, plan, resolve_tol, Format, RunConfig, RunMode};
use crate::error::CliError;
use crate::report::{
    classify_text, gamma_text, to_json, verification_text, ClassifyReport, GammaReport, PointDetail,
    VerificationReport, SCHEMA_VERSION,
};
use crate::suite::Suite;

/// Rendered output plus the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub output: String,
    /// One-line summary for the error stream when something failed.
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { code: 0, output, diagnostic: None }
    }
}

fn run_suite(cfg: &RunConfig, mode: RunMode) -> Result<VerificationReport, CliError> {
    let plan = plan(cfg, mode)?;
    let suite = Suite::new(plan.tol, plan.with_controls);
    let outcome = suite.run(&plan.points);
    let detail = match (mode, plan.points.as_slice()) {
        (RunMode::Verify, [only]) => PointDetail::compute(only.kin, only.phases, plan.tol).ok(),
        _ => None,
    };
    let command = match mode {
        RunMode::Verify => "verify",
        RunMode::Sweep => "sweep",
    };
    Ok(VerificationReport::new(command, plan.environment, outcome, detail))
}

fn suite_outcome(report: &VerificationReport, format: Format) -> Outcome {
    let output = match format {
        Format::Json => to_json(report),
        Format::Text => verification_text(report),
    };
    if report.overall {
        return Outcome::ok(output);
    }
    let mut failing: Vec<&str> = report.failing().map(|c| c.name).collect();
    if !report.errors.is_empty() {
        failing.push("evaluation errors");
    }
    Outcome { code: 1, output, diagnostic: Some(format!("verification failed: {}", failing.join(", "))) }
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    Ok(suite_outcome(&run_suite(cfg, RunMode::Verify)?, cfg.format()))
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    Ok(suite_outcome(&run_suite(cfg, RunMode::Sweep)?, cfg.format()))
}

pub fn verify_report(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    run_suite(cfg, RunMode::Verify)
}

pub fn sweep_report(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    run_suite(cfg, RunMode::Sweep)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ClassifyInput {
    Raw([[f64; 2]; 4]),
    Psi { psi: [[f64; 2]; 4] },
    Literal(SpinorLiteral),
}

/// Parse a spinor literal, `{"psi": [...]}` or a bare array of four `[re, im]` pairs.
pub fn parse_spinor(text: &str) -> Result<(CVec4, Option<SpinorLabel>), CliError> {
    let input: ClassifyInput = serde_json::from_str(text).map_err(|e| {
        CliError::Parse(format!("expected a spinor literal, {{\"psi\": [...]}} or four [re, im] pairs ({e})"))
    })?;
    match input {
        ClassifyInput::Raw(p) | ClassifyInput::Psi { psi: p } => {
            if p.iter().flatten().any(|x| !x.is_finite()) {
                return Err(CliError::Invalid("spinor components must be finite".into()));
            }
            Ok((vec4_from_pairs(&p), None))
        }
        ClassifyInput::Literal(lit) => {
            let s = lit.build()?;
            Ok((s.psi, Some(s.label)))
        }
    }
}

pub fn cmd_classify(text: &str, format: Format) -> Result<Outcome, CliError> {
    let (psi, label) = parse_spinor(text)?;
    let report = ClassifyReport::compute(psi, label)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&report),
        Format::Text => classify_text(&report),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaRoute {
    #[default]
    SpinSum,
    ClosedForm,
}

pub fn gamma_report(cfg: &RunConfig, route: GammaRoute) -> Result<GammaReport, CliError> {
    let (kin, phases) = explicit_point(cfg)?;
    resolve_tol(cfg.tol)?;
    let (gamma, functions) = match route {
        GammaRoute::SpinSum => (gamma_from_spin_sums(kin, phases)?, None),
        GammaRoute::ClosedForm => (gamma_closed_form(kin, phases), Some(closed_form_functions(&kin, &phases))),
    };
    Ok(GammaReport {
        schema_version: SCHEMA_VERSION,
        source: gamma.source,
        kinematics: kin.literal(),
        phases,
        matrix: mat4_to_pairs(&gamma.matrix),
        functions,
    })
}

pub fn cmd_gamma(cfg: &RunConfig, route: GammaRoute) -> Result<Outcome, CliError> {
    let report = gamma_report(cfg, route)?;
    Ok(Outcome::ok(match cfg.format() {
        Format::Json => to_json(&report),
        Format::Text => gamma_text(&report),
    }))
}
