use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinor_lab::commands::{cmd_classify, cmd_gamma, cmd_sweep, cmd_verify, GammaRoute, Outcome};
use spinor_lab::config::{read_input, KinematicsSampler, KinematicsSpec, PhasesSpec};
use spinor_lab::{CliError, Format, RunConfig};
use spinor_lab_core::{KinematicsLiteral, PhaseMode, PhasePair, C64};

#[derive(Debug, Parser)]
#[command(name = "spinor-lab", version)]
#[command(about = "Construct flag-dipole spinors and check their algebraic identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the identity suite at one point (or a few sampled points).
    Verify {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the identity suite over seeded random points and report the worst residuals.
    Sweep {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print bilinear covariants, Fierz residuals and Lounesto class of a spinor.
    Classify {
        /// JSON spinor literal, {"psi": [...]} or four [re, im] pairs; `-` reads stdin.
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the 4x4 Gamma operator at a point.
    Gamma {
        #[command(flatten)]
        point: PointArgs,
        /// Use the closed form in g, f1, f2 and print those functions too.
        #[arg(long, conflicts_with = "spin_sum")]
        closed_form: bool,
        /// Build Gamma from the signed spin sums (default).
        #[arg(long)]
        spin_sum: bool,
    },
}

#[derive(Debug, Args)]
struct PointArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Mass, positive.
    #[arg(long)]
    m: Option<f64>,
    /// Momentum magnitude.
    #[arg(long)]
    p: Option<f64>,
    /// Polar angle in radians.
    #[arg(long)]
    theta: Option<f64>,
    /// Azimuth in radians.
    #[arg(long)]
    phi: Option<f64>,
    /// Complex phase as `re,im` (or just `re`).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    beta_plus: Option<C64>,
    /// Complex phase as `re,im` (or just `re`).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    beta_minus: Option<C64>,
    /// Sample the phases instead of fixing them.
    #[arg(long, value_enum, conflicts_with_all = ["beta_plus", "beta_minus"])]
    phases: Option<PhasesArg>,
    /// Sample the kinematics instead of fixing them.
    #[arg(long, conflicts_with_all = ["m", "p", "theta", "phi"])]
    random: bool,
    /// Seed for the ChaCha8 sampler; required whenever anything is sampled.
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance for the identity checks (default 1e-10, or SPINOR_LAB_TOL).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Number of sampled points.
    #[arg(long)]
    n: Option<usize>,
    /// Add negative controls that must be detected as failures.
    #[arg(long)]
    with_controls: bool,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum PhasesArg {
    Generic,
    UnitModulus,
    Real,
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("{t:?} is not a number"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err("expected `re,im`".into()),
    }
}

impl PointArgs {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if self.random {
            cfg.kinematics = Some(KinematicsSpec::Sampled(KinematicsSampler::Random));
        } else if self.m.is_some() || self.p.is_some() || self.theta.is_some() || self.phi.is_some() {
            let base = match cfg.kinematics {
                Some(KinematicsSpec::Explicit(k)) => Some(k),
                _ => None,
            };
            let field = |flag: Option<f64>, from_base: Option<f64>, name: &str, default: Option<f64>| {
                flag.or(from_base)
                    .or(default)
                    .ok_or_else(|| CliError::Invalid(format!("--{name} is required when giving a point")))
            };
            cfg.kinematics = Some(KinematicsSpec::Explicit(KinematicsLiteral {
                m: field(self.m, base.map(|k| k.m), "m", None)?,
                p: field(self.p, base.map(|k| k.p), "p", None)?,
                theta: field(self.theta, base.map(|k| k.theta), "theta", Some(0.0))?,
                phi: field(self.phi, base.map(|k| k.phi), "phi", Some(0.0))?,
            }));
        }
        if let Some(mode) = self.phases {
            cfg.phases = Some(PhasesSpec::Sampled(match mode {
                PhasesArg::Generic => PhaseMode::Generic,
                PhasesArg::UnitModulus => PhaseMode::UnitModulus,
                PhasesArg::Real => PhaseMode::Real,
            }));
        } else if self.beta_plus.is_some() || self.beta_minus.is_some() {
            let base = match cfg.phases {
                Some(PhasesSpec::Explicit(p)) => Some(p),
                _ => None,
            };
            let plus = self.beta_plus.or(base.map(|p| p.beta_plus()));
            let minus = self.beta_minus.or(base.map(|p| p.beta_minus()));
            match (plus, minus) {
                (Some(a), Some(b)) => cfg.phases = Some(PhasesSpec::Explicit(PhasePair::new(a, b)?)),
                _ => return Err(CliError::Invalid("give both --beta-plus and --beta-minus".into())),
            }
        }
        cfg.seed = self.seed.or(cfg.seed);
        cfg.tol = self.tol.or(cfg.tol);
        cfg.format = self.format.or(cfg.format);
        cfg.out = self.out.or(cfg.out);
        Ok(cfg)
    }
}

fn with_run(point: PointArgs, run: RunArgs) -> Result<RunConfig, CliError> {
    let mut cfg = point.into_config()?;
    cfg.count = run.n.or(cfg.count);
    if run.with_controls {
        cfg.with_controls = Some(true);
    }
    Ok(cfg)
}

fn dispatch(cli: Cli) -> Result<(Outcome, Option<PathBuf>), CliError> {
    match cli.command {
        Command::Verify { point, run } => {
            let cfg = with_run(point, run)?;
            Ok((cmd_verify(&cfg)?, cfg.out))
        }
        Command::Sweep { point, run } => {
            let cfg = with_run(point, run)?;
            Ok((cmd_sweep(&cfg)?, cfg.out))
        }
        Command::Classify { file, format, out } => {
            let text = read_input(&file)?;
            Ok((cmd_classify(&text, format.unwrap_or_default())?, out))
        }
        Command::Gamma { point, closed_form, .. } => {
            let cfg = point.into_config()?;
            let route = if closed_form { GammaRoute::ClosedForm } else { GammaRoute::SpinSum };
            Ok((cmd_gamma(&cfg, route)?, cfg.out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, out) = match dispatch(cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("spinor-lab: {e}");
            return ExitCode::from(2);
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &outcome.output) {
                eprintln!("spinor-lab: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.output),
    }
    if let Some(d) = &outcome.diagnostic {
        eprintln!("spinor-lab: {d}");
    }
    ExitCode::from(outcome.code)
}
