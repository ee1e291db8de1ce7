//! Verification harness and command implementations behind the `spinor-lab` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod suite;

pub use commands::{cmd_classify, cmd_gamma, cmd_sweep, cmd_verify, GammaRoute, Outcome};
pub use config::{Format, RunConfig};
pub use error::CliError;
pub use report::{ClassifyReport, GammaReport, VerificationReport};
pub use suite::{CheckResult, Suite};
