//! Library side of the `rank2sep` command: file format, reports and the
//! subcommand implementations.
//!
//! Exit codes: 0 separable or success, 1 entangled, 2 parse or usage error,
//! 3 state-invariant violation, 4 density matrix not rank two, 5 a `--verify`
//! cross-check contradicted a separable verdict.

pub mod commands;
pub mod error;
pub mod format;
pub mod json;
pub mod report;

pub use commands::{GenerateKind, GenerateRequest, Outcome};
pub use error::CliError;
