//! Command-line front end: argument parsing, result envelopes, and the
//! content-addressed result store.

pub mod commands;
pub mod config;
pub mod envelope;
pub mod golden;
pub mod store;

pub use commands::{run, CliError, Outcome};
pub use config::{Cli, RunConfig};
pub use envelope::{Check, Envelope, Status};
