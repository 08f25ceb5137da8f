//! Experiment harness for the degreelab random-network laboratory: config
//! parsing, experiment runners, and run manifests. The `degreelab` binary in
//! this crate is a thin command-line front end over these pieces.

pub mod config;
pub mod experiments;
pub mod manifest;

pub use config::{ExperimentConfig, ExperimentKind, HarnessError};
pub use experiments::run_experiment;
pub use manifest::{FileDigest, RunManifest, Verdict};
