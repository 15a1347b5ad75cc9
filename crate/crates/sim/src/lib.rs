//! Experiment harness around `extdomain-core`: configuration presets,
//! frozen-coefficient verification runs, threshold sweeps, coupled-system
//! comparisons between the extended and scaled schemes, and CSV output.

pub mod config;
pub mod error;
pub mod harness;
pub mod output;

pub use config::{Case, Overrides, Settings};
pub use error::HarnessError;
pub use harness::{relative_radius_error, run_case1, run_case2, sweep_thresholds, ErrorReport, RunOutput, SweepTable};
