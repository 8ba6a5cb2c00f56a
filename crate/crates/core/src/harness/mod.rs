//! Simulation harness: configuration, trial execution, metrics, CSV output.

pub mod config;
pub mod csv;
pub mod metrics;
pub mod run;

pub use config::{ConfigError, RunConfig};
pub use csv::{
    aggregate_to_csv, read_trace_csv, trace_to_csv, write_aggregate_csv, write_trace_csv, CsvError,
};
pub use metrics::{
    rotation_error, translation_error, velocity_error, ErrorRecord, ErrorSummary, ErrorTrace,
};
pub use run::{
    aggregate, run_monte_carlo, run_trial, run_trial_report, trial_seed, AggregateRecord,
    Diagnostics, MonteCarloResult, TrialError, TrialReport,
};
