//! Experiment harness: configuration, the per-trial pipeline, and sweeps.

mod config;
mod pipeline;
mod record;
mod sweep;

pub use config::{Combination, ExperimentConfig};
pub use pipeline::{run_pipeline, run_trial, PipelineSettings, TrialKey};
pub use record::{header, TrialRecord, CENSUS_LENGTHS, FIGURE_COLUMNS, SCHEMA_VERSION, WALL_CLOCK_COLUMNS};
pub use sweep::{canonical_csv, marker_path, run_sweep, trials, SweepOptions, SweepSummary};
