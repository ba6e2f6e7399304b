//! Scenario files, parameter sweeps and CSV output for the `trapnoise`
//! command-line tool.

pub mod run;
pub mod scenario;

pub use run::{csv_header, emit_csv, run_scenario, write_csv_file, RowValues, SweepRow};
pub use scenario::{Field, Mode, ModeParams, Scenario, ScenarioError, ScenarioSettings, Spacing, Sweep, SweepVariable};
