//! Parameter sweeps, CSV output and the gap report against the
//! closed-form expressions.

mod config;
mod sweep;
mod validate;

pub use config::{parse_list, parse_snr_grid, ExperimentConfig, Preset};
pub use sweep::{bound_rows, run_sweep, write_csv, ResultRow, CSV_HEADER};
pub use validate::{validate, CheckStatus, GapCheck, GapKind, Tolerance, ValidationReport};
