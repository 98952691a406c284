//! Scenario files, built-in presets and CSV output for the `chiral-tmm`
//! command-line tool.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod run;

pub use config::ScenarioConfig;
pub use error::{CliError, ConfigError};
pub use output::CSV_HEADER;
pub use run::{evaluate, manifest_path, run};
