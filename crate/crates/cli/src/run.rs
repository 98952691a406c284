use std::fs;
use std::path::{Path, PathBuf};

use chiral_tmm::{run_sweep, SweepOutcome};

use crate::config::ScenarioConfig;
use crate::error::{CliError, ConfigError};
use crate::output::{render_csv, Manifest};

/// Evaluates the scenario's sweep.
pub fn evaluate(config: &ScenarioConfig) -> Result<SweepOutcome<f64>, ConfigError> {
    let grid = config.grid()?;
    Ok(run_sweep(&config.stack(), &grid, config.incident(), config.engine()))
}

/// Manifest path that sits next to the CSV.
pub fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("manifest.json")
}

#[derive(Debug)]
pub struct RunReport {
    pub csv: PathBuf,
    pub manifest: PathBuf,
    pub outcome: SweepOutcome<f64>,
}

/// Runs the sweep and writes the CSV and manifest. Partial failures are
/// recorded in the manifest; a sweep with no successful point is an error.
pub fn run(config: &ScenarioConfig, out: &Path) -> Result<RunReport, CliError> {
    let outcome = evaluate(config)?;
    if outcome.all_failed() {
        let first = outcome
            .failures
            .first()
            .map(|f| f.error.to_string())
            .unwrap_or_default();
        return Err(CliError::AllPointsFailed {
            points: outcome.points,
            first,
        });
    }
    let write = |path: &Path, body: String| {
        fs::write(path, body).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
    };
    write(out, render_csv(&outcome))?;
    let manifest = manifest_path(out);
    write(&manifest, Manifest::new(config, &outcome).to_json())?;
    Ok(RunReport {
        csv: out.to_path_buf(),
        manifest,
        outcome,
    })
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    ScenarioConfig::parse(&text)
}
