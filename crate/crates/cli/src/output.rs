//! CSV rendering and the run manifest.

use std::fmt::Write as _;

use chiral_tmm::{SweepOutcome, SweepRow};
use serde::Serialize;

use crate::config::{EngineName, ScenarioConfig};

pub const CSV_HEADER: &str =
    "frequency_hz,theta_deg,R_co,R_cross,T_co,T_cross,R_total,T_total,rotation_deg,conservation_residual";
pub const CSV_SCHEMA_VERSION: u32 = 1;

fn num(out: &mut String, v: f64) {
    write!(out, "{v:.8e}").unwrap();
}

pub fn render_row(out: &mut String, row: &SweepRow<f64>) {
    let p = &row.powers;
    for v in [
        row.frequency_hz,
        row.theta_deg,
        p.r_co,
        p.r_cross,
        p.t_co,
        p.t_cross,
        p.r_total,
        p.t_total,
    ] {
        num(out, v);
        out.push(',');
    }
    if let Some(rot) = row.rotation_deg {
        num(out, rot);
    }
    out.push(',');
    num(out, p.conservation_residual);
    out.push('\n');
}

/// Successful rows in grid order; failed points appear only in the manifest.
pub fn render_csv(outcome: &SweepOutcome<f64>) -> String {
    let mut out = String::with_capacity(CSV_HEADER.len() + 1 + outcome.rows.len() * 160);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &outcome.rows {
        render_row(&mut out, row);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct FailureRecord {
    pub index: usize,
    pub frequency_hz: f64,
    pub theta_deg: f64,
    pub error: String,
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub csv_schema_version: u32,
    pub scenario: &'a str,
    pub config_sha256: String,
    pub engine: EngineName,
    pub points: usize,
    pub rows: usize,
    pub failures: usize,
    pub failure_details: Vec<FailureRecord>,
    pub config: &'a ScenarioConfig,
}

impl<'a> Manifest<'a> {
    pub fn new(config: &'a ScenarioConfig, outcome: &SweepOutcome<f64>) -> Self {
        Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            csv_schema_version: CSV_SCHEMA_VERSION,
            scenario: &config.name,
            config_sha256: config.hash(),
            engine: config.engine,
            points: outcome.points,
            rows: outcome.rows.len(),
            failures: outcome.failures.len(),
            failure_details: outcome
                .failures
                .iter()
                .map(|f| FailureRecord {
                    index: f.index,
                    frequency_hz: f.frequency_hz,
                    theta_deg: f.theta_deg,
                    error: f.error.to_string(),
                })
                .collect(),
            config,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serialises");
        s.push('\n');
        s
    }
}
