//! Experiment reports and their JSON/CSV forms.
//!
//! Reports hold only quantities fixed by the config and seed, so two runs
//! of the same config write identical bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{certified_distance, Estimate, ExperimentConfig};
use crate::error::{Error, Result};
use crate::property::Property;
use crate::wgraph::WeightedGraph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub input: String,
    pub property: String,
    pub variant: String,
    pub sample_size: usize,
    pub trials: u64,
    pub seed: u64,
    pub accepts: u64,
    pub rejects: u64,
    /// Fraction of rejecting trials.
    pub reject_estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Exact distance of the input from the property, as `p/q`, when an exact method applies.
    pub distance: Option<String>,
    pub distance_method: Option<String>,
}

impl ExperimentReport {
    pub fn new(cfg: &ExperimentConfig, wg: &WeightedGraph, p: &Property, est: Estimate) -> Self {
        let (distance, distance_method) = match certified_distance(wg, p) {
            Some((d, m)) => (Some(d), Some(m)),
            None => (None, None),
        };
        ExperimentReport {
            name: cfg.name.clone().unwrap_or_default(),
            input: cfg.input.describe(),
            property: p.name().to_string(),
            variant: cfg.tester.variant.id().to_string(),
            sample_size: cfg.tester.sample_size,
            trials: est.trials,
            seed: cfg.seed,
            accepts: est.trials - est.successes,
            rejects: est.successes,
            reject_estimate: est.estimate,
            ci_low: est.ci_low,
            ci_high: est.ci_high,
            distance,
            distance_method,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub target: f64,
    /// Smallest swept sample size whose lower rejection bound reaches the target.
    pub minimal_sample_size: Option<usize>,
    pub reports: Vec<ExperimentReport>,
}

pub fn reports_to_json(reports: &[ExperimentReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize") + "\n"
}

pub fn reports_from_json(text: &str) -> Result<Vec<ExperimentReport>> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })
}

pub fn reports_to_csv(reports: &[ExperimentReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(r).map_err(|e| Error::input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn reports_from_csv(text: &str) -> Result<Vec<ExperimentReport>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| {
            r.map_err(|e: csv::Error| Error::Parse {
                line: e.position().map_or(0, |p| p.line() as usize),
                msg: e.to_string(),
            })
        })
        .collect()
}

/// Writes CSV for a `.csv` path and JSON otherwise.
pub fn persist(reports: &[ExperimentReport], path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => reports_to_csv(reports)?,
        _ => reports_to_json(reports),
    };
    std::fs::write(path, text)?;
    Ok(())
}
