//! Monte Carlo estimation, experiment configs, reports and verification suites.
//!
//! Trial `t` of an experiment with seed `s` runs with the seed
//! `trial_seed(s, t)`, so two experiments with the same seed see the same
//! random numbers in the same trials.

mod config;
mod report;
mod suite;

pub use config::{ExperimentConfig, InputSpec, SweepSpec, SEED_ENV};
pub use report::{
    persist, reports_from_csv, reports_from_json, reports_to_csv, reports_to_json, ExperimentReport, SweepReport,
};
pub use suite::{verify_suite, CheckResult, SuiteReport, SUITES};

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distance::{distance_auto, monotone_distance_within, BRUTE_FORCE_CAP, MONOTONE_CAP};
use crate::error::{Error, Result};
use crate::property::Property;
use crate::sampling::{rng, stream_id};
use crate::tester::{run_tester, TesterConfig};
use crate::wgraph::WeightedGraph;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Seed of trial `t` for an experiment seeded with `seed`.
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    rng(seed, stream_id("trial", t)).next_u64()
}

/// Wilson score interval at 95% for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let den = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / den;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / den;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Estimate {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(successes, trials);
        Estimate {
            trials,
            successes,
            estimate: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
            ci_low,
            ci_high,
        }
    }
}

/// Probability that `event` holds, over `trials` runs seeded by [`trial_seed`].
/// Trials run in parallel; the count does not depend on scheduling.
pub fn estimate_probability<F>(event: F, trials: u64, seed: u64) -> Result<Estimate>
where
    F: Fn(u64) -> Result<bool> + Sync,
{
    if trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    let successes = (0..trials)
        .into_par_iter()
        .map(|t| event(trial_seed(seed, t)).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(Estimate::from_counts(successes, trials))
}

/// Search budget for the exact distance attached to reports.
pub const REPORT_NODE_CAP: u64 = 20_000;

/// Exact distance when the instance is within reach of an exact method
/// (`None` when the search would exceed its budget).
pub fn certified_distance(wg: &WeightedGraph, p: &Property) -> Option<(String, String)> {
    let reachable = p.closed_form().is_some()
        || wg.n() <= BRUTE_FORCE_CAP
        || (p.forbidden_subgraphs().is_some() && wg.n() <= MONOTONE_CAP);
    if !reachable {
        return None;
    }
    let method = if p.closed_form().is_some() {
        "closed-form"
    } else if wg.n() <= BRUTE_FORCE_CAP {
        "brute-force"
    } else {
        "hitting-set search"
    };
    let r = match p.forbidden_subgraphs() {
        Some(fam) if p.closed_form().is_none() && wg.n() > BRUTE_FORCE_CAP => {
            monotone_distance_within(wg, fam, REPORT_NODE_CAP)
        }
        _ => distance_auto(wg, p),
    };
    r.ok().map(|r| (r.distance.to_string(), method.to_string()))
}

/// Runs the configured tester `trials` times and counts rejections.
pub fn run_trials(wg: &WeightedGraph, p: &Property, tester: &TesterConfig, trials: u64, seed: u64) -> Result<Estimate> {
    estimate_probability(|s| Ok(!run_tester(wg, p, tester, s)?.accepted()), trials, seed)
}

/// Executes an experiment; persists the report when the config names an output.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let wg = cfg.load_input()?;
    let p = Property::from_id(&cfg.property)?;
    let est = run_trials(&wg, &p, &cfg.tester, cfg.trials, cfg.seed)?;
    let report = ExperimentReport::new(cfg, &wg, &p, est);
    if let Some(path) = &cfg.output {
        persist(std::slice::from_ref(&report), path)?;
    }
    Ok(report)
}

/// Runs the experiment at every sample size of the sweep and reports the
/// smallest one whose rejection interval lies at or above the target.
pub fn sweep(cfg: &ExperimentConfig) -> Result<SweepReport> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::input("config has no [sweep] table"))?;
    let target = spec.target_value()?;
    let wg = cfg.load_input()?;
    let p = Property::from_id(&cfg.property)?;
    let mut reports = Vec::new();
    let mut minimal = None;
    for s in spec.sizes()? {
        let mut tester = cfg.tester.clone();
        tester.sample_size = s;
        let est = run_trials(&wg, &p, &tester, cfg.trials, cfg.seed)?;
        let mut sub = cfg.clone();
        sub.tester = tester;
        let r = ExperimentReport::new(&sub, &wg, &p, est);
        let hit = r.ci_low >= target;
        reports.push(r);
        if hit && minimal.is_none() {
            minimal = Some(s);
            if spec.stop_at_first {
                break;
            }
        }
    }
    let out = SweepReport {
        target,
        minimal_sample_size: minimal,
        reports,
    };
    if let Some(path) = &cfg.output {
        persist(&out.reports, path)?;
    }
    Ok(out)
}
