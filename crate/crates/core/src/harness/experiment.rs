use rayon::prelude::*;

use crate::error::Result;
use crate::policy::PolicyKind;

use super::config::ExperimentConfig;
use super::trial::{run_trial, TrialResult};

/// Across-trial statistics for one policy at one slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotStats {
    pub t: u64,
    pub mean_rate: f64,
    pub mean_cum_regret: f64,
    pub stderr_cum_regret: f64,
    pub mean_switches: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicySeries {
    pub policy: PolicyKind,
    pub slots: Vec<SlotStats>,
}

impl PolicySeries {
    pub fn at(&self, t: u64) -> Option<&SlotStats> {
        self.slots.get(usize::try_from(t).ok()?.checked_sub(1)?)
    }

    pub fn final_slot(&self) -> Option<&SlotStats> {
        self.slots.last()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResults {
    pub config: ExperimentConfig,
    pub series: Vec<PolicySeries>,
}

impl ExperimentResults {
    pub fn series(&self, policy: PolicyKind) -> Option<&PolicySeries> {
        self.series.iter().find(|s| s.policy == policy)
    }
}

/// Runs all trials in parallel and aggregates them in trial order, so the
/// output does not depend on the thread count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResults> {
    config.validate()?;
    let trials: Vec<TrialResult> =
        (0..config.trials).into_par_iter().map(|i| run_trial(config, i)).collect::<Result<_>>()?;
    Ok(aggregate(config, &trials))
}

/// Per-slot mean and standard error across trials.
pub fn aggregate(config: &ExperimentConfig, trials: &[TrialResult]) -> ExperimentResults {
    let n = trials.len() as f64;
    let series = config
        .policies
        .iter()
        .enumerate()
        .map(|(j, &policy)| {
            let slots = (0..config.horizon as usize)
                .map(|s| {
                    let mut rate = 0.0;
                    let mut regret = 0.0;
                    let mut switches = 0.0;
                    for trial in trials {
                        let rec = &trial.traces[j].slots[s];
                        rate += rec.rate;
                        regret += rec.cumulative_regret;
                        switches += rec.cumulative_switches as f64;
                    }
                    let mean_regret = regret / n;
                    let stderr = if trials.len() > 1 {
                        let ss: f64 = trials
                            .iter()
                            .map(|trial| (trial.traces[j].slots[s].cumulative_regret - mean_regret).powi(2))
                            .sum();
                        (ss / (n - 1.0)).sqrt() / n.sqrt()
                    } else {
                        0.0
                    };
                    SlotStats {
                        t: s as u64 + 1,
                        mean_rate: rate / n,
                        mean_cum_regret: mean_regret,
                        stderr_cum_regret: stderr,
                        mean_switches: switches / n,
                    }
                })
                .collect();
            PolicySeries { policy, slots }
        })
        .collect();
    ExperimentResults { config: config.clone(), series }
}

/// Ordinary least-squares slope of `mean_cum_regret` against `t` over the
/// inclusive slot window `[from, to]`.
pub fn regret_slope(series: &PolicySeries, from: u64, to: u64) -> Option<f64> {
    let points: Vec<(f64, f64)> = series
        .slots
        .iter()
        .filter(|s| s.t >= from && s.t <= to)
        .map(|s| (s.t as f64, s.mean_cum_regret))
        .collect();
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    Some(sxy / sxx)
}
