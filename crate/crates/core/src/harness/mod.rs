//! Monte Carlo driver: runs policies on shared request streams and
//! aggregates rate, regret and switching statistics.

mod config;
mod experiment;
mod output;
mod trial;

pub use config::{ExperimentConfig, KoReference, RateMode};
pub use experiment::{aggregate, regret_slope, run_experiment, ExperimentResults, PolicySeries, SlotStats};
pub use output::{format_sig6, read_results_csv, write_results_csv, ResultRow, CSV_HEADER};
pub use trial::{run_trial, PolicyTrace, SlotRecord, TrialResult};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{PopularityDistribution, SystemParams};
    use crate::policy::{MissAccounting, PolicyKind};

    fn config(policies: Vec<PolicyKind>) -> ExperimentConfig {
        let params = SystemParams::new(6, 4, 2.0, 40).unwrap();
        let p = PopularityDistribution::zipf(6, 1.0).unwrap();
        let mut c = ExperimentConfig::new(params, p, policies);
        c.horizon = 30;
        c.trials = 4;
        c.seed = 11;
        c
    }

    #[test]
    fn invalid_configs_rejected() {
        let mut c = config(vec![PolicyKind::Tracking]);
        c.trials = 0;
        assert!(run_experiment(&c).is_err());
        let mut c = config(vec![PolicyKind::Tracking]);
        c.horizon = 0;
        assert!(run_experiment(&c).is_err());
        let mut c = config(vec![]);
        c.horizon = 3;
        assert!(run_experiment(&c).is_err());
        let mut c = config(vec![PolicyKind::Tracking]);
        c.rate_mode = RateMode::BitLevel;
        c.subset_cap = 3;
        assert!(matches!(run_experiment(&c), Err(crate::Error::SubsetCapExceeded { users: 4, cap: 3 })));
    }

    #[test]
    fn single_slot_has_no_switch() {
        let mut c = config(vec![PolicyKind::Tracking, PolicyKind::Oracle]);
        c.horizon = 1;
        let r = run_trial(&c, 0).unwrap();
        for trace in &r.traces {
            assert_eq!(trace.slots.len(), 1);
            assert_eq!(trace.switches(), 0);
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        for mode in [RateMode::Analytic, RateMode::BitLevel] {
            let mut c = config(vec![PolicyKind::Tracking, PolicyKind::UniformCoded, PolicyKind::Lfu]);
            c.rate_mode = mode;
            assert_eq!(run_experiment(&c).unwrap(), run_experiment(&c).unwrap());
        }
    }

    #[test]
    fn policies_share_request_stream() {
        let mut a = config(vec![PolicyKind::Tracking, PolicyKind::Lfu]);
        a.rate_mode = RateMode::BitLevel;
        a.miss_accounting = MissAccounting::PerRequest;
        let mut b = a.clone();
        b.policies = vec![PolicyKind::UniformCoded, PolicyKind::Lfu];
        for trial in 0..3 {
            let ra = run_trial(&a, trial).unwrap();
            let rb = run_trial(&b, trial).unwrap();
            assert_eq!(ra.trace(PolicyKind::Lfu), rb.trace(PolicyKind::Lfu));
        }
    }

    #[test]
    fn paired_oracle_has_zero_regret() {
        for mode in [RateMode::Analytic, RateMode::BitLevel] {
            let mut c = config(vec![PolicyKind::Oracle, PolicyKind::Tracking]);
            c.rate_mode = mode;
            c.ko_reference = KoReference::PairedOracle;
            let r = run_trial(&c, 2).unwrap();
            let oracle = r.trace(PolicyKind::Oracle).unwrap();
            assert!(oracle.slots.iter().all(|s| s.regret == 0.0), "{mode:?}");
        }
    }

    #[test]
    fn oracle_never_switches() {
        let r = run_trial(&config(vec![PolicyKind::Oracle, PolicyKind::UniformCoded]), 0).unwrap();
        assert!(r.traces.iter().all(|t| t.switches() == 0));
    }

    #[test]
    fn cumulative_regret_is_running_sum() {
        let r = run_trial(&config(vec![PolicyKind::Tracking]), 1).unwrap();
        let mut acc = 0.0;
        for s in &r.traces[0].slots {
            acc += s.regret;
            assert!((s.cumulative_regret - acc).abs() < 1e-9);
        }
    }

    #[test]
    fn csv_round_trip() {
        let c = config(vec![PolicyKind::Tracking, PolicyKind::Lfu]);
        let results = run_experiment(&c).unwrap();
        let mut buf = Vec::new();
        write_results_csv(&results, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# config: n=6 k=4 m=2 f=40"));
        assert_eq!(text.lines().nth(1).unwrap(), CSV_HEADER.join(","));
        let rows = read_results_csv(text.as_bytes()).unwrap();
        assert_eq!(rows.len(), 60);
        for row in &rows {
            let series = results.series.iter().find(|s| s.policy.name() == row.policy).unwrap();
            let stats = series.at(row.t).unwrap();
            assert!(
                (row.mean_cum_regret - stats.mean_cum_regret).abs()
                    <= 1e-5 * stats.mean_cum_regret.abs().max(1.0)
            );
            assert!((row.mean_rate - stats.mean_rate).abs() <= 1e-5 * stats.mean_rate.abs().max(1.0));
        }
    }

    #[test]
    fn empty_results_have_header_only() {
        let c = config(vec![PolicyKind::Tracking]);
        let results = ExperimentResults { config: c, series: vec![] };
        let mut buf = Vec::new();
        write_results_csv(&results, &mut buf).unwrap();
        let rows = read_results_csv(buf.as_slice()).unwrap();
        assert!(rows.is_empty());
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 2);
    }

    #[test]
    fn slope_of_linear_series() {
        let series = PolicySeries {
            policy: PolicyKind::Tracking,
            slots: (1..=10)
                .map(|t| SlotStats {
                    t,
                    mean_rate: 0.0,
                    mean_cum_regret: 3.0 * t as f64 + 1.0,
                    stderr_cum_regret: 0.0,
                    mean_switches: 0.0,
                })
                .collect(),
        };
        assert!((regret_slope(&series, 2, 9).unwrap() - 3.0).abs() < 1e-12);
        assert!(regret_slope(&series, 5, 5).is_none());
    }
}
