use rand_chacha::ChaCha8Rng;

use crate::bounds::oracle_rate_upper;
use crate::engine::{approx_rate, build_delivery, sample_placement, Placement};
use crate::error::Result;
use crate::model::{FileSet, RequestProfile, RequestSampler, StreamSeed};
use crate::policy::{
    lfu_expected_rate, lfu_realized_rate, oracle_popular_set, EmpiricalEstimator, PolicyKind, PolicyState,
};

use super::config::{ExperimentConfig, KoReference, RateMode};

/// Placement lane shared by the oracle policy and the paired oracle
/// reference, so both see the same caches.
const ORACLE_LANE: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotRecord {
    pub t: u64,
    pub set_size: usize,
    pub rate: f64,
    pub regret: f64,
    pub cumulative_regret: f64,
    pub switched: bool,
    pub cumulative_switches: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyTrace {
    pub policy: PolicyKind,
    pub slots: Vec<SlotRecord>,
}

impl PolicyTrace {
    pub fn total_rate(&self) -> f64 {
        self.slots.iter().map(|s| s.rate).sum()
    }

    pub fn total_regret(&self) -> f64 {
        self.slots.last().map_or(0.0, |s| s.cumulative_regret)
    }

    pub fn switches(&self) -> u64 {
        self.slots.last().map_or(0, |s| s.cumulative_switches)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial: u64,
    pub seed: u64,
    pub traces: Vec<PolicyTrace>,
}

impl TrialResult {
    pub fn trace(&self, policy: PolicyKind) -> Option<&PolicyTrace> {
        self.traces.iter().find(|t| t.policy == policy)
    }
}

/// Bit-level state of one coded policy: its current placement and the
/// stream it is drawn from.
struct CodedCaches {
    rng: ChaCha8Rng,
    placement: Option<Placement>,
}

impl CodedCaches {
    fn realized_rate(
        &mut self,
        config: &ExperimentConfig,
        set: &FileSet,
        refresh: bool,
        profile: &RequestProfile,
    ) -> Result<f64> {
        if refresh || self.placement.is_none() {
            self.placement = Some(sample_placement(&config.params, set, &mut self.rng));
        }
        let placement = self.placement.as_ref().expect("placement sampled above");
        Ok(build_delivery(profile, &placement.caches, &placement.coded_files, config.subset_cap)?.rate())
    }
}

/// Analytic charge for a coded set: the approximate rate, capped at `K`
/// since the server can always unicast every request.
fn analytic_coded_rate(config: &ExperimentConfig, set: &FileSet) -> f64 {
    approx_rate(&config.params, set, &config.popularity).min(config.params.n_users() as f64)
}

/// Runs every configured policy for `horizon` slots on one shared request
/// stream.
///
/// Each slot: policies pick their sets from requests seen so far, requests
/// are drawn, each policy's rate is measured, and the estimator absorbs the
/// requests.
pub fn run_trial(config: &ExperimentConfig, trial: u64) -> Result<TrialResult> {
    config.validate()?;
    let params = &config.params;
    let seed = StreamSeed::new(config.seed);
    let mut request_rng = seed.requests(trial);
    let sampler = RequestSampler::new(&config.popularity);
    let mut estimator = EmpiricalEstimator::new(params.n_files(), params.n_users());

    let mut states = config
        .policies
        .iter()
        .map(|&kind| PolicyState::new(kind, params, &config.popularity))
        .collect::<Result<Vec<_>>>()?;
    let lane = |j: usize, kind: PolicyKind| {
        if kind == PolicyKind::Oracle {
            ORACLE_LANE
        } else {
            j as u64
        }
    };
    let mut caches: Vec<CodedCaches> = config
        .policies
        .iter()
        .enumerate()
        .map(|(j, &kind)| CodedCaches { rng: seed.placement(trial, lane(j, kind)), placement: None })
        .collect();

    let oracle_set = oracle_popular_set(&config.popularity, params);
    let upper_reference = oracle_rate_upper(&config.popularity, params);
    let mut reference_caches = CodedCaches { rng: seed.placement(trial, ORACLE_LANE), placement: None };

    let mut traces: Vec<PolicyTrace> = config
        .policies
        .iter()
        .map(|&policy| PolicyTrace { policy, slots: Vec::with_capacity(config.horizon as usize) })
        .collect();

    for t in 1..=config.horizon {
        let decisions =
            states.iter_mut().map(|s| s.decide(&estimator, params)).collect::<Result<Vec<_>>>()?;
        let profile = sampler.sample(params.n_users(), &mut request_rng);

        let reference = match (config.ko_reference, config.rate_mode) {
            (KoReference::UpperBound, _) => upper_reference,
            (KoReference::PairedOracle, RateMode::Analytic) => analytic_coded_rate(config, &oracle_set),
            (KoReference::PairedOracle, RateMode::BitLevel) => {
                reference_caches.realized_rate(config, &oracle_set, false, &profile)?
            }
        };

        for (j, decision) in decisions.iter().enumerate() {
            let kind = config.policies[j];
            let set = &decision.cached_set;
            let rate = match (config.rate_mode, kind.is_coded()) {
                (RateMode::Analytic, true) => analytic_coded_rate(config, set),
                (RateMode::Analytic, false) => {
                    lfu_expected_rate(&config.popularity, set, params.n_users(), config.miss_accounting)
                }
                (RateMode::BitLevel, true) => {
                    caches[j].realized_rate(config, set, decision.switched, &profile)?
                }
                (RateMode::BitLevel, false) => lfu_realized_rate(&profile, set, config.miss_accounting),
            };
            let regret = rate - reference;
            let slots = &mut traces[j].slots;
            let (cum_regret, cum_switches) =
                slots.last().map_or((0.0, 0), |s| (s.cumulative_regret, s.cumulative_switches));
            slots.push(SlotRecord {
                t,
                set_size: set.len(),
                rate,
                regret,
                cumulative_regret: cum_regret + regret,
                switched: decision.switched,
                cumulative_switches: cum_switches + u64::from(decision.switched),
            });
        }

        estimator.update(&profile);
    }

    Ok(TrialResult { trial, seed: config.seed, traces })
}
