use std::fmt;
use std::str::FromStr;

use crate::engine::DEFAULT_SUBSET_CAP;
use crate::error::{Error, Result};
use crate::model::{PopularityDistribution, SystemParams};
use crate::policy::{MissAccounting, PolicyKind};

/// How a slot's rate is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RateMode {
    /// Random placement and exact XOR delivery on subpackets.
    BitLevel,
    /// Expected rate of the chosen set under the true pmf.
    #[default]
    Analytic,
}

impl RateMode {
    pub fn name(&self) -> &'static str {
        match self {
            RateMode::BitLevel => "bit",
            RateMode::Analytic => "analytic",
        }
    }
}

impl FromStr for RateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bit" | "bit-level" | "bitlevel" => Ok(RateMode::BitLevel),
            "analytic" => Ok(RateMode::Analytic),
            other => Err(Error::InvalidConfig(format!("unknown rate mode `{other}`"))),
        }
    }
}

/// What regret is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KoReference {
    /// The closed-form upper bound on the oracle's rate, constant per slot.
    #[default]
    UpperBound,
    /// The oracle policy simulated alongside, slot by slot.
    PairedOracle,
}

impl KoReference {
    pub fn name(&self) -> &'static str {
        match self {
            KoReference::UpperBound => "upper",
            KoReference::PairedOracle => "paired",
        }
    }
}

impl FromStr for KoReference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" | "upper-bound" | "eq1" => Ok(KoReference::UpperBound),
            "paired" | "paired-oracle" => Ok(KoReference::PairedOracle),
            other => Err(Error::InvalidConfig(format!("unknown k_o reference `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub params: SystemParams,
    pub popularity: PopularityDistribution,
    /// Free-form description of the popularity source, for the CSV header.
    pub distribution_label: String,
    pub policies: Vec<PolicyKind>,
    pub horizon: u64,
    pub trials: u64,
    pub seed: u64,
    pub rate_mode: RateMode,
    pub ko_reference: KoReference,
    pub miss_accounting: MissAccounting,
    pub subset_cap: usize,
}

impl ExperimentConfig {
    pub fn new(params: SystemParams, popularity: PopularityDistribution, policies: Vec<PolicyKind>) -> Self {
        ExperimentConfig {
            params,
            popularity,
            distribution_label: "custom".into(),
            policies,
            horizon: 1,
            trials: 1,
            seed: 0,
            rate_mode: RateMode::default(),
            ko_reference: KoReference::default(),
            miss_accounting: MissAccounting::default(),
            subset_cap: DEFAULT_SUBSET_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.horizon == 0 {
            return Err(Error::InvalidConfig("horizon must be at least 1".into()));
        }
        if self.policies.is_empty() {
            return Err(Error::InvalidConfig("no policies selected".into()));
        }
        if self.popularity.n_files() != self.params.n_files() {
            return Err(Error::InvalidConfig(format!(
                "distribution has {} files but N = {}",
                self.popularity.n_files(),
                self.params.n_files()
            )));
        }
        if self.policies.contains(&PolicyKind::Lfu) && self.params.integer_cache_size().is_none() {
            return Err(Error::NonIntegerCache(self.params.cache_size()));
        }
        if self.rate_mode == RateMode::BitLevel && self.params.n_users() > self.subset_cap {
            return Err(Error::SubsetCapExceeded { users: self.params.n_users(), cap: self.subset_cap });
        }
        Ok(())
    }
}

/// One-line `key=value` summary, written as the CSV comment line.
impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let policies: Vec<&str> = self.policies.iter().map(PolicyKind::name).collect();
        write!(
            f,
            "n={} k={} m={} f={} dist={} policies={} horizon={} trials={} seed={} rate_mode={} ko_reference={} lfu_accounting={} cap={}",
            self.params.n_files(),
            self.params.n_users(),
            self.params.cache_size(),
            self.params.subpackets(),
            self.distribution_label,
            policies.join(","),
            self.horizon,
            self.trials,
            self.seed,
            self.rate_mode.name(),
            self.ko_reference.name(),
            match self.miss_accounting {
                MissAccounting::Broadcast => "broadcast",
                MissAccounting::PerRequest => "per-request",
            },
            self.subset_cap,
        )
    }
}
