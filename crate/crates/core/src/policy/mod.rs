//! Caching policies: the threshold oracle, the online tracking policy, and
//! the uniform-coded and uncoded-LFU baselines.

mod estimator;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{FileSet, PopularityDistribution, RequestProfile, SystemParams};

pub use estimator::{update_estimator, EmpiricalEstimator};

/// A policy's cached set for one slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolicyDecision {
    pub cached_set: FileSet,
    /// The set differs from the previous slot's. Always false at `t = 1`.
    pub switched: bool,
}

/// Remembers the last cached set and flags changes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SwitchTracker {
    previous: Option<FileSet>,
}

impl SwitchTracker {
    pub fn observe(&mut self, cached_set: FileSet) -> PolicyDecision {
        let switched = self.previous.as_ref().is_some_and(|prev| *prev != cached_set);
        self.previous = Some(cached_set.clone());
        PolicyDecision { cached_set, switched }
    }
}

/// Files with `p_i ≥ 1/(KM)`. For a sorted pmf this is the prefix `[N₁]`.
pub fn oracle_popular_set(popularity: &PopularityDistribution, params: &SystemParams) -> FileSet {
    popularity
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &p)| params.meets_threshold(p))
        .map(|(i, _)| i)
        .collect()
}

/// Cached set of the tracking policy: every file at `t = 1`, afterwards the
/// files whose empirical popularity reaches `1/(KM)`.
pub fn tracking_set(est: &EmpiricalEstimator, params: &SystemParams) -> FileSet {
    if est.slots_seen() == 0 {
        return FileSet::full(est.n_files());
    }
    (0..est.n_files()).filter(|&i| params.meets_threshold(est.estimate(i))).collect()
}

/// One step of the tracking policy, with switch detection against `tracker`.
pub fn tracking_policy_step(
    est: &EmpiricalEstimator,
    params: &SystemParams,
    tracker: &mut SwitchTracker,
) -> PolicyDecision {
    tracker.observe(tracking_set(est, params))
}

/// Uniform coded caching: the whole catalog, every slot.
pub fn uniform_coded_policy(params: &SystemParams) -> PolicyDecision {
    PolicyDecision { cached_set: FileSet::full(params.n_files()), switched: false }
}

/// The `M` files with the most requests so far; ties go to the lower index.
pub fn lfu_set(est: &EmpiricalEstimator, params: &SystemParams) -> Result<FileSet> {
    let slots = params.integer_cache_size().ok_or(Error::NonIntegerCache(params.cache_size()))?;
    let mut order: Vec<usize> = (0..est.n_files()).collect();
    order.sort_by(|&a, &b| est.counts()[b].cmp(&est.counts()[a]).then(a.cmp(&b)));
    Ok(order.into_iter().take(slots).collect())
}

pub fn lfu_policy_step(
    est: &EmpiricalEstimator,
    params: &SystemParams,
    tracker: &mut SwitchTracker,
) -> Result<PolicyDecision> {
    Ok(tracker.observe(lfu_set(est, params)?))
}

/// How uncoded misses are charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissAccounting {
    /// One broadcast per distinct missed file.
    #[default]
    Broadcast,
    /// One full file per missed request.
    PerRequest,
}

impl FromStr for MissAccounting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "broadcast" | "dedup" => Ok(MissAccounting::Broadcast),
            "per-request" | "per_request" => Ok(MissAccounting::PerRequest),
            other => Err(Error::InvalidConfig(format!("unknown miss accounting `{other}`"))),
        }
    }
}

/// Realized rate of uncoded caching: cached files cost nothing, misses are
/// charged per `accounting`.
pub fn lfu_realized_rate(profile: &RequestProfile, cached_set: &FileSet, accounting: MissAccounting) -> f64 {
    let mut misses: Vec<usize> =
        profile.as_slice().iter().copied().filter(|&f| !cached_set.contains(f)).collect();
    if accounting == MissAccounting::Broadcast {
        misses.sort_unstable();
        misses.dedup();
    }
    misses.len() as f64
}

/// Expected rate of uncoded caching under the true pmf:
/// `Σ_{i∉S} (1 − (1−p_i)^K)` for broadcast accounting, `Σ_{i∉S} K·p_i`
/// per request.
pub fn lfu_expected_rate(
    popularity: &PopularityDistribution,
    cached_set: &FileSet,
    n_users: usize,
    accounting: MissAccounting,
) -> f64 {
    let k = n_users as f64;
    (0..popularity.n_files())
        .filter(|&i| !cached_set.contains(i))
        .map(|i| {
            let p = popularity.prob(i);
            match accounting {
                MissAccounting::Broadcast => 1.0 - (1.0 - p).powi(n_users as i32),
                MissAccounting::PerRequest => k * p,
            }
        })
        .sum()
}

/// The policies the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolicyKind {
    Tracking,
    Oracle,
    UniformCoded,
    Lfu,
}

impl PolicyKind {
    pub fn name(&self) -> &'static str {
        match self {
            PolicyKind::Tracking => "tracking",
            PolicyKind::Oracle => "oracle",
            PolicyKind::UniformCoded => "uniform",
            PolicyKind::Lfu => "lfu",
        }
    }

    /// Whether the policy places coded content (as opposed to whole files).
    pub fn is_coded(&self) -> bool {
        !matches!(self, PolicyKind::Lfu)
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "tracking" | "online" => Ok(PolicyKind::Tracking),
            "oracle" => Ok(PolicyKind::Oracle),
            "uniform" | "uniform-coded" => Ok(PolicyKind::UniformCoded),
            "lfu" => Ok(PolicyKind::Lfu),
            other => Err(Error::InvalidConfig(format!("unknown policy `{other}`"))),
        }
    }
}

/// Per-trial state of one policy.
#[derive(Debug, Clone)]
pub struct PolicyState {
    kind: PolicyKind,
    tracker: SwitchTracker,
    oracle_set: FileSet,
}

impl PolicyState {
    pub fn new(kind: PolicyKind, params: &SystemParams, popularity: &PopularityDistribution) -> Result<Self> {
        if kind == PolicyKind::Lfu && params.integer_cache_size().is_none() {
            return Err(Error::NonIntegerCache(params.cache_size()));
        }
        Ok(PolicyState {
            kind,
            tracker: SwitchTracker::default(),
            oracle_set: oracle_popular_set(popularity, params),
        })
    }

    pub fn kind(&self) -> PolicyKind {
        self.kind
    }

    pub fn decide(&mut self, est: &EmpiricalEstimator, params: &SystemParams) -> Result<PolicyDecision> {
        Ok(match self.kind {
            PolicyKind::Tracking => tracking_policy_step(est, params, &mut self.tracker),
            PolicyKind::Oracle => self.tracker.observe(self.oracle_set.clone()),
            PolicyKind::UniformCoded => self.tracker.observe(uniform_coded_policy(params).cached_set),
            PolicyKind::Lfu => lfu_policy_step(est, params, &mut self.tracker)?,
        })
    }
}
