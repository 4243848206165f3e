//! Randomized decodability checker.

use rand::Rng;

use crate::model::{FileSet, RequestProfile, StreamSeed, SystemParams};

use super::decode::{decode_with, CacheView, StoredCaches};
use super::delivery::{build_delivery, DEFAULT_SUBSET_CAP};
use super::placement::{sample_placement, CacheState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzConfig {
    pub trials: u64,
    pub seed: u64,
    pub max_files: usize,
    pub max_users: usize,
    pub max_cache: f64,
    pub max_subpackets: usize,
    /// Flip the content of one cached subpacket that some user relies on.
    pub corrupt: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 1000,
            seed: 0,
            max_files: 6,
            max_users: 5,
            max_cache: 3.0,
            max_subpackets: 64,
            corrupt: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FuzzReport {
    pub trials: u64,
    /// Trials in which at least one user failed to decode.
    pub failures: u64,
    /// Trials in which a corruption target existed (corrupt mode only).
    pub corrupted: u64,
    pub first_failure: Option<String>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tampered<'a> {
    inner: StoredCaches<'a>,
    target: (usize, usize, usize),
}

impl CacheView for Tampered<'_> {
    fn read(&self, user: usize, file: usize, sub: usize) -> Option<u64> {
        let value = self.inner.read(user, file, sub)?;
        Some(if (user, file, sub) == self.target { value ^ 1 } else { value })
    }
}

/// Cached subpackets `user` reads while decoding: its own file's cached
/// part and the side information used to cancel other operands.
fn relied_on(
    user: usize,
    profile: &RequestProfile,
    caches: &[CacheState],
    tx: &super::Transmission,
) -> Vec<(usize, usize, usize)> {
    let file = profile.file_of(user);
    let mut out: Vec<_> = caches[user].cached_subpackets(file).map(|j| (user, file, j)).collect();
    for msg in &tx.coded {
        let Some(own) = msg.term_for(user) else {
            continue;
        };
        for other in msg.terms.iter().filter(|t| t.user != user) {
            out.extend(other.subpackets.iter().take(own.subpackets.len()).map(|&j| (user, other.file, j)));
        }
    }
    out
}

/// Draws random instances (catalog, users, cache size, granularity, cached
/// set, requests), runs placement and delivery, and decodes every user.
pub fn fuzz_decodability(config: &FuzzConfig) -> FuzzReport {
    let seed = StreamSeed::new(config.seed);
    let mut report = FuzzReport { trials: config.trials, ..FuzzReport::default() };

    for trial in 0..config.trials {
        let mut rng = seed.fuzz(trial);
        let n = rng.random_range(1..=config.max_files);
        let k = rng.random_range(1..=config.max_users);
        let max_tenths = (config.max_cache.min(n as f64) * 10.0).round() as u32;
        let m = rng.random_range(1..=max_tenths.max(1)) as f64 / 10.0;
        let f = rng.random_range(1..=config.max_subpackets);
        let params = SystemParams::new(n, k, m, f).expect("fuzz parameters are valid");
        let cached_set: FileSet = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        let profile = RequestProfile::new((0..k).map(|_| rng.random_range(0..n)).collect());

        let placement = sample_placement(&params, &cached_set, &mut rng);
        let tx = match build_delivery(&profile, &placement.caches, &placement.coded_files, DEFAULT_SUBSET_CAP)
        {
            Ok(tx) => tx,
            Err(err) => {
                report.failures += 1;
                report.first_failure.get_or_insert(format!("trial {trial}: {err}"));
                continue;
            }
        };

        let honest = StoredCaches(&placement.caches);
        let mut target = None;
        if config.corrupt {
            let candidates: Vec<_> =
                (0..k).flat_map(|u| relied_on(u, &profile, &placement.caches, &tx)).collect();
            if !candidates.is_empty() {
                target = Some(candidates[rng.random_range(0..candidates.len())]);
                report.corrupted += 1;
            }
        }

        let failed_user = (0..k).find(|&user| {
            let outcome = match target {
                Some(target) => decode_with(
                    user,
                    &profile,
                    &Tampered { inner: StoredCaches(&placement.caches), target },
                    &tx,
                ),
                None => decode_with(user, &profile, &honest, &tx),
            };
            !outcome.is_success()
        });
        if let Some(user) = failed_user {
            report.failures += 1;
            report.first_failure.get_or_insert(format!(
                "trial {trial}: N={n} K={k} M={m} F={f} S={cached_set} user {} failed",
                user + 1
            ));
        }
    }
    report
}
