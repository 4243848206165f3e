use crate::error::{Error, Result};
use crate::model::{PopularityDistribution, SystemParams, THRESHOLD_EPS};
use crate::policy::oracle_popular_set;

/// `[x]₊`
pub fn positive_part(x: f64) -> f64 {
    x.max(0.0)
}

/// Gaps `Δ_i = |p_i − 1/(KM)|` and their minimum `Δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapVector {
    pub deltas: Vec<f64>,
    pub delta_min: f64,
}

impl GapVector {
    pub fn new(popularity: &PopularityDistribution, params: &SystemParams) -> Self {
        let threshold = params.threshold();
        let deltas: Vec<f64> = popularity.probs().iter().map(|p| (p - threshold).abs()).collect();
        let delta_min = deltas.iter().copied().fold(f64::INFINITY, f64::min);
        GapVector { deltas, delta_min }
    }

    pub fn sum(&self) -> f64 {
        self.deltas.iter().sum()
    }

    /// Errors when some file sits on the threshold.
    pub fn require_positive(&self) -> Result<()> {
        if self.delta_min <= THRESHOLD_EPS {
            Err(Error::ThresholdTie)
        } else {
            Ok(())
        }
    }
}

/// `N₁` and the request mass `Σ_{i>N₁} K·p_i` outside the popular set.
fn popular_split(popularity: &PopularityDistribution, params: &SystemParams) -> (usize, f64) {
    let popular = oracle_popular_set(popularity, params);
    let k = params.n_users() as f64;
    let tail: f64 =
        (0..popularity.n_files()).filter(|&i| !popular.contains(i)).map(|i| k * popularity.prob(i)).sum();
    (popular.len(), tail)
}

/// Upper bound on the oracle's expected per-slot rate `K_o`:
///
/// `[N₁/M − 1]₊ + min{ Σ_{i>N₁} K·p_i , (N−N₁)/[M−N₁]₊ − 1 }`
///
/// A zero denominator makes the second candidate `+∞`.
pub fn oracle_rate_upper(popularity: &PopularityDistribution, params: &SystemParams) -> f64 {
    let (n1, tail) = popular_split(popularity, params);
    let n = params.n_files() as f64;
    let m = params.cache_size();
    let n1 = n1 as f64;
    let denom = positive_part(m - n1);
    let coded_rest = if denom > 0.0 { (n - n1) / denom - 1.0 } else { f64::INFINITY };
    positive_part(n1 / m - 1.0) + tail.min(coded_rest)
}

/// Lower bound `K_lb` on the expected rate of any scheme:
///
/// `max{ [N₁/M − 1]₊ / 29 , [Σ_{i>N₁} K·p_i − 2]₊ / 58 }`
pub fn rate_lower_bound(popularity: &PopularityDistribution, params: &SystemParams) -> f64 {
    let (n1, tail) = popular_split(popularity, params);
    let m = params.cache_size();
    (positive_part(n1 as f64 / m - 1.0) / 29.0).max(positive_part(tail - 2.0) / 58.0)
}
