use crate::error::Result;
use crate::model::{PopularityDistribution, SystemParams};
use crate::policy::oracle_popular_set;

use super::rates::GapVector;

/// `P[Bin(n, p) = j]` for every `j = 0..=n`, computed in log space.
pub(crate) fn binomial_pmf(n: usize, p: f64) -> Vec<f64> {
    if p <= 0.0 {
        let mut pmf = vec![0.0; n + 1];
        pmf[0] = 1.0;
        return pmf;
    }
    if p >= 1.0 {
        let mut pmf = vec![0.0; n + 1];
        pmf[n] = 1.0;
        return pmf;
    }
    let (ln_p, ln_q) = (p.ln(), (-p).ln_1p());
    let mut ln_choose = 0.0;
    (0..=n)
        .map(|j| {
            if j > 0 {
                ln_choose += ((n - j + 1) as f64).ln() - (j as f64).ln();
            }
            (ln_choose + j as f64 * ln_p + (n - j) as f64 * ln_q).exp()
        })
        .collect()
}

/// `⌊1/M⌋`, the largest per-slot request count that keeps an unpopular
/// file below the threshold.
fn floor_inverse_cache(params: &SystemParams) -> usize {
    (1.0 / params.cache_size() + 1e-9).floor() as usize
}

/// Per-file constants
/// `α_i = e^{2Δ_i²} P[Bin(K, p_i) ≤ ⌊1/M⌋]` and
/// `β_i = e^{2Δ_i²} P[Bin(K, p_i) > ⌊1/M⌋]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingConstants {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

pub fn switching_constants(popularity: &PopularityDistribution, params: &SystemParams) -> SwitchingConstants {
    let gaps = GapVector::new(popularity, params);
    let k = params.n_users();
    let cut = floor_inverse_cache(params);
    let (alpha, beta) = popularity
        .probs()
        .iter()
        .zip(&gaps.deltas)
        .map(|(&p, &delta)| {
            let pmf = binomial_pmf(k, p);
            let scale = (2.0 * delta * delta).exp();
            let low: f64 = pmf.iter().take(cut + 1).sum();
            let high: f64 = pmf.iter().skip(cut + 1).sum();
            (scale * low, scale * high)
        })
        .unzip();
    SwitchingConstants { alpha, beta }
}

/// Expected switching cost bound
/// `1 + Σ_{i∈[N₁]} (1+β_i)/(2KΔ_i²) + Σ_{i∉[N₁]} (α_i+1)/(2KΔ_i²)`.
pub fn switching_cost_bound(popularity: &PopularityDistribution, params: &SystemParams) -> Result<f64> {
    let gaps = GapVector::new(popularity, params);
    gaps.require_positive()?;
    let popular = oracle_popular_set(popularity, params);
    let consts = switching_constants(popularity, params);
    let k = params.n_users() as f64;
    let total: f64 = (0..popularity.n_files())
        .map(|i| {
            let weight = if popular.contains(i) { 1.0 + consts.beta[i] } else { consts.alpha[i] + 1.0 };
            weight / (2.0 * k * gaps.deltas[i] * gaps.deltas[i])
        })
        .sum();
    Ok(1.0 + total)
}

/// Bounds on `P(Aᵗ)` (a popular file leaves the estimated set) and `P(Bᵗ)`
/// (a file joins it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchEventBounds {
    pub leave: f64,
    pub join: f64,
}

pub fn switch_event_bounds(
    popularity: &PopularityDistribution,
    params: &SystemParams,
    t: u64,
) -> SwitchEventBounds {
    let gaps = GapVector::new(popularity, params);
    let popular = oracle_popular_set(popularity, params);
    let consts = switching_constants(popularity, params);
    let scale = 2.0 * params.n_users() as f64 * t.saturating_sub(1) as f64;
    let mut bounds = SwitchEventBounds { leave: 0.0, join: 0.0 };
    for i in 0..popularity.n_files() {
        let decay = (-scale * gaps.deltas[i] * gaps.deltas[i]).exp();
        if popular.contains(i) {
            bounds.leave += decay;
            bounds.join += consts.beta[i] * decay;
        } else {
            bounds.leave += consts.alpha[i] * decay;
            bounds.join += decay;
        }
    }
    bounds
}
