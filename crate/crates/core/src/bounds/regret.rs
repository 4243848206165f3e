use crate::error::Result;
use crate::model::{PopularityDistribution, SystemParams};

use super::rates::{oracle_rate_upper, rate_lower_bound, GapVector};
use super::switching::switching_cost_bound;

/// Regret-bound constants for the tracking policy at a given `K_o`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegretConstants {
    pub a: f64,
    pub b: f64,
    /// `N/M − 1 − K_o`
    pub first_step: f64,
    /// `min(A, B) + first_step`
    pub regret_bound: f64,
}

/// `A = (2 + Σ Δ_i)(K − K_o) / (K Δ²)`, `B = 4(K − K_o) / (K Δ²)`.
///
/// `k_o` is the oracle's per-slot rate: the upper bound from
/// [`oracle_rate_upper`] or, for a bound depending only on the instance,
/// [`rate_lower_bound`].
pub fn regret_upper_bound(
    popularity: &PopularityDistribution,
    params: &SystemParams,
    k_o: f64,
) -> Result<RegretConstants> {
    let gaps = GapVector::new(popularity, params);
    gaps.require_positive()?;
    let k = params.n_users() as f64;
    let denom = k * gaps.delta_min * gaps.delta_min;
    let a = (2.0 + gaps.sum()) * (k - k_o) / denom;
    let b = 4.0 * (k - k_o) / denom;
    let first_step = params.n_files() as f64 / params.cache_size() - 1.0 - k_o;
    Ok(RegretConstants { a, b, first_step, regret_bound: a.min(b) + first_step })
}

/// Union bound on `P(Ḡᵗ)` from multiplicative Chernoff bounds:
/// `Σ_i exp(−δ_i² (t−1) K p_i / (2 + δ_i))` with `δ_i = Δ_i / p_i`.
///
/// A file with `p_i = 0` contributes `exp(−(t−1) K Δ_i)`, the `δ_i → ∞`
/// limit.
pub fn chernoff_tail(popularity: &PopularityDistribution, params: &SystemParams, t: u64) -> f64 {
    let gaps = GapVector::new(popularity, params);
    let scale = t.saturating_sub(1) as f64 * params.n_users() as f64;
    popularity
        .probs()
        .iter()
        .zip(&gaps.deltas)
        .map(|(&p, &delta)| {
            let rate = if p > 0.0 {
                let rel = delta / p;
                rel * rel * p / (2.0 + rel)
            } else {
                delta
            };
            (-scale * rate).exp()
        })
        .sum()
}

/// DKW tail `2 exp(−(t−1) K Δ² / 2)`. Not clamped to 1.
pub fn dkw_tail(delta: f64, n_users: usize, t: u64) -> f64 {
    2.0 * (-(t.saturating_sub(1) as f64) * n_users as f64 * delta * delta / 2.0).exp()
}

/// `min(x, 1)`, for summing tail bounds as probabilities.
pub fn clamp_probability(x: f64) -> f64 {
    x.min(1.0)
}

/// Which value stands in for the oracle rate `K_o` in the regret constants.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum KoChoice {
    /// The upper bound on `K_o`.
    #[default]
    UpperBound,
    /// `K_lb`, giving a bound in terms of the instance only.
    LowerBound,
    Value(f64),
}

/// Every closed-form quantity for one instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub k_o_upper: f64,
    pub k_lb: f64,
    /// The `K_o` actually used for `a`, `b`, `first_step`.
    pub k_o_used: f64,
    pub a: f64,
    pub b: f64,
    pub first_step: f64,
    pub regret_bound: f64,
    pub switch_bound: f64,
}

pub fn bound_report(
    popularity: &PopularityDistribution,
    params: &SystemParams,
    ko: KoChoice,
) -> Result<BoundReport> {
    let k_o_upper = oracle_rate_upper(popularity, params);
    let k_lb = rate_lower_bound(popularity, params);
    let k_o_used = match ko {
        KoChoice::UpperBound => k_o_upper,
        KoChoice::LowerBound => k_lb,
        KoChoice::Value(v) => v,
    };
    let regret = regret_upper_bound(popularity, params, k_o_used)?;
    let switch_bound = switching_cost_bound(popularity, params)?;
    Ok(BoundReport {
        k_o_upper,
        k_lb,
        k_o_used,
        a: regret.a,
        b: regret.b,
        first_step: regret.first_step,
        regret_bound: regret.regret_bound,
        switch_bound,
    })
}
