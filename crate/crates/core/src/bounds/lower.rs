//! Minimax regret lower bound over policies that pick a cached subset each
//! slot and cache it uniformly.
//!
//! The construction uses two mirrored instances: `p` puts `2/a` on the first
//! half of the catalog and `2/b` on the second, `q` swaps them. A subset
//! dominated by the wrong half is "bad" and costs at least `Γ` per slot.

use crate::engine::approx_rate;
use crate::error::{Error, Result};
use crate::model::{FileSet, PopularityDistribution, SystemParams};

const TOLERANCE: f64 = 1e-12;

/// Largest catalog enumerated by [`check_bad_set_gap`].
pub const MAX_ENUMERATED_FILES: usize = 24;

/// `Γ = (NK/2)(1/(KM) − 2/b)`. Requires `2/b ≤ 1/(KM)`.
pub fn bad_set_gap(params: &SystemParams, b: f64) -> Result<f64> {
    let margin = params.threshold() - 2.0 / b;
    if margin < -TOLERANCE {
        return Err(Error::LowerBoundConstraint(format!(
            "need 2/b ≤ 1/(KM) (2/b = {}, 1/(KM) = {})",
            2.0 / b,
            params.threshold()
        )));
    }
    Ok(params.n_files() as f64 * params.n_users() as f64 / 2.0 * margin.max(0.0))
}

/// Which of the two mirrored instances is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Instance {
    /// Heavy first half.
    P,
    /// Heavy second half.
    Q,
}

/// `S` is bad under `P` when `|S ∩ S₂|/|S| > 1/2` and bad under `Q` when
/// `|S ∩ S₁|/|S| ≥ 1/2`, with `S₁` the first half of the catalog and `S₂`
/// the second.
pub fn is_bad_set(set: &FileSet, instance: Instance, n_files: usize) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    let half = n_files / 2;
    let first = set.count_in(0, half);
    let second = set.len() - first;
    Ok(match instance {
        Instance::P => 2 * second > set.len(),
        Instance::Q => 2 * first >= set.len(),
    })
}

/// `D(p‖q) = N(1/a − 1/b) ln(b/a)` for the mirrored instances.
pub fn kl_per_slot(a: f64, b: f64, n_files: usize) -> f64 {
    n_files as f64 * (1.0 / a - 1.0 / b) * (b / a).ln()
}

/// Divergence between the request histories over `horizon` slots.
pub fn kl_total(a: f64, b: f64, n_files: usize, horizon: u64) -> f64 {
    horizon as f64 * kl_per_slot(a, b, n_files)
}

/// `Σ_i p_i ln(p_i/q_i)`, natural log.
pub fn kl_divergence(p: &PopularityDistribution, q: &PopularityDistribution) -> f64 {
    p.probs()
        .iter()
        .zip(q.probs())
        .filter(|(&pi, _)| pi > 0.0)
        .map(|(&pi, &qi)| if qi > 0.0 { pi * (pi / qi).ln() } else { f64::INFINITY })
        .sum()
}

/// Checks the hypotheses of the lower bound: even `N`, `N/K < M < N/2`,
/// `0 < a < b`, `1/a + 1/b = 1/N` and `2/b < 1/(KM) < 2/a`.
pub fn check_lower_bound_preconditions(params: &SystemParams, a: f64, b: f64) -> Result<()> {
    let n = params.n_files();
    let nf = n as f64;
    let k = params.n_users() as f64;
    let m = params.cache_size();
    if !n.is_multiple_of(2) {
        return Err(Error::OddCatalog(n));
    }
    if !(nf / k < m && m < nf / 2.0) {
        return Err(Error::LowerBoundConstraint(format!(
            "need N/K < M < N/2 (N/K = {}, M = {m}, N/2 = {})",
            nf / k,
            nf / 2.0
        )));
    }
    if !(a > 0.0 && a < b && b.is_finite()) {
        return Err(Error::LowerBoundConstraint(format!("need 0 < a < b (a = {a}, b = {b})")));
    }
    let slack = 1.0 / a + 1.0 / b - 1.0 / nf;
    if slack.abs() > TOLERANCE {
        return Err(Error::LowerBoundConstraint(format!("1/a + 1/b must equal 1/N (off by {slack:e})")));
    }
    let threshold = params.threshold();
    if !(2.0 / b < threshold && threshold < 2.0 / a) {
        return Err(Error::LowerBoundConstraint(format!(
            "need 2/b < 1/(KM) < 2/a (2/b = {}, 1/(KM) = {threshold}, 2/a = {})",
            2.0 / b,
            2.0 / a
        )));
    }
    Ok(())
}

/// Evaluated lower bound for one `(N, K, M, a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundReport {
    /// `K(1/(KM) − 2/b) / (8 (1/a − 1/b) ln(b/a))`.
    pub bound: f64,
    pub gap: f64,
    pub kl_per_slot: f64,
    /// Oracle rate on either instance: `N/(2M) − 1 + KN/b`.
    pub oracle_rate: f64,
    /// Horizon maximizing [`regret_curve`], `1/D(p‖q)`.
    pub best_horizon: f64,
    /// Maximum of [`regret_curve`] over real horizons, `Γ/(4e D)`. This is
    /// `bound / e`.
    pub curve_max: f64,
}

/// The finite-horizon lower bound `(TΓ/4) exp(−T D(p‖q))`.
pub fn regret_curve(params: &SystemParams, a: f64, b: f64, horizon: f64) -> Result<f64> {
    let gap = bad_set_gap(params, b)?;
    Ok(horizon * gap / 4.0 * (-horizon * kl_per_slot(a, b, params.n_files())).exp())
}

pub fn regret_lower_bound(params: &SystemParams, a: f64, b: f64) -> Result<LowerBoundReport> {
    check_lower_bound_preconditions(params, a, b)?;
    let n = params.n_files() as f64;
    let k = params.n_users() as f64;
    let m = params.cache_size();
    let spread = 1.0 / a - 1.0 / b;
    let bound = k * (params.threshold() - 2.0 / b) / (8.0 * spread * (b / a).ln());
    let gap = bad_set_gap(params, b)?;
    let kl = kl_per_slot(a, b, params.n_files());
    Ok(LowerBoundReport {
        bound,
        gap,
        kl_per_slot: kl,
        oracle_rate: n / (2.0 * m) - 1.0 + k * n / b,
        best_horizon: 1.0 / kl,
        curve_max: gap / (4.0 * std::f64::consts::E * kl),
    })
}

/// Result of enumerating every nonempty subset under both instances.
#[derive(Debug, Clone, PartialEq)]
pub struct BadSetCheck {
    pub gap: f64,
    pub oracle_rate: f64,
    pub subsets: usize,
    /// Number of (subset, instance) pairs where the subset is bad.
    pub bad_pairs: usize,
    /// Bad pairs with `K_S − K_o < Γ`.
    pub violations: Vec<(FileSet, Instance, f64)>,
    /// Smallest `K_S − K_o − Γ` over bad pairs.
    pub min_margin: f64,
}

impl BadSetCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Enumerates all nonempty `S ⊆ [N]`, evaluates the approximate rate under
/// both instances and checks `K_S − K_o ≥ Γ` for every bad `S`.
pub fn check_bad_set_gap(params: &SystemParams, a: f64, b: f64) -> Result<BadSetCheck> {
    check_lower_bound_preconditions(params, a, b)?;
    let n = params.n_files();
    if n > MAX_ENUMERATED_FILES {
        return Err(Error::InvalidConfig(format!("exhaustive check limited to N ≤ {MAX_ENUMERATED_FILES}")));
    }
    let (p, q) = PopularityDistribution::lower_bound_pair(n, a, b)?;
    let report = regret_lower_bound(params, a, b)?;
    let mut check = BadSetCheck {
        gap: report.gap,
        oracle_rate: report.oracle_rate,
        subsets: 0,
        bad_pairs: 0,
        violations: Vec::new(),
        min_margin: f64::INFINITY,
    };
    for mask in 1u64..(1u64 << n) {
        let set: FileSet = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        check.subsets += 1;
        for (instance, pmf) in [(Instance::P, &p), (Instance::Q, &q)] {
            if !is_bad_set(&set, instance, n)? {
                continue;
            }
            check.bad_pairs += 1;
            let excess = approx_rate(params, &set, pmf) - report.oracle_rate;
            let margin = excess - report.gap;
            check.min_margin = check.min_margin.min(margin);
            if margin < -TOLERANCE {
                check.violations.push((set.clone(), instance, excess));
            }
        }
    }
    Ok(check)
}

/// True iff every bad subset pays at least `Γ` over the oracle.
pub fn brute_force_gap_check(params: &SystemParams, a: f64, b: f64) -> Result<bool> {
    Ok(check_bad_set_gap(params, a, b)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, k: usize, m: f64) -> SystemParams {
        SystemParams::new(n, k, m, 10).unwrap()
    }

    #[test]
    fn gap_examples() {
        assert!((bad_set_gap(&params(4, 5, 1.0), 12.0).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        // 2/b = 1/(KM) = 0.2
        assert!(bad_set_gap(&params(4, 5, 1.0), 10.0).unwrap().abs() < 1e-12);
        let g4 = bad_set_gap(&params(4, 5, 1.0), 12.0).unwrap();
        let g8 = bad_set_gap(&params(8, 5, 1.0), 12.0).unwrap();
        assert!((g8 - 2.0 * g4).abs() < 1e-12);
        assert!(bad_set_gap(&params(4, 5, 1.0), 8.0).is_err());
    }

    #[test]
    fn bad_set_examples() {
        let s34 = FileSet::from_indices([2, 3]);
        let s13 = FileSet::from_indices([0, 2]);
        assert!(is_bad_set(&s34, Instance::P, 4).unwrap());
        assert!(!is_bad_set(&s13, Instance::P, 4).unwrap());
        assert!(is_bad_set(&s13, Instance::Q, 4).unwrap());
        assert!(matches!(is_bad_set(&FileSet::empty(), Instance::P, 4), Err(Error::EmptySubset)));
    }

    #[test]
    fn kl_examples() {
        assert_eq!(kl_per_slot(6.0, 6.0, 4), 0.0);
        assert!((kl_per_slot(6.0, 12.0, 4) - 0.231_049_060_186_648_4).abs() < 1e-15);
        let (p, q) = PopularityDistribution::lower_bound_pair(4, 6.0, 12.0).unwrap();
        assert!((kl_divergence(&p, &q) - kl_per_slot(6.0, 12.0, 4)).abs() < 1e-12);
        assert_eq!(kl_total(6.0, 12.0, 4, 7), 7.0 * kl_per_slot(6.0, 12.0, 4));
    }

    #[test]
    fn lower_bound_example() {
        let r = regret_lower_bound(&params(4, 5, 1.0), 6.0, 12.0).unwrap();
        assert!((r.bound - 0.360_673_760_222_240_85).abs() < 1e-12);
        assert!((r.oracle_rate - 8.0 / 3.0).abs() < 1e-12);
        assert!((r.gap - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.curve_max * std::f64::consts::E - r.bound).abs() < 1e-12);
        let at_best = regret_curve(&params(4, 5, 1.0), 6.0, 12.0, r.best_horizon).unwrap();
        assert!((at_best - r.curve_max).abs() < 1e-12);
    }

    #[test]
    fn lower_bound_vanishes_at_boundary() {
        // N=4, K=5, M=1: 1/(KM) = 0.2. Walk b down toward 10 keeping 1/a + 1/b = 1/4.
        let bounds: Vec<f64> = [12.0, 11.0, 10.5, 10.1, 10.01]
            .iter()
            .map(|&b: &f64| {
                let a = 1.0 / (0.25 - 1.0 / b);
                regret_lower_bound(&params(4, 5, 1.0), a, b).unwrap().bound
            })
            .collect();
        assert!(bounds.windows(2).all(|w| w[1] < w[0]));
        assert!(bounds[4] < 1e-2);
    }

    #[test]
    fn lower_bound_preconditions() {
        assert!(regret_lower_bound(&params(4, 5, 2.0), 6.0, 12.0).is_err());
        assert!(regret_lower_bound(&params(4, 5, 1.0), 5.0, 12.0).is_err());
        assert!(matches!(regret_lower_bound(&params(5, 5, 1.0), 6.0, 12.0), Err(Error::OddCatalog(5))));
    }

    #[test]
    fn brute_force_examples() {
        let check = check_bad_set_gap(&params(4, 5, 1.0), 6.0, 12.0).unwrap();
        assert_eq!(check.subsets, 15);
        assert!(check.holds());
        // S = [N] under q meets the gap with equality.
        assert!(check.min_margin.abs() < 1e-12);
        // {1,2} is good under p.
        assert!(!is_bad_set(&FileSet::from_indices([0, 1]), Instance::P, 4).unwrap());

        assert!(brute_force_gap_check(&params(2, 3, 0.9), 3.0, 6.0).unwrap());
        assert!(brute_force_gap_check(&params(2, 3, 0.6), 3.0, 6.0).is_err());
    }
}
