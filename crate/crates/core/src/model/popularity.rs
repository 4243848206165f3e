use crate::error::{Error, Result};

/// Tolerance on `Σ p_i = 1`.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// A request pmf over `N` files. Index 0 is file 1.
///
/// Sortedness is not required: the second lower-bound instance puts its
/// heavy half at the end of the catalog. Constructors that model a real
/// catalog (`zipf`, `from_counts`) emit files in descending popularity.
#[derive(Debug, Clone, PartialEq)]
pub struct PopularityDistribution {
    probs: Vec<f64>,
}

impl PopularityDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty pmf".into()));
        }
        if let Some(bad) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidDistribution(format!("entry {bad} is not a nonnegative real")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("entries sum to {total}, not 1")));
        }
        Ok(PopularityDistribution { probs })
    }

    /// Rescales nonnegative weights to a pmf.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::InvalidDistribution("weights must have a positive finite sum".into()));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    /// `p_i ∝ i^(-exponent)` for `i = 1..=n_files`.
    pub fn zipf(n_files: usize, exponent: f64) -> Result<Self> {
        if n_files == 0 {
            return Err(Error::InvalidDistribution("Zipf needs at least one file".into()));
        }
        if !(exponent.is_finite() && exponent >= 0.0) {
            return Err(Error::InvalidDistribution(format!("Zipf exponent {exponent} must be nonnegative")));
        }
        let weights: Vec<f64> = (1..=n_files).map(|i| (i as f64).powf(-exponent)).collect();
        Self::from_weights(&weights)
    }

    /// The instance pair `(p, q)` used by the regret lower bound: `p` puts
    /// `2/a` on the first half of the catalog and `2/b` on the second, `q`
    /// swaps the halves. Requires even `N`, `0 < a < b` and `1/a + 1/b = 1/N`.
    pub fn lower_bound_pair(n_files: usize, a: f64, b: f64) -> Result<(Self, Self)> {
        if !n_files.is_multiple_of(2) {
            return Err(Error::OddCatalog(n_files));
        }
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
            return Err(Error::LowerBoundConstraint(format!("a = {a}, b = {b} must be positive")));
        }
        if a >= b {
            return Err(Error::LowerBoundConstraint(format!("need a < b (got a = {a}, b = {b})")));
        }
        let slack = 1.0 / a + 1.0 / b - 1.0 / n_files as f64;
        if slack.abs() > 1e-12 {
            return Err(Error::LowerBoundConstraint(format!("1/a + 1/b must equal 1/N (off by {slack:e})")));
        }
        let half = n_files / 2;
        let heavy = 2.0 / a;
        let light = 2.0 / b;
        let weights: Vec<f64> = (0..n_files).map(|i| if i < half { heavy } else { light }).collect();
        let p = Self::from_weights(&weights)?;
        let q = p.swap_halves();
        Ok((p, q))
    }

    /// Mirrors the two halves of the catalog (`q_i = p_{σ(i)}`).
    fn swap_halves(&self) -> Self {
        let half = self.probs.len() / 2;
        let mut probs = self.probs[half..].to_vec();
        probs.extend_from_slice(&self.probs[..half]);
        PopularityDistribution { probs }
    }

    pub fn n_files(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, file: usize) -> f64 {
        self.probs[file]
    }

    pub fn is_sorted_descending(&self) -> bool {
        self.probs.windows(2).all(|w| w[0] >= w[1])
    }
}
