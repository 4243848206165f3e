use crate::model::RequestProfile;

/// Request counts over the slots seen so far.
///
/// At slot `t` (1-based) the estimate is `p̂_i = counts_i / ((t−1)K)`, or
/// `1/N` before any request has been seen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalEstimator {
    counts: Vec<u64>,
    slots_seen: u64,
    n_users: usize,
}

impl EmpiricalEstimator {
    pub fn new(n_files: usize, n_users: usize) -> Self {
        EmpiricalEstimator { counts: vec![0; n_files], slots_seen: 0, n_users }
    }

    /// Estimator with preset counts, as if `slots_seen` slots had passed.
    pub fn from_counts(counts: Vec<u64>, slots_seen: u64, n_users: usize) -> Self {
        debug_assert_eq!(counts.iter().sum::<u64>(), slots_seen * n_users as u64);
        EmpiricalEstimator { counts, slots_seen, n_users }
    }

    /// The slot about to be decided, `t = slots_seen + 1`.
    pub fn slot(&self) -> u64 {
        self.slots_seen + 1
    }

    pub fn slots_seen(&self) -> u64 {
        self.slots_seen
    }

    pub fn n_files(&self) -> usize {
        self.counts.len()
    }

    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn estimate(&self, file: usize) -> f64 {
        if self.slots_seen == 0 {
            1.0 / self.counts.len() as f64
        } else {
            self.counts[file] as f64 / (self.slots_seen as f64 * self.n_users as f64)
        }
    }

    pub fn estimates(&self) -> Vec<f64> {
        (0..self.counts.len()).map(|i| self.estimate(i)).collect()
    }

    pub fn update(&mut self, profile: &RequestProfile) {
        debug_assert_eq!(profile.n_users(), self.n_users);
        for &file in profile.as_slice() {
            self.counts[file] += 1;
        }
        self.slots_seen += 1;
    }
}

/// Returns the estimator after observing one more request profile.
pub fn update_estimator(mut est: EmpiricalEstimator, profile: &RequestProfile) -> EmpiricalEstimator {
    est.update(profile);
    est
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_estimates() {
        let est = EmpiricalEstimator::new(4, 3);
        assert_eq!(est.estimates(), vec![0.25; 4]);
        let est = update_estimator(est, &RequestProfile::new(vec![0, 0, 1]));
        assert_eq!(est.counts(), &[2, 1, 0, 0]);
        assert_eq!(est.slot(), 2);
        let p = est.estimates();
        assert!((p[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((p[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(p[2], 0.0);
        assert_eq!(p[3], 0.0);
    }

    #[test]
    fn conservation() {
        let mut est = EmpiricalEstimator::new(3, 2);
        for t in 0..25 {
            est.update(&RequestProfile::new(vec![t % 3, (t * 7) % 3]));
        }
        assert_eq!(est.counts().iter().sum::<u64>(), 25 * 2);
        assert!((est.estimates().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
