use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use super::popularity::PopularityDistribution;

/// The files requested by the `K` users in one slot (0-based file indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequestProfile {
    requests: Vec<usize>,
}

impl RequestProfile {
    pub fn new(requests: Vec<usize>) -> Self {
        RequestProfile { requests }
    }

    pub fn n_users(&self) -> usize {
        self.requests.len()
    }

    pub fn file_of(&self, user: usize) -> usize {
        self.requests[user]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.requests
    }

    /// True when every request is a valid index into a catalog of `n_files`.
    pub fn is_valid_for(&self, n_files: usize) -> bool {
        self.requests.iter().all(|&r| r < n_files)
    }
}

/// Reusable sampler of i.i.d. request profiles from a fixed pmf.
#[derive(Debug, Clone)]
pub struct RequestSampler {
    index: WeightedIndex<f64>,
}

impl RequestSampler {
    pub fn new(popularity: &PopularityDistribution) -> Self {
        // A validated pmf always has a positive total.
        let index = WeightedIndex::new(popularity.probs()).expect("validated pmf");
        RequestSampler { index }
    }

    pub fn sample<R: Rng + ?Sized>(&self, n_users: usize, rng: &mut R) -> RequestProfile {
        RequestProfile::new((0..n_users).map(|_| self.index.sample(rng)).collect())
    }
}

/// Draws `n_users` i.i.d. requests from `popularity`.
pub fn sample_requests<R: Rng + ?Sized>(
    popularity: &PopularityDistribution,
    n_users: usize,
    rng: &mut R,
) -> RequestProfile {
    RequestSampler::new(popularity).sample(n_users, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rng::StreamSeed;

    #[test]
    fn degenerate_pmf() {
        let p = PopularityDistribution::new(vec![1.0]).unwrap();
        let mut rng = StreamSeed::new(7).requests(0);
        assert_eq!(sample_requests(&p, 3, &mut rng).as_slice(), &[0, 0, 0]);
    }

    #[test]
    fn zero_mass_files_are_never_requested() {
        let p = PopularityDistribution::new(vec![0.5, 0.0, 0.5]).unwrap();
        let mut rng = StreamSeed::new(1).requests(0);
        assert!(sample_requests(&p, 10_000, &mut rng).as_slice().iter().all(|&f| f != 1));
    }

    #[test]
    fn fair_coin_frequency() {
        let p = PopularityDistribution::new(vec![0.5, 0.5]).unwrap();
        let mut rng = StreamSeed::new(2024).requests(0);
        let profile = sample_requests(&p, 100_000, &mut rng);
        let ones = profile.as_slice().iter().filter(|&&f| f == 0).count();
        let freq = ones as f64 / 1e5;
        assert!((0.49..=0.51).contains(&freq), "freq = {freq}");
    }

    #[test]
    fn same_seed_same_profile() {
        let p = PopularityDistribution::zipf(10, 0.8).unwrap();
        let a = sample_requests(&p, 50, &mut StreamSeed::new(99).requests(3));
        let b = sample_requests(&p, 50, &mut StreamSeed::new(99).requests(3));
        let c = sample_requests(&p, 50, &mut StreamSeed::new(99).requests(4));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
