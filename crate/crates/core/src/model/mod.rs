//! Catalog parameters, popularity distributions and request generation.

mod fileset;
mod ingest;
mod params;
mod popularity;
mod request;
mod rng;

pub use fileset::FileSet;
pub use ingest::{ingest_popularity_counts, read_counts_csv, write_ranked_csv, RankedPopularity};
pub use params::{SystemParams, DEFAULT_SUBPACKETS, THRESHOLD_EPS};
pub use popularity::{PopularityDistribution, SUM_TOLERANCE};
pub use request::{sample_requests, RequestProfile, RequestSampler};
pub use rng::StreamSeed;

/// `p_i ∝ i^(-exponent)` over `n_files` files, sorted descending.
pub fn make_zipf(n_files: usize, exponent: f64) -> crate::Result<PopularityDistribution> {
    PopularityDistribution::zipf(n_files, exponent)
}

/// The mirrored instance pair `(p, q)` for the regret lower bound.
pub fn make_lower_bound_instances(
    n_files: usize,
    a: f64,
    b: f64,
) -> crate::Result<(PopularityDistribution, PopularityDistribution)> {
    PopularityDistribution::lower_bound_pair(n_files, a, b)
}
