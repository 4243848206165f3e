use crate::model::{FileSet, PopularityDistribution, SystemParams};

/// Expected per-slot rate of uniform decentralized coded caching on `S`:
///
/// * `|S| > M`: `|S|/M − 1 + Σ_{i∉S} K·p_i`
/// * `|S| ≤ M`: `(N−|S|)/(M−|S|) − 1`, which is `+∞` at `|S| = M < N`
///   and `0` when everything is cached.
pub fn approx_rate(params: &SystemParams, cached_set: &FileSet, popularity: &PopularityDistribution) -> f64 {
    let n = params.n_files() as f64;
    let m = params.cache_size();
    let k = params.n_users() as f64;
    let size = cached_set.len() as f64;

    if size > m {
        let uncached: f64 =
            (0..params.n_files()).filter(|&i| !cached_set.contains(i)).map(|i| k * popularity.prob(i)).sum();
        size / m - 1.0 + uncached
    } else {
        let files_left = n - size;
        let memory_left = m - size;
        if files_left <= 0.0 {
            0.0
        } else if memory_left <= 0.0 {
            f64::INFINITY
        } else {
            files_left / memory_left - 1.0
        }
    }
}
