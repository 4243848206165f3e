use crate::error::{Error, Result};

/// Default number of subpackets per file.
pub const DEFAULT_SUBPACKETS: usize = 1000;

/// Tolerance used when comparing a popularity against the caching threshold
/// `1/(KM)` and when deciding whether a gap `Δ_i` is zero.
pub const THRESHOLD_EPS: f64 = 1e-12;

/// Catalog and network parameters: `N` files, `K` users, cache size `M`
/// (in file units) and `F` subpackets per file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    n_files: usize,
    n_users: usize,
    cache_size: f64,
    subpackets: usize,
}

impl SystemParams {
    pub fn new(n_files: usize, n_users: usize, cache_size: f64, subpackets: usize) -> Result<Self> {
        if n_files == 0 {
            return Err(Error::InvalidParams("N must be at least 1".into()));
        }
        if n_users == 0 {
            return Err(Error::InvalidParams("K must be at least 1".into()));
        }
        if subpackets == 0 {
            return Err(Error::InvalidParams("F must be at least 1".into()));
        }
        if !cache_size.is_finite() || cache_size <= 0.0 {
            return Err(Error::InvalidParams(format!("M must be positive (got {cache_size})")));
        }
        if cache_size > n_files as f64 {
            return Err(Error::InvalidParams(format!(
                "M = {cache_size} exceeds the catalog size N = {n_files}"
            )));
        }
        Ok(SystemParams { n_files, n_users, cache_size, subpackets })
    }

    /// Same parameters with the default subpacket granularity.
    pub fn with_default_subpackets(n_files: usize, n_users: usize, cache_size: f64) -> Result<Self> {
        Self::new(n_files, n_users, cache_size, DEFAULT_SUBPACKETS)
    }

    pub fn n_files(&self) -> usize {
        self.n_files
    }

    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn cache_size(&self) -> f64 {
        self.cache_size
    }

    pub fn subpackets(&self) -> usize {
        self.subpackets
    }

    /// The popularity threshold `1/(KM)`.
    pub fn threshold(&self) -> f64 {
        1.0 / (self.n_users as f64 * self.cache_size)
    }

    /// True when `prob ≥ 1/(KM)`, ties included.
    pub fn meets_threshold(&self, prob: f64) -> bool {
        prob * self.n_users as f64 * self.cache_size >= 1.0 - THRESHOLD_EPS
    }

    /// `M` as an integer, if it is one.
    pub fn integer_cache_size(&self) -> Option<usize> {
        let rounded = self.cache_size.round();
        ((self.cache_size - rounded).abs() < 1e-9).then_some(rounded as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_values() {
        assert!(SystemParams::new(0, 1, 1.0, 1).is_err());
        assert!(SystemParams::new(1, 0, 1.0, 1).is_err());
        assert!(SystemParams::new(1, 1, 1.0, 0).is_err());
        assert!(SystemParams::new(4, 1, 0.0, 1).is_err());
        assert!(SystemParams::new(4, 1, 4.5, 1).is_err());
        assert!(SystemParams::new(4, 1, f64::NAN, 1).is_err());
        assert!(SystemParams::new(4, 1, 4.0, 1).is_ok());
    }

    #[test]
    fn threshold_tie_is_included() {
        let params = SystemParams::new(3, 3, 1.0, 10).unwrap();
        assert!(params.meets_threshold(1.0 / 3.0));
        assert!(!params.meets_threshold(0.33));
    }

    #[test]
    fn integer_cache_size() {
        let params = SystemParams::new(4, 2, 2.0, 10).unwrap();
        assert_eq!(params.integer_cache_size(), Some(2));
        let params = SystemParams::new(4, 2, 1.5, 10).unwrap();
        assert_eq!(params.integer_cache_size(), None);
    }
}
