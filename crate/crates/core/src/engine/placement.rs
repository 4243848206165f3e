use fixedbitset::FixedBitSet;
use rand::seq::index;
use rand::Rng;

use crate::model::{FileSet, SystemParams};

/// Guards `floor` against values like `2.9999999999999996` that are meant
/// to be exact integers.
const FLOOR_EPS: f64 = 1e-9;

/// The subpackets of every file held by one user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheState {
    files: Vec<FixedBitSet>,
    subpackets: usize,
}

impl CacheState {
    pub fn empty(n_files: usize, subpackets: usize) -> Self {
        CacheState { files: vec![FixedBitSet::with_capacity(subpackets); n_files], subpackets }
    }

    /// Builds a cache from explicit `(file, subpacket)` pairs.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        n_files: usize,
        subpackets: usize,
        pairs: I,
    ) -> Self {
        let mut cache = Self::empty(n_files, subpackets);
        for (file, sub) in pairs {
            cache.insert(file, sub);
        }
        cache
    }

    pub fn n_files(&self) -> usize {
        self.files.len()
    }

    pub fn subpackets(&self) -> usize {
        self.subpackets
    }

    pub fn holds(&self, file: usize, subpacket: usize) -> bool {
        self.files[file].contains(subpacket)
    }

    pub fn insert(&mut self, file: usize, subpacket: usize) {
        self.files[file].insert(subpacket);
    }

    pub fn remove(&mut self, file: usize, subpacket: usize) {
        self.files[file].set(subpacket, false);
    }

    pub fn fill_file(&mut self, file: usize) {
        self.files[file].insert_range(..);
    }

    pub fn cached_count(&self, file: usize) -> usize {
        self.files[file].count_ones(..)
    }

    pub fn total_cached(&self) -> usize {
        self.files.iter().map(|f| f.count_ones(..)).sum()
    }

    pub fn cached_subpackets(&self, file: usize) -> impl Iterator<Item = usize> + '_ {
        self.files[file].ones()
    }

    pub(crate) fn file_bits(&self, file: usize) -> &FixedBitSet {
        &self.files[file]
    }
}

/// The caches of all users together with the set of files delivered by
/// coded multicast.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub caches: Vec<CacheState>,
    /// Files that hold cached content: `S` itself when `|S| ≥ M`, the whole
    /// catalog when the residual memory is spread over the other files.
    pub coded_files: FileSet,
}

/// Per-user subpacket budget for files in `S` and outside `S`.
fn placement_budget(params: &SystemParams, set_len: usize) -> (usize, usize) {
    let f = params.subpackets();
    let m = params.cache_size();
    let n = params.n_files();
    if set_len as f64 >= m {
        let per_file = ((m * f as f64 / set_len as f64) + FLOOR_EPS).floor() as usize;
        (per_file.min(f), 0)
    } else {
        let residual = ((m - set_len as f64) * f as f64 / (n - set_len) as f64 + FLOOR_EPS).floor() as usize;
        (f, residual.min(f))
    }
}

/// Decentralized placement for the cached set `S`.
///
/// When `|S| ≥ M` every user independently keeps `min(F, ⌊MF/|S|⌋)`
/// uniformly random subpackets of each file in `S`. When `|S| < M` the
/// files in `S` are stored whole and the leftover `(M−|S|)F` subpackets are
/// split evenly across the remaining `N−|S|` files, again at random.
pub fn sample_placement<R: Rng + ?Sized>(
    params: &SystemParams,
    cached_set: &FileSet,
    rng: &mut R,
) -> Placement {
    let n = params.n_files();
    let f = params.subpackets();
    let (in_set, outside) = placement_budget(params, cached_set.len());
    let spills = (cached_set.len() as f64) < params.cache_size();

    let mut caches = Vec::with_capacity(params.n_users());
    for _ in 0..params.n_users() {
        let mut cache = CacheState::empty(n, f);
        for file in 0..n {
            let budget = match (cached_set.contains(file), spills) {
                (true, _) => in_set,
                (false, true) => outside,
                (false, false) => 0,
            };
            if budget == f {
                cache.fill_file(file);
            } else if budget > 0 {
                for sub in index::sample(rng, f, budget) {
                    cache.insert(file, sub);
                }
            }
        }
        caches.push(cache);
    }

    let coded_files = if spills { FileSet::full(n) } else { cached_set.clone() };
    Placement { caches, coded_files }
}
