use std::fmt;

/// A subset of the catalog `{0, …, N-1}`, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FileSet {
    members: Vec<usize>,
}

impl FileSet {
    pub fn empty() -> Self {
        FileSet::default()
    }

    /// The whole catalog `{0, …, n-1}`.
    pub fn full(n_files: usize) -> Self {
        FileSet { members: (0..n_files).collect() }
    }

    /// The prefix `{0, …, len-1}`.
    pub fn prefix(len: usize) -> Self {
        Self::full(len)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut members: Vec<usize> = indices.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        FileSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, file: usize) -> bool {
        self.members.binary_search(&file).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    /// Files of `{0, …, n_files-1}` not in this set.
    pub fn complement(&self, n_files: usize) -> FileSet {
        FileSet { members: (0..n_files).filter(|&i| !self.contains(i)).collect() }
    }

    /// Number of members in `[lo, hi)`.
    pub fn count_in(&self, lo: usize, hi: usize) -> usize {
        self.members.iter().filter(|&&i| i >= lo && i < hi).count()
    }
}

impl FromIterator<usize> for FileSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        FileSet::from_indices(iter)
    }
}

/// Displays 1-based file indices, e.g. `{1,2,4}`.
impl fmt::Display for FileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, file) in self.members.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", file + 1)?;
        }
        f.write_str("}")
    }
}
