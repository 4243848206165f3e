use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::model::{FileSet, RequestProfile};

use super::placement::CacheState;

/// Default limit on the number of users served by coded multicast.
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Synthetic content of subpacket `sub` of `file`. Decoding is checked
/// against these values.
pub fn subpacket_payload(file: usize, sub: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = ((file as u64) << 32 | sub as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One XOR operand: the subpackets `V_{k, s∖{k}}` of user `k`'s file.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub user: usize,
    pub file: usize,
    pub subpackets: Vec<usize>,
}

/// `⊕_{k∈s} V_{k,s∖{k}}`, zero-padded to the longest operand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodedMessage {
    /// The user subset `s`, ascending.
    pub users: Vec<usize>,
    /// Nonempty operands, ascending by user.
    pub terms: Vec<Term>,
    pub payload: Vec<u64>,
    /// Index of an earlier message with identical content. Such a message is
    /// broadcast once and costs nothing extra.
    pub repeat_of: Option<usize>,
}

impl CodedMessage {
    pub fn len(&self) -> usize {
        self.payload.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payload.is_empty()
    }

    pub fn term_for(&self, user: usize) -> Option<&Term> {
        self.terms.iter().find(|t| t.user == user)
    }
}

/// Whole-file unicast to a user whose file is not coded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSend {
    pub user: usize,
    pub file: usize,
    pub payload: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmission {
    pub coded: Vec<CodedMessage>,
    pub direct: Vec<DirectSend>,
    pub subpackets: usize,
}

impl Transmission {
    /// Subpackets on the shared link.
    pub fn transmitted_subpackets(&self) -> usize {
        let coded: usize = self.coded.iter().filter(|m| m.repeat_of.is_none()).map(CodedMessage::len).sum();
        let direct: usize = self.direct.iter().map(|d| d.payload.len()).sum();
        coded + direct
    }

    /// Rate in file units.
    pub fn rate(&self) -> f64 {
        self.transmitted_subpackets() as f64 / self.subpackets as f64
    }
}

/// Builds the delivery for one slot.
///
/// Users requesting a file in `coded_files` form `U₁`. Every subpacket a
/// user `k ∈ U₁` misses is assigned to `V_{k,H}`, where `H` is the exact set
/// of other `U₁` users holding it; `V_{k,H}` goes into the message for
/// `s = H ∪ {k}`. This enumerates the same sets as walking all `2^|U₁|`
/// subsets but only visits the nonempty ones. Users outside `U₁` each get
/// their whole file.
pub fn build_delivery(
    profile: &RequestProfile,
    caches: &[CacheState],
    coded_files: &FileSet,
    subset_cap: usize,
) -> Result<Transmission> {
    assert_eq!(profile.n_users(), caches.len(), "one cache per user");
    let subpackets = caches.first().map_or(0, CacheState::subpackets);

    let coded_users: Vec<usize> =
        (0..profile.n_users()).filter(|&u| coded_files.contains(profile.file_of(u))).collect();
    if coded_users.len() > subset_cap || coded_users.len() > 63 {
        return Err(Error::SubsetCapExceeded { users: coded_users.len(), cap: subset_cap });
    }

    // subset mask over positions in `coded_users` -> (user -> V set)
    let mut groups: BTreeMap<u64, BTreeMap<usize, Vec<usize>>> = BTreeMap::new();
    for (pos, &user) in coded_users.iter().enumerate() {
        let file = profile.file_of(user);
        let own = caches[user].file_bits(file);
        for sub in (0..subpackets).filter(|&j| !own.contains(j)) {
            let mut mask = 1u64 << pos;
            for (other_pos, &other) in coded_users.iter().enumerate() {
                if other != user && caches[other].holds(file, sub) {
                    mask |= 1u64 << other_pos;
                }
            }
            groups.entry(mask).or_default().entry(user).or_default().push(sub);
        }
    }

    let mut coded = Vec::with_capacity(groups.len());
    let mut seen: HashMap<Vec<(usize, Vec<usize>)>, usize> = HashMap::new();
    for (mask, members) in groups {
        let users: Vec<usize> = coded_users
            .iter()
            .enumerate()
            .filter(|(pos, _)| mask & (1u64 << pos) != 0)
            .map(|(_, &u)| u)
            .collect();
        let terms: Vec<Term> = members
            .into_iter()
            .map(|(user, subpackets)| Term { user, file: profile.file_of(user), subpackets })
            .collect();
        let len = terms.iter().map(|t| t.subpackets.len()).max().unwrap_or(0);
        let mut payload = vec![0u64; len];
        for term in &terms {
            for (slot, &sub) in payload.iter_mut().zip(&term.subpackets) {
                *slot ^= subpacket_payload(term.file, sub);
            }
        }

        let mut content: Vec<(usize, Vec<usize>)> =
            terms.iter().map(|t| (t.file, t.subpackets.clone())).collect();
        content.sort();
        let index = coded.len();
        let repeat_of = match seen.get(&content) {
            Some(&first) => Some(first),
            None => {
                seen.insert(content, index);
                None
            }
        };
        coded.push(CodedMessage { users, terms, payload, repeat_of });
    }

    let direct = (0..profile.n_users())
        .filter(|&u| !coded_files.contains(profile.file_of(u)))
        .map(|user| {
            let file = profile.file_of(user);
            DirectSend { user, file, payload: (0..subpackets).map(|j| subpacket_payload(file, j)).collect() }
        })
        .collect();

    Ok(Transmission { coded, direct, subpackets })
}
