use crate::model::RequestProfile;

use super::delivery::{subpacket_payload, Transmission};
use super::placement::CacheState;

/// What a user reads back from its own cache.
pub trait CacheView {
    /// Content of `(file, sub)` in `user`'s cache, `None` if not stored.
    fn read(&self, user: usize, file: usize, sub: usize) -> Option<u64>;
}

/// Honest view over placed caches.
pub struct StoredCaches<'a>(pub &'a [CacheState]);

impl CacheView for StoredCaches<'_> {
    fn read(&self, user: usize, file: usize, sub: usize) -> Option<u64> {
        self.0[user].holds(file, sub).then(|| subpacket_payload(file, sub))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeOutcome {
    Success,
    /// `missing` subpackets were never recovered, `wrong` were recovered
    /// with the wrong content, `uncancellable` XOR operands could not be
    /// removed for lack of side information.
    Failure {
        missing: usize,
        wrong: usize,
        uncancellable: usize,
    },
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, DecodeOutcome::Success)
    }
}

/// Reconstructs user `user`'s requested file from its cache and the
/// broadcast, then checks every subpacket against the true content.
pub fn decode(
    user: usize,
    profile: &RequestProfile,
    caches: &[CacheState],
    tx: &Transmission,
) -> DecodeOutcome {
    decode_with(user, profile, &StoredCaches(caches), tx)
}

/// [`decode`] against an arbitrary cache view.
///
/// The user keeps what it has cached, takes any whole-file send of its
/// file, and peels each coded message that carries an operand for it by
/// XOR-ing out every other operand from its cache.
pub fn decode_with<V: CacheView + ?Sized>(
    user: usize,
    profile: &RequestProfile,
    view: &V,
    tx: &Transmission,
) -> DecodeOutcome {
    let file = profile.file_of(user);
    let mut recovered: Vec<Option<u64>> = (0..tx.subpackets).map(|j| view.read(user, file, j)).collect();
    let mut uncancellable = 0;

    for send in tx.direct.iter().filter(|d| d.file == file) {
        for (slot, &value) in recovered.iter_mut().zip(&send.payload) {
            slot.get_or_insert(value);
        }
    }

    for msg in &tx.coded {
        let Some(own) = msg.term_for(user) else {
            continue;
        };
        for (pos, &target) in own.subpackets.iter().enumerate() {
            let mut acc = msg.payload[pos];
            let mut clean = true;
            for other in msg.terms.iter().filter(|t| t.user != user) {
                let Some(&sub) = other.subpackets.get(pos) else {
                    continue;
                };
                match view.read(user, other.file, sub) {
                    Some(side) => acc ^= side,
                    None => {
                        clean = false;
                        uncancellable += 1;
                    }
                }
            }
            if clean {
                recovered[target].get_or_insert(acc);
            }
        }
    }

    let missing = recovered.iter().filter(|r| r.is_none()).count();
    let wrong = recovered
        .iter()
        .enumerate()
        .filter(|(j, r)| matches!(r, Some(v) if *v != subpacket_payload(file, *j)))
        .count();
    if missing == 0 && wrong == 0 && uncancellable == 0 {
        DecodeOutcome::Success
    } else {
        DecodeOutcome::Failure { missing, wrong, uncancellable }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::build_delivery;
    use crate::model::FileSet;

    const A: usize = 0;
    const B: usize = 1;

    #[test]
    fn user_recovers_b_from_b_xor_a() {
        // C1 = [A1, A2], C2 = [B1, B2]; user 1 wants B, user 2 wants A.
        let caches = vec![
            CacheState::from_pairs(2, 2, [(A, 0), (A, 1)]),
            CacheState::from_pairs(2, 2, [(B, 0), (B, 1)]),
        ];
        let profile = RequestProfile::new(vec![B, A]);
        let tx = build_delivery(&profile, &caches, &FileSet::full(2), 20).unwrap();
        assert_eq!(tx.coded.len(), 1);
        assert_eq!(tx.coded[0].payload[0], subpacket_payload(B, 0) ^ subpacket_payload(A, 0));
        assert!(decode(0, &profile, &caches, &tx).is_success());
        assert!(decode(1, &profile, &caches, &tx).is_success());
    }

    #[test]
    fn direct_send_decodes() {
        let caches = vec![CacheState::empty(3, 5)];
        let profile = RequestProfile::new(vec![2]);
        let tx = build_delivery(&profile, &caches, &FileSet::from_indices([0]), 20).unwrap();
        assert!(decode(0, &profile, &caches, &tx).is_success());
    }

    #[test]
    fn missing_side_information_is_reported() {
        let mut caches = vec![
            CacheState::from_pairs(2, 2, [(A, 0), (B, 0)]),
            CacheState::from_pairs(2, 2, [(A, 1), (B, 1)]),
        ];
        let profile = RequestProfile::new(vec![A, A]);
        let tx = build_delivery(&profile, &caches, &FileSet::full(2), 20).unwrap();
        caches[0].remove(A, 0);
        assert!(matches!(decode(0, &profile, &caches, &tx), DecodeOutcome::Failure { .. }));
    }
}
