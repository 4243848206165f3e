//! Bit-level decentralized coded caching: random placement, XOR multicast
//! delivery, decoding, and the analytic per-slot rate.
//!
//! Files are split into `F` subpackets and only membership patterns are
//! simulated. Subpacket content is a deterministic 64-bit tag so that
//! decoding can be checked end to end.

mod decode;
mod delivery;
mod fuzz;
mod placement;
mod rate;

pub use decode::{decode, decode_with, CacheView, DecodeOutcome, StoredCaches};
pub use delivery::{
    build_delivery, subpacket_payload, CodedMessage, DirectSend, Term, Transmission, DEFAULT_SUBSET_CAP,
};
pub use fuzz::{fuzz_decodability, FuzzConfig, FuzzReport};
pub use placement::{sample_placement, CacheState, Placement};
pub use rate::approx_rate;
