//! Online coded caching: a subpacket-level placement and delivery engine,
//! popularity-tracking and baseline policies, closed-form regret and
//! lower-bound calculators, and a Monte Carlo harness.

pub mod bounds;
pub mod engine;
pub mod error;
pub mod harness;
pub mod model;
pub mod policy;

pub use error::{Error, Result};
pub use model::{FileSet, PopularityDistribution, RequestProfile, StreamSeed, SystemParams};
pub use policy::PolicyKind;
