//! Closed-form rate, regret, switching-cost and lower-bound quantities.

mod lower;
mod rates;
mod regret;
mod switching;

pub use lower::{
    bad_set_gap, brute_force_gap_check, check_bad_set_gap, check_lower_bound_preconditions, is_bad_set,
    kl_divergence, kl_per_slot, kl_total, regret_curve, regret_lower_bound, BadSetCheck, Instance,
    LowerBoundReport, MAX_ENUMERATED_FILES,
};
pub use rates::{oracle_rate_upper, positive_part, rate_lower_bound, GapVector};
pub use regret::{
    bound_report, chernoff_tail, clamp_probability, dkw_tail, regret_upper_bound, BoundReport, KoChoice,
    RegretConstants,
};
pub use switching::{
    switch_event_bounds, switching_constants, switching_cost_bound, SwitchEventBounds, SwitchingConstants,
};
