//! Log-domain evaluation of the lower bound for the high moments, the
//! divergence sweep over `ln n`, and the critical truncation map.

mod chain;
mod critical;
mod input;
mod sweep;

pub use chain::{
    exact_log_class_count, log_class_count_factor, log_nu2_sum, log_principal_factor,
    log_r_lower_bound, LogBoundBreakdown, Nu2Sum,
};
pub use critical::{critical_truncation, critical_truncation_exact};
pub use input::{BoundInput, Derived, RegimeFlags};
pub use sweep::{divergence_sweep, leading_term_threshold, ln_grid, Sweep, SweepRow};
