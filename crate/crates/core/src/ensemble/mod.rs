//! Heavy-tailed entry law, truncation, matrix sampling and Monte Carlo trace
//! moments.

mod law;
mod matrix;

pub use law::{
    sample_entry, truncated_even_moment, truncated_even_moment_exact, truncation_level,
    untruncated_even_moment, EntryLaw, Phi, TruncationRule, C_PHI, TAIL_EXPONENT,
};
pub use matrix::{
    mc_trace_moment, mc_trace_moment_partitioned, sample_matrix, trace_even_power, trial_rng,
    McConfig, McEstimate, SampledMatrix,
};
