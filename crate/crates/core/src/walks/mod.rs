//! Even closed walks, their frames and weights, and trace moments as walk sums.

mod enumerate;
mod frame;
mod moments;
mod oracle;
mod profile;
mod walk;

pub use enumerate::{enumerate_even_walks, enumerate_even_walks_with_cap, WalkCensus, WalkShape};
pub use frame::{frame_of, Frame};
pub use moments::{
    exact_moment, exact_moment_f64, exact_moment_from_census, semicircle_leading_term, walk_weight,
    walk_weight_f64,
};
pub use oracle::{sign_matrix_moment, trajectory_oracle, trajectory_oracle_with_budget};
pub use profile::{EvenMoments, MomentProfile};
pub use walk::{check_resolution, Walk};

pub(crate) use walk::{derived_marks, edge_key};
