//! Catalan structures: Dyck paths, plane trees, bounded-children counts and
//! the T4 insertion used to build witness skeletons.

mod counting;
mod dyck;
mod stirling;
mod t4;
mod tree;

pub use counting::{
    bounded_children_lower_bound, bounded_children_table, catalan, count_bounded_children,
    count_tilde_t, degree_correction, tilde_t_lower_bound, DegreeBound, FactoredBound, Prefactor,
};
pub use dyck::{enumerate_dyck, enumerate_dyck_with_cap, DyckPath, DyckPaths, Step};
pub use stirling::{stirling_check, stirling_checks, stirling_log_gaps, StirlingCheck};
pub use t4::{t4_insert, t4_insert_tagged, t4_restrict, Origin, T4_BLOCK};
pub use tree::PlaneTree;
