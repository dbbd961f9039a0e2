//! The witness family: walks built from a bounded-degree skeleton, glued
//! into a core of `D` edges of multiplicity 10 at a common vertex, with
//! simple self-intersections and there-and-back trips over the core.

mod build;
mod dump;
mod family;
mod params;
mod select;
mod validate;

#[cfg(test)]
mod tests;

pub use build::{
    attach_y_part, build_witness_walk, build_x_prime, factorized_weight, InsertedTree, XPrime,
};
pub use dump::{parse_walk_dump, write_walk_dump};
pub use family::{
    family_count, family_count_with_cap, family_lower_bound, family_walks, family_walks_with_cap,
    trip_schedules, FamilyCount, FamilyLowerBound,
};
pub use params::{EdgeDistance, WitnessChoice, WitnessParams, CORE_HALF_MULTIPLICITY};
pub use select::{ln_selection_lower_bound, select_principal_edges, MIN_EDGE_DISTANCE};
pub use validate::{validate_witness, WitnessReport};
