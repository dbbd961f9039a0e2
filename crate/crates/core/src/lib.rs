//! Trace moments of truncated heavy-tailed Wigner matrices: exact walk sums,
//! Monte Carlo estimates, the witness walk family and its divergence bound.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod caps;
pub mod combinatorics;
pub mod ensemble;
pub mod error;
pub mod numeric;
pub mod validation;
pub mod walks;
pub mod witness;

pub use caps::Caps;
pub use error::{Error, Result};
