//! Enumeration caps.
//!
//! Defaults keep every exhaustive routine at desk scale. Each cap can be
//! raised through an environment variable, read once per process:
//!
//! | variable                          | default       |
//! |-----------------------------------|---------------|
//! | `WIGNER_LAB_DYCK_CAP`             | 14            |
//! | `WIGNER_LAB_WALK_CAP`             | 6             |
//! | `WIGNER_LAB_TRAJECTORY_BUDGET`    | 100000000     |
//! | `WIGNER_LAB_WITNESS_WALK_CAP`     | 2000000       |

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest semilength accepted by Dyck path enumeration.
    pub dyck: usize,
    /// Largest half-length accepted by even-walk enumeration.
    pub walks: usize,
    /// Largest number of index trajectories the brute-force oracle may visit.
    pub trajectory_budget: u64,
    /// Largest number of witness walks generated directly.
    pub witness_walks: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            dyck: 14,
            walks: 6,
            trajectory_budget: 100_000_000,
            witness_walks: 2_000_000,
        }
    }
}

impl Caps {
    pub fn from_env() -> Self {
        let defaults = Caps::default();
        Caps {
            dyck: env_or("WIGNER_LAB_DYCK_CAP", defaults.dyck),
            walks: env_or("WIGNER_LAB_WALK_CAP", defaults.walks),
            trajectory_budget: env_or("WIGNER_LAB_TRAJECTORY_BUDGET", defaults.trajectory_budget),
            witness_walks: env_or("WIGNER_LAB_WITNESS_WALK_CAP", defaults.witness_walks),
        }
    }

    /// Process-wide caps (environment overrides applied on first use).
    pub fn current() -> Caps {
        static CAPS: OnceLock<Caps> = OnceLock::new();
        *CAPS.get_or_init(Caps::from_env)
    }
}

fn env_or<T: std::str::FromStr>(key: &str, default: T) -> T {
    std::env::var(key)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}
