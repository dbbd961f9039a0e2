use std::fmt;

use crate::error::{Error, Result};

/// Parameters of the lower-bound chain. Only `ln n` is stored so that `n`
/// may be far beyond the range of matrix sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInput {
    pub ln_n: f64,
    pub theta: f64,
    pub epsilon: f64,
    pub epsilon_prime: f64,
    /// Scale of the self-intersection cutoff `sigma = ceil(y n^{1/3})`;
    /// defaults to `e theta^2 / 2`.
    pub y: Option<f64>,
}

impl BoundInput {
    pub fn new(ln_n: f64, theta: f64, epsilon: f64, epsilon_prime: f64) -> Result<Self> {
        if !(ln_n >= 0.0) || !ln_n.is_finite() {
            return Err(Error::Domain(format!(
                "ln n must be finite and nonnegative, got {ln_n}"
            )));
        }
        for (name, v) in [
            ("theta", theta),
            ("epsilon", epsilon),
            ("epsilon'", epsilon_prime),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(BoundInput {
            ln_n,
            theta,
            epsilon,
            epsilon_prime,
            y: None,
        })
    }

    pub fn from_n(n: f64, theta: f64, epsilon: f64, epsilon_prime: f64) -> Result<Self> {
        if !(n >= 1.0) {
            return Err(Error::Domain(format!("n must be at least 1, got {n}")));
        }
        Self::new(n.ln(), theta, epsilon, epsilon_prime)
    }

    pub fn with_y(mut self, y: f64) -> Self {
        self.y = Some(y);
        self
    }

    pub fn n(&self) -> f64 {
        self.ln_n.exp()
    }

    fn n_pow(&self, a: f64) -> f64 {
        (a * self.ln_n).exp()
    }

    /// Integer and real parameters derived from the input.
    pub fn derive(&self) -> Derived {
        let n23 = self.theta * self.n_pow(2.0 / 3.0);
        let s = floor(n23);
        let l = floor(n23 / 2.0);
        let s_prime = s - 1.0 - l;
        let s_pp = (s_prime / 5.0).floor();
        let big_d = floor(self.n_pow(2.0 / 3.0 - self.epsilon_prime)) + 1.0;
        let d0 = self.n_pow(self.epsilon_prime / 6.0);
        let u_tilde = self.n_pow(1.0 / 6.0 + self.epsilon);
        let y_min = std::f64::consts::E * self.theta * self.theta / 4.0;
        let y = self.y.unwrap_or(2.0 * y_min);
        let n13 = self.n_pow(1.0 / 3.0);
        let raw_sigma = ceil(y * n13);
        let room = (s_prime - 5.0 * big_d).max(0.0);
        let sigma_clamped = raw_sigma > room;
        let sigma = raw_sigma.min(room);
        Derived {
            s,
            l,
            s_prime,
            s_pp,
            big_d,
            d0,
            u_n: 2.0 * u_tilde,
            u_tilde,
            y,
            sigma,
            sigma_clamped,
            y_ok: y > y_min,
            epsilon_order_ok: self.epsilon_prime < self.epsilon,
        }
    }
}

/// Floor and ceiling that treat values within a few ulps of an integer as
/// that integer, so exact powers such as `1000^{2/3}` round as intended.
fn floor(x: f64) -> f64 {
    (x + x.abs() * 1e-12).floor()
}

fn ceil(x: f64) -> f64 {
    (x - x.abs() * 1e-12).ceil()
}

/// Parameters derived from a [`BoundInput`]; integer quantities are held as
/// exact integers in `f64` (they stay below `2^53` for `ln n <= 50` and are
/// only used inside logarithms beyond that).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derived {
    pub s: f64,
    pub l: f64,
    pub s_prime: f64,
    pub s_pp: f64,
    pub big_d: f64,
    pub d0: f64,
    pub u_n: f64,
    pub u_tilde: f64,
    pub y: f64,
    pub sigma: f64,
    pub sigma_clamped: bool,
    pub y_ok: bool,
    pub epsilon_order_ok: bool,
}

/// Conditions under which a bound evaluation leaves the regime of the
/// argument. Evaluation proceeds regardless; the flags are reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RegimeFlags {
    pub sigma_clamped: bool,
    pub y_too_small: bool,
    pub epsilon_order: bool,
    pub nu2_base_negative: bool,
    pub vertex_surplus_negative: bool,
    pub tilde_t_nonpositive: bool,
    pub selection_nonpositive: bool,
    pub principal_nonpositive: bool,
    pub l_below_d: bool,
}

impl RegimeFlags {
    pub fn any(&self) -> bool {
        self.names().next().is_some()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> {
        [
            (self.sigma_clamped, "sigma_clamped"),
            (self.y_too_small, "y_too_small"),
            (self.epsilon_order, "epsilon_order"),
            (self.nu2_base_negative, "nu2_base_negative"),
            (self.vertex_surplus_negative, "vertex_surplus_negative"),
            (self.tilde_t_nonpositive, "tilde_t_nonpositive"),
            (self.selection_nonpositive, "selection_nonpositive"),
            (self.principal_nonpositive, "principal_nonpositive"),
            (self.l_below_d, "l_below_d"),
        ]
        .into_iter()
        .filter(|(set, _)| *set)
        .map(|(_, name)| name)
    }
}

impl fmt::Display for RegimeFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.names().collect();
        if names.is_empty() {
            f.write_str("ok")
        } else {
            f.write_str(&names.join("|"))
        }
    }
}
