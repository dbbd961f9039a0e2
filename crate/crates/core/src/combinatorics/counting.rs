use std::f64::consts::{E, PI};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::numeric::{binomial, ln_biguint};

/// Upper bound on the number of children of every vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeBound(usize);

impl DegreeBound {
    pub fn new(d0: usize) -> Result<Self> {
        if d0 == 0 {
            return Err(invalid("degree bound d0 must be at least 1"));
        }
        Ok(DegreeBound(d0))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// `(2s)! / (s! (s+1)!)`.
pub fn catalan(s: u64) -> BigUint {
    binomial(2 * s, s) / (s + 1)
}

/// Number of plane rooted trees with `s` edges in which no vertex has more
/// than `d0` children.
pub fn count_bounded_children(s: usize, d: DegreeBound) -> BigUint {
    bounded_children_table(s, d)
        .pop()
        .expect("table has s + 1 entries")
}

/// `counts[m]` for every `m <= s_max`.
///
/// A tree is a root with `k <= d0` children, each hanging a subtree; with
/// `forests[k][m]` the number of ordered `k`-tuples of (edge + subtree) using
/// `m` edges in total, `T(m) = sum_k forests[k][m]` and
/// `forests[k][m] = sum_{j>=1} T(j-1) * forests[k-1][m-j]`.
pub fn bounded_children_table(s_max: usize, d: DegreeBound) -> Vec<BigUint> {
    let k_max = d.get().min(s_max);
    let mut counts: Vec<BigUint> = Vec::with_capacity(s_max + 1);
    let mut forests = vec![vec![BigUint::zero(); s_max + 1]; k_max + 1];
    forests[0][0] = BigUint::one();
    for m in 0..=s_max {
        for k in 1..=k_max.min(m) {
            let mut acc = BigUint::zero();
            for j in 1..=m {
                let tail = &forests[k - 1][m - j];
                if !tail.is_zero() {
                    acc += &counts[j - 1] * tail;
                }
            }
            forests[k][m] = acc;
        }
        let total = (0..=k_max.min(m)).fold(BigUint::zero(), |acc, k| acc + &forests[k][m]);
        counts.push(total);
    }
    counts
}

/// The two printed prefactors of the degree-bound correction term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prefactor {
    /// `(2s + 1)`, as in the bounded-children estimate.
    TwoSPlusOne,
    /// `s`, as carried into the estimate for the T4-completed family.
    S,
}

impl Prefactor {
    fn value(self, s: f64) -> f64 {
        match self {
            Prefactor::TwoSPlusOne => 2.0 * s + 1.0,
            Prefactor::S => s,
        }
    }
}

/// A lower bound of the form `parenthesis * exp(ln_magnitude)`, where the
/// parenthesis may be non-positive (and then the bound carries no information).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactoredBound {
    pub parenthesis: f64,
    pub ln_magnitude: f64,
}

impl FactoredBound {
    pub fn is_positive(&self) -> bool {
        self.parenthesis > 0.0
    }

    /// Natural log of the bound; `None` when the parenthesis is not positive.
    pub fn ln(&self) -> Option<f64> {
        self.is_positive()
            .then(|| self.parenthesis.ln() + self.ln_magnitude)
    }

    /// Raw real value, possibly negative, never clamped.
    pub fn value(&self) -> f64 {
        self.parenthesis * self.ln_magnitude.exp()
    }
}

/// `1 - prefactor * e^{-(d0-2) ln(4/3)}`.
pub fn degree_correction(prefactor: f64, d0: f64) -> f64 {
    1.0 - prefactor * (-(d0 - 2.0) * (4.0f64 / 3.0).ln()).exp()
}

/// `(1 - (2s+1) e^{-(d0-2) ln(4/3)}) * catalan(s)` (or with prefactor `s`).
pub fn bounded_children_lower_bound(s: u64, d0: f64, form: Prefactor) -> FactoredBound {
    FactoredBound {
        parenthesis: degree_correction(form.value(s as f64), d0),
        ln_magnitude: ln_biguint(&catalan(s)),
    }
}

/// Log-domain lower estimate for the T4-completed family on `s'` ascents:
/// `(1 - s'' e^{-(d0-2) ln(4/3)}) * 4^{s'/5+3} / (2 e^2 sqrt(pi)) * (s'+1)^{-3/2}`
/// with `s'' = floor(s'/5)`. Arguments are real so astronomically large `s'`
/// can be evaluated; integer values are expected.
pub fn tilde_t_lower_bound(s_prime: f64, d0: f64) -> FactoredBound {
    let s_pp = (s_prime / 5.0).floor();
    let ln_magnitude = (s_prime / 5.0 + 3.0) * 4.0f64.ln()
        - (2.0 * E * E * PI.sqrt()).ln()
        - 1.5 * (s_prime + 1.0).ln();
    FactoredBound {
        parenthesis: degree_correction(s_pp, d0),
        ln_magnitude,
    }
}

/// Exact size of the T4-completed family: bounded skeletons on `s'' = floor(s'/5)`
/// edges times unrestricted Catalan completions of the remaining `2s' - 10s''` steps.
pub fn count_tilde_t(s_prime: usize, d: DegreeBound) -> BigUint {
    let s_pp = s_prime / 5;
    count_bounded_children(s_pp, d) * catalan((s_prime - 5 * s_pp) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_dyck, PlaneTree};

    fn brute_bounded(s: usize, d0: usize) -> u64 {
        enumerate_dyck(s)
            .unwrap()
            .filter(|p| PlaneTree::from_dyck(p).max_children() <= d0)
            .count() as u64
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigUint::one());
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(10), BigUint::from(16796u32));
        for s in 0..=10 {
            assert_eq!(
                catalan(s),
                BigUint::from(enumerate_dyck(s as usize).unwrap().count())
            );
        }
    }

    #[test]
    fn bounded_children_examples() {
        let d = |v| DegreeBound::new(v).unwrap();
        assert_eq!(count_bounded_children(3, d(3)), BigUint::from(5u32));
        assert_eq!(count_bounded_children(3, d(2)), BigUint::from(4u32));
        assert_eq!(count_bounded_children(1, d(1)), BigUint::one());
        assert_eq!(count_bounded_children(0, d(1)), BigUint::one());
        assert!(DegreeBound::new(0).is_err());
    }

    #[test]
    fn dp_matches_enumeration() {
        for s in 0..=8 {
            for d0 in 1..=8 {
                let dp = count_bounded_children(s, DegreeBound::new(d0).unwrap());
                assert_eq!(dp, BigUint::from(brute_bounded(s, d0)), "s={s} d0={d0}");
            }
        }
    }

    #[test]
    fn dp_is_monotone_and_saturates_at_catalan() {
        for s in [5usize, 12, 30] {
            let mut prev = BigUint::zero();
            for d0 in 1..=s + 2 {
                let c = count_bounded_children(s, DegreeBound::new(d0).unwrap());
                assert!(c >= prev);
                if d0 >= s {
                    assert_eq!(c, catalan(s as u64));
                }
                prev = c;
            }
        }
    }

    #[test]
    fn degree_bound_estimate_below_dp() {
        for d0 in 3..=10usize {
            let table = bounded_children_table(200, DegreeBound::new(d0).unwrap());
            for s in 1..=200u64 {
                for form in [Prefactor::TwoSPlusOne, Prefactor::S] {
                    let b = bounded_children_lower_bound(s, d0 as f64, form);
                    if let Some(ln) = b.ln() {
                        assert!(
                            ln <= ln_biguint(&table[s as usize]) + 1e-12,
                            "s={s} d0={d0}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn degree_bound_estimate_limits() {
        let b = bounded_children_lower_bound(5, 200.0, Prefactor::TwoSPlusOne);
        assert!((b.value() - 42.0).abs() < 1e-9);
        let raw = bounded_children_lower_bound(5, 2.0, Prefactor::TwoSPlusOne);
        // 1 - 11 * 1 = -10, times catalan(5) = 42, unclamped
        assert!((raw.value() + 420.0).abs() < 1e-9);
        assert!(raw.ln().is_none());
    }

    #[test]
    fn tilde_t_estimate_below_exact_count() {
        let d = DegreeBound::new(60).unwrap();
        for s_prime in 5..=50usize {
            let b = tilde_t_lower_bound(s_prime as f64, 60.0);
            let ln = b.ln().expect("d0 large keeps the parenthesis positive");
            assert!(ln <= ln_biguint(&count_tilde_t(s_prime, d)), "s'={s_prime}");
        }
    }

    #[test]
    fn tilde_t_estimate_monotone_in_d0() {
        let values: Vec<f64> = (3..40)
            .map(|d0| tilde_t_lower_bound(40.0, d0 as f64).value())
            .collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tilde_t_desk_value() {
        // s' = 10, s'' = 2: parenthesis 1 - 2 (3/4)^18, magnitude 4^5 / (2 e^2 sqrt(pi) 11^{3/2})
        let b = tilde_t_lower_bound(10.0, 20.0);
        let par = 1.0 - 2.0 * 0.75f64.powi(18);
        let mag = 1024.0 / (2.0 * E * E * PI.sqrt() * 11f64.powf(1.5));
        assert!((b.value() - par * mag).abs() < 1e-12);
        // and it sits below catalan(2) = 2 completed by catalan(0) = 1
        assert!(b.value() <= 2.0);
    }
}
