//! Two-sided Stirling estimate for factorials,
//! `sqrt(2 pi k) (k/e)^k <= k! <= e sqrt(2 pi k) (k/e)^k`, checked exactly.
//!
//! Both sides are squared to clear the square root and `pi`, `e` are replaced
//! by rational enclosures, so the comparison is done in integer arithmetic.

use num_bigint::BigUint;
use num_traits::One;

use crate::numeric::{factorial, ln_biguint};

const PI_UPPER: (u32, u32) = (355, 113);
const PI_LOWER: (u32, u32) = (333, 106);
const E_SERIES_TERMS: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StirlingCheck {
    pub lower: bool,
    pub upper: bool,
}

impl StirlingCheck {
    pub fn holds(&self) -> bool {
        self.lower && self.upper
    }
}

/// Rational enclosure `lo < e < hi` from the truncated exponential series,
/// returned as `(lo_num, hi_num, den)`.
fn e_enclosure() -> (BigUint, BigUint, BigUint) {
    let den = factorial(E_SERIES_TERMS);
    let mut lo = BigUint::from(0u32);
    for i in 0..=E_SERIES_TERMS {
        lo += &den / factorial(i);
    }
    // tail sum_{i>N} 1/i! < 2/(N+1)!
    let hi = &lo + BigUint::from(2u32) * &den / factorial(E_SERIES_TERMS + 1) + 1u32;
    (lo, hi, den)
}

/// Exact check of both Stirling inequalities for every `k` in `1..=k_max`.
pub fn stirling_checks(k_max: u64) -> Vec<StirlingCheck> {
    let (e_lo, e_hi, e_den) = e_enclosure();
    let mut out = Vec::with_capacity(k_max as usize);
    // running values: k!, e_lo^{2k}, e_den^{2k}, e_hi^{2k-2}, e_den^{2k-2}
    let mut fact = BigUint::one();
    let mut lo_pow = BigUint::one();
    let mut den_pow = BigUint::one();
    let mut hi_pow_m2 = BigUint::one();
    let mut den_pow_m2 = BigUint::one();
    let e_lo2 = &e_lo * &e_lo;
    let e_hi2 = &e_hi * &e_hi;
    let e_den2 = &e_den * &e_den;
    for k in 1..=k_max {
        fact *= k;
        lo_pow *= &e_lo2;
        den_pow *= &e_den2;
        if k >= 2 {
            hi_pow_m2 *= &e_hi2;
            den_pow_m2 *= &e_den2;
        }
        let fact2 = &fact * &fact;
        let k_pow = BigUint::from(k).pow(2 * k as u32);
        // 2 pi k k^{2k} <= (k!)^2 e^{2k}, with pi < 355/113 and e > lo/den
        let lower = BigUint::from(2 * PI_UPPER.0) * k * &k_pow * &den_pow
            <= BigUint::from(PI_UPPER.1) * &fact2 * &lo_pow;
        // (k!)^2 e^{2k-2} <= 2 pi k k^{2k}, with pi > 333/106 and e < hi/den
        let upper = BigUint::from(PI_LOWER.1) * &fact2 * &hi_pow_m2
            <= BigUint::from(2 * PI_LOWER.0) * k * &k_pow * &den_pow_m2;
        out.push(StirlingCheck { lower, upper });
    }
    out
}

pub fn stirling_check(k: u64) -> StirlingCheck {
    *stirling_checks(k).last().expect("k >= 1")
}

/// Slack of both inequalities in log domain: `(ln k! - ln lower, ln upper - ln k!)`.
pub fn stirling_log_gaps(k: u64) -> (f64, f64) {
    let kf = k as f64;
    let ln_lower = 0.5 * (2.0 * std::f64::consts::PI * kf).ln() + kf * (kf.ln() - 1.0);
    let ln_fact = ln_biguint(&factorial(k));
    (ln_fact - ln_lower, ln_lower + 1.0 - ln_fact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosure_brackets_e() {
        let (lo, hi, den) = e_enclosure();
        let scale = BigUint::from(10u64.pow(15));
        // 2.718281828459045 < e < 2.718281828459046
        assert!(&lo * &scale < BigUint::from(2_718_281_828_459_046u64) * &den);
        assert!(&hi * &scale > BigUint::from(2_718_281_828_459_045u64) * &den);
        assert!(lo < hi);
    }

    #[test]
    fn sandwich_for_small_k() {
        assert!(stirling_checks(50).iter().all(StirlingCheck::holds));
        let (lo, hi) = stirling_log_gaps(10);
        assert!(lo > 0.0 && hi > 0.0);
        // lower slack behaves like 1/(12k)
        assert!((lo - 1.0 / 120.0).abs() < 1e-4);
    }
}
