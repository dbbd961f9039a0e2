//! Small numeric helpers shared by the counting and bound code.

use std::f64::consts::LN_2;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Natural logarithm of a big unsigned integer; `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * LN_2
}

/// Natural logarithm of a positive rational; `None` if it is not positive.
pub fn ln_rational(x: &BigRational) -> Option<f64> {
    if !x.is_positive() {
        return None;
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    Some(ln_biguint(num) - ln_biguint(den))
}

/// Lossy conversion of a rational to `f64` that survives huge numerators and denominators.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    sign * ln_rational(&x.abs()).map_or(0.0, f64::exp)
}

pub fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Coefficients of the falling factorial `x(x-1)...(x-r+1)` in the monomial
/// basis; index `j` holds the coefficient of `x^j` (signed Stirling numbers
/// of the first kind).
pub fn falling_factorial_coefficients(r: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    for i in 0..r {
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(i);
        }
        coeffs = next;
    }
    coeffs
}

/// `n(n-1)...(n-r+1)` as a big integer (zero when `r > n`).
pub fn falling_factorial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    (0..r).fold(BigUint::one(), |acc, i| acc * (n - i))
}

/// `ln Γ(x + 1)` for nonnegative real `x` via Stirling's series; accurate to
/// ~1e-15 relative for `x >= 10` and exact-summed below.
pub fn ln_factorial_real(x: f64) -> f64 {
    if x < 10.0 {
        let k = x.floor() as u64;
        let frac = x - k as f64;
        if frac == 0.0 {
            return (2..=k).map(|i| (i as f64).ln()).sum();
        }
        // shift upward and peel off the product
        let mut shift = 0.0;
        let mut y = x;
        while y < 10.0 {
            y += 1.0;
            shift += y.ln();
        }
        return ln_factorial_real(y) - shift;
    }
    let n = x + 1.0;
    let inv = 1.0 / n;
    let inv2 = inv * inv;
    (n - 0.5) * n.ln() - n
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_large_integer() {
        let x = BigUint::one() << 2000u32;
        assert!((ln_biguint(&x) - 2000.0 * LN_2).abs() < 1e-9);
        assert_eq!(ln_biguint(&BigUint::zero()), f64::NEG_INFINITY);
        assert_eq!(ln_biguint(&BigUint::from(1u32)), 0.0);
    }

    #[test]
    fn falling_factorial_polynomial() {
        // x(x-1)(x-2) = x^3 - 3x^2 + 2x
        let c = falling_factorial_coefficients(3);
        let expect: Vec<BigInt> = [0, 2, -3, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(c, expect);
        assert_eq!(falling_factorial(5, 3), BigUint::from(60u32));
        assert_eq!(falling_factorial(2, 3), BigUint::zero());
    }

    #[test]
    fn real_log_factorial_matches_integer_values() {
        for k in [0u64, 1, 5, 10, 20, 170] {
            let exact = ln_biguint(&factorial(k));
            assert!((ln_factorial_real(k as f64) - exact).abs() < 1e-9 * exact.max(1.0));
        }
        // Γ(1.5) = √π / 2
        let half = (std::f64::consts::PI.sqrt() / 2.0).ln();
        assert!((ln_factorial_real(0.5) - half).abs() < 1e-12);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
    }
}
