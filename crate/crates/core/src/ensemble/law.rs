use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};

/// Tail exponent of the heavy-tailed law: `P(|x| > t) = t^{-12}` for `t >= 1`.
pub const TAIL_EXPONENT: u32 = 12;
/// Normalization constant of the density `C_phi phi(|x|) |x|^{-13}` on `|x| > 1`.
pub const C_PHI: f64 = 6.0;

/// Slowly varying factor of the density. Only the constant one has closed-form
/// moments; other choices are sampled by rejection against it.
#[derive(Debug, Clone, Copy)]
pub enum Phi {
    One,
    Custom(fn(f64) -> f64),
}

impl Phi {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Phi::One => 1.0,
            Phi::Custom(f) => f(x),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum EntryLaw {
    /// Density proportional to `phi(|x|) |x|^{-13}` on `|x| > 1`.
    HeavyTail { phi: Phi },
    /// Symmetric signs; every even moment equals one.
    Rademacher,
}

impl Default for EntryLaw {
    fn default() -> Self {
        EntryLaw::HeavyTail { phi: Phi::One }
    }
}

impl EntryLaw {
    pub fn heavy_tail() -> Self {
        Self::default()
    }

    /// Analytic CDF of the entry (heavy tail with `phi = 1`, or signs).
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            EntryLaw::HeavyTail { .. } => {
                if x <= -1.0 {
                    0.5 * (-x).powi(-(TAIL_EXPONENT as i32))
                } else if x < 1.0 {
                    0.5
                } else {
                    1.0 - 0.5 * x.powi(-(TAIL_EXPONENT as i32))
                }
            }
            EntryLaw::Rademacher => {
                if x < -1.0 {
                    0.0
                } else if x < 1.0 {
                    0.5
                } else {
                    1.0
                }
            }
        }
    }

    /// Untruncated moment `E|a|^{2k}`; `None` when infinite.
    pub fn even_moment(&self, k: u32) -> Option<f64> {
        match self {
            EntryLaw::Rademacher => Some(1.0),
            EntryLaw::HeavyTail { .. } => untruncated_even_moment(k),
        }
    }
}

/// `E|a|^{2k} = 12/(12-2k)` for the `phi = 1` law, finite only for `k < 6`.
pub fn untruncated_even_moment(k: u32) -> Option<f64> {
    if k == 0 {
        return Some(1.0);
    }
    (2 * k < TAIL_EXPONENT).then(|| 2.0 * C_PHI / (TAIL_EXPONENT - 2 * k) as f64)
}

/// Draw one entry: random sign times `u^{-1/12}` (rejection by `phi` if custom).
pub fn sample_entry<R: Rng + ?Sized>(law: &EntryLaw, rng: &mut R) -> f64 {
    match law {
        EntryLaw::Rademacher => {
            if rng.gen::<bool>() {
                1.0
            } else {
                -1.0
            }
        }
        EntryLaw::HeavyTail { phi } => loop {
            // 1 - gen() lies in (0, 1], so the magnitude is finite and >= 1
            let u: f64 = 1.0 - rng.gen::<f64>();
            let magnitude = u.powf(-1.0 / TAIL_EXPONENT as f64);
            let accept = match phi {
                Phi::One => true,
                p => rng.gen::<f64>() < p.eval(magnitude),
            };
            if accept {
                let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                break sign * magnitude;
            }
        },
    }
}

/// `E[|a|^{2k}; |a| < U]` for the `phi = 1` law:
/// `12 (U^{2k-12} - 1)/(2k-12)` for `k != 6` and `12 ln U` for `k = 6`.
pub fn truncated_even_moment(k: u32, u: f64) -> Result<f64> {
    if !(u > 1.0) {
        return Err(Error::Domain(format!(
            "truncation level must exceed 1, got {u}"
        )));
    }
    if k == 0 {
        return Ok(1.0 - u.powi(-(TAIL_EXPONENT as i32)));
    }
    let a = 2.0 * C_PHI;
    let p = 2 * k as i32 - TAIL_EXPONENT as i32;
    Ok(if p == 0 {
        a * u.ln()
    } else {
        // (U^p - 1)/p, written to stay accurate when U^p is close to 1
        a * (p as f64 * u.ln()).exp_m1() / p as f64
    })
}

/// Exact version of [`truncated_even_moment`] for a rational level; the
/// logarithmic order `k = 6` has no rational value.
pub fn truncated_even_moment_exact(k: u32, u: &BigRational) -> Result<BigRational> {
    if *u <= BigRational::one() {
        return Err(Error::Domain(format!(
            "truncation level must exceed 1, got {u}"
        )));
    }
    let p = 2 * k as i32 - TAIL_EXPONENT as i32;
    if k == 0 {
        return Ok(BigRational::one() - pow_rational(u, -(TAIL_EXPONENT as i32)));
    }
    if p == 0 {
        return Err(Error::NotRational { order: 2 * k });
    }
    let a = BigRational::from_integer(BigInt::from(2 * C_PHI as i64));
    Ok(a * (pow_rational(u, p) - BigRational::one()) / BigRational::from_integer(BigInt::from(p)))
}

fn pow_rational(u: &BigRational, p: i32) -> BigRational {
    let mag = num_traits::pow(u.clone(), p.unsigned_abs() as usize);
    if p < 0 {
        mag.recip()
    } else {
        mag
    }
}

/// Truncation level `U_n = 2 n^{1/6 + eps}`; values with `|a| >= U_n` are
/// replaced by zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationRule {
    pub u_n: f64,
    pub epsilon: Option<f64>,
}

impl TruncationRule {
    pub fn for_dimension(n: u64, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) || n == 0 {
            return Err(Error::Domain(format!(
                "need n >= 1 and eps > 0, got n={n}, eps={epsilon}"
            )));
        }
        Ok(TruncationRule {
            u_n: truncation_level(n as f64, epsilon),
            epsilon: Some(epsilon),
        })
    }

    /// Explicit level. `U = 1` is accepted and removes every entry.
    pub fn with_level(u_n: f64) -> Result<Self> {
        if !(u_n >= 1.0) || !u_n.is_finite() {
            return Err(Error::Domain(format!(
                "truncation level must be finite and >= 1, got {u_n}"
            )));
        }
        Ok(TruncationRule { u_n, epsilon: None })
    }

    pub fn u_tilde(&self) -> f64 {
        self.u_n / 2.0
    }

    pub fn apply(&self, x: f64) -> f64 {
        if x.abs() >= self.u_n {
            0.0
        } else {
            x
        }
    }
}

pub fn truncation_level(n: f64, epsilon: f64) -> f64 {
    2.0 * n.powf(1.0 / 6.0 + epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn closed_form_untruncated_moments() {
        assert_eq!(untruncated_even_moment(1), Some(1.2));
        assert_eq!(untruncated_even_moment(2), Some(1.5));
        assert_eq!(untruncated_even_moment(5), Some(6.0));
        assert_eq!(untruncated_even_moment(6), None);
        // total mass 2 C_phi / 12 = 1
        assert_eq!(2.0 * C_PHI / TAIL_EXPONENT as f64, 1.0);
    }

    #[test]
    fn tail_probability() {
        let law = EntryLaw::heavy_tail();
        let p = law.cdf(-2.0) + 1.0 - law.cdf(2.0);
        assert!((p - 2f64.powi(-12)).abs() < 1e-18);
    }

    #[test]
    fn truncated_moment_examples() {
        assert!((truncated_even_moment(6, std::f64::consts::E).unwrap() - 12.0).abs() < 1e-12);
        assert!((truncated_even_moment(1, 1e6).unwrap() - 1.2).abs() < 1e-12);
        assert!(truncated_even_moment(3, 1.0).is_err());
        assert!(truncated_even_moment(3, 0.5).is_err());
        assert!(truncated_even_moment(0, 2.0).unwrap() < 1.0);
    }

    #[test]
    fn exact_matches_real() {
        let u = rat(7, 2);
        for k in (0..12).filter(|&k| k != 6) {
            let exact =
                crate::numeric::rational_to_f64(&truncated_even_moment_exact(k, &u).unwrap());
            let real = truncated_even_moment(k, 3.5).unwrap();
            assert!((exact - real).abs() <= 1e-12 * real.abs(), "k={k}");
        }
        assert_eq!(
            truncated_even_moment_exact(6, &u),
            Err(Error::NotRational { order: 12 })
        );
        assert!(truncated_even_moment_exact(2, &rat(1, 1)).is_err());
    }

    #[test]
    fn truncated_tail_lower_bound() {
        for &u in &[4.0, 16.0, 256.0, 65536.0f64] {
            for l in 1..=20u32 {
                let m = truncated_even_moment(6 + l, u).unwrap();
                let bound = 2.0 * C_PHI / u.ln() * (u / 2.0).powi(2 * l as i32);
                assert!(m >= bound, "U={u}, l={l}: {m} < {bound}");
            }
        }
    }

    #[test]
    fn truncation_removes_large_values() {
        let rule = TruncationRule::with_level(1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let law = EntryLaw::heavy_tail();
        assert!((0..1000).all(|_| rule.apply(sample_entry(&law, &mut rng)) == 0.0));
        assert!(TruncationRule::with_level(0.5).is_err());
        let r = TruncationRule::for_dimension(64, 0.1).unwrap();
        assert!((r.u_n - 2.0 * 64f64.powf(1.0 / 6.0 + 0.1)).abs() < 1e-12);
        assert_eq!(r.u_tilde(), r.u_n / 2.0);
    }

    #[test]
    fn samples_exceed_one_with_random_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let law = EntryLaw::heavy_tail();
        let xs: Vec<f64> = (0..10_000).map(|_| sample_entry(&law, &mut rng)).collect();
        assert!(xs.iter().all(|x| x.abs() >= 1.0 && x.is_finite()));
        let positive = xs.iter().filter(|&&x| x > 0.0).count();
        assert!((positive as f64 - 5000.0).abs() < 4.0 * 50.0);
    }

    #[test]
    fn custom_phi_is_rejection_sampled() {
        let law = EntryLaw::HeavyTail {
            phi: Phi::Custom(|x| 1.0 / (1.0 + x.ln())),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let xs: Vec<f64> = (0..2000).map(|_| sample_entry(&law, &mut rng)).collect();
        assert!(xs.iter().all(|x| x.abs() >= 1.0));
    }
}
