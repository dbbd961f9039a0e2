use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::ensemble::{
    truncated_even_moment, truncated_even_moment_exact, untruncated_even_moment, C_PHI,
};
use crate::error::{invalid, Error, Result};
use crate::numeric::rational_to_f64;

#[derive(Debug, Clone, PartialEq)]
pub enum EvenMoments {
    /// Every even moment equals one (sign entries).
    Ones,
    /// Truncated heavy-tail law at a rational level.
    HeavyTailExact(BigRational),
    /// Truncated heavy-tail law at a real level.
    HeavyTailReal(f64),
    /// Explicit values; entry `k - 1` is `E|a|^{2k}`.
    Table(Vec<BigRational>),
}

/// What the walk sum needs to know about the entry law.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentProfile {
    /// Untruncated variance `v^2`.
    pub variance: f64,
    pub c_phi: f64,
    /// Truncation level, if any.
    pub u_n: Option<f64>,
    pub moments: EvenMoments,
}

impl MomentProfile {
    pub fn ones() -> Self {
        MomentProfile {
            variance: 1.0,
            c_phi: 0.0,
            u_n: None,
            moments: EvenMoments::Ones,
        }
    }

    pub fn heavy_tail(u_n: f64) -> Result<Self> {
        truncated_even_moment(1, u_n)?;
        Ok(Self::heavy(u_n, EvenMoments::HeavyTailReal(u_n)))
    }

    pub fn heavy_tail_exact(u_n: BigRational) -> Result<Self> {
        truncated_even_moment_exact(1, &u_n)?;
        let u = rational_to_f64(&u_n);
        Ok(Self::heavy(u, EvenMoments::HeavyTailExact(u_n)))
    }

    fn heavy(u: f64, moments: EvenMoments) -> Self {
        MomentProfile {
            variance: untruncated_even_moment(1).expect("finite variance"),
            c_phi: C_PHI,
            u_n: Some(u),
            moments,
        }
    }

    /// Profile from explicit moments `E|a|^2, E|a|^4, ...`.
    pub fn table(moments: Vec<BigRational>) -> Result<Self> {
        if moments.is_empty() || moments.iter().any(|m| m.is_negative()) {
            return Err(invalid("moment table must be non-empty and nonnegative"));
        }
        Ok(MomentProfile {
            variance: rational_to_f64(&moments[0]),
            c_phi: 0.0,
            u_n: None,
            moments: EvenMoments::Table(moments),
        })
    }

    pub fn u_tilde(&self) -> Option<f64> {
        self.u_n.map(|u| u / 2.0)
    }

    /// `E|a|^{2k}` exactly; `k = 0` gives one.
    pub fn even_moment_exact(&self, k: u32) -> Result<BigRational> {
        if k == 0 {
            return Ok(BigRational::one());
        }
        match &self.moments {
            EvenMoments::Ones => Ok(BigRational::one()),
            EvenMoments::HeavyTailExact(u) => truncated_even_moment_exact(k, u),
            EvenMoments::HeavyTailReal(_) => Err(Error::NotRational { order: 2 * k }),
            EvenMoments::Table(t) => t
                .get(k as usize - 1)
                .cloned()
                .ok_or_else(|| invalid(format!("moment table has no entry for order {}", 2 * k))),
        }
    }

    pub fn even_moment(&self, k: u32) -> Result<f64> {
        match &self.moments {
            EvenMoments::HeavyTailReal(u) if k > 0 => truncated_even_moment(k, *u),
            EvenMoments::HeavyTailExact(u) if k == 6 => {
                truncated_even_moment(k, rational_to_f64(u))
            }
            _ => self.even_moment_exact(k).map(|m| rational_to_f64(&m)),
        }
    }

    /// Truncated variance `E|a|^2`.
    pub fn truncated_variance(&self) -> Result<f64> {
        self.even_moment(1)
    }
}

pub(crate) fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_variance_is_below_untruncated() {
        for u in [1.5, 3.0, 10.0, 1e3] {
            let p = MomentProfile::heavy_tail(u).unwrap();
            let v = p.truncated_variance().unwrap();
            assert!(v > 0.0 && v <= p.variance);
        }
        let p = MomentProfile::heavy_tail_exact(BigRational::new(3.into(), 1.into())).unwrap();
        assert!(p.even_moment_exact(1).unwrap() < BigRational::new(6.into(), 5.into()));
        assert_eq!(
            p.even_moment_exact(6),
            Err(Error::NotRational { order: 12 })
        );
        assert!(p.even_moment(6).unwrap() > 0.0);
        assert_eq!(p.u_tilde(), Some(1.5));
    }

    #[test]
    fn table_profile() {
        let p = MomentProfile::table(vec![int(2), int(5)]).unwrap();
        assert_eq!(p.even_moment_exact(2).unwrap(), int(5));
        assert!(p.even_moment_exact(3).is_err());
        assert!(MomentProfile::table(vec![int(-1)]).is_err());
        assert!(MomentProfile::heavy_tail(1.0).is_err());
    }
}
