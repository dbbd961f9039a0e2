use num_rational::Ratio;

use crate::error::{Error, Result};

/// Truncation exponent `1/2 - eta/2` and moment order `4/(1 - eta)` for the
/// regime `s_n = O(n^eta)`.
pub fn critical_truncation(eta: f64) -> Result<(f64, f64)> {
    if !(0.0..=2.0 / 3.0).contains(&eta) {
        return Err(Error::Domain(format!(
            "eta must lie in [0, 2/3], got {eta}"
        )));
    }
    Ok((0.5 - eta / 2.0, 4.0 / (1.0 - eta)))
}

/// Exact rational version of [`critical_truncation`].
pub fn critical_truncation_exact(eta: Ratio<i64>) -> Result<(Ratio<i64>, Ratio<i64>)> {
    let zero = Ratio::from_integer(0);
    let top = Ratio::new(2, 3);
    if eta < zero || eta > top {
        return Err(Error::Domain(format!(
            "eta must lie in [0, 2/3], got {eta}"
        )));
    }
    let one = Ratio::from_integer(1);
    let half = Ratio::new(1, 2);
    Ok((half - eta / 2, Ratio::from_integer(4) / (one - eta)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_midpoint() {
        assert_eq!(
            critical_truncation_exact(Ratio::new(2, 3)).unwrap(),
            (Ratio::new(1, 6), Ratio::from_integer(12))
        );
        assert_eq!(
            critical_truncation_exact(Ratio::from_integer(0)).unwrap(),
            (Ratio::new(1, 2), Ratio::from_integer(4))
        );
        assert_eq!(
            critical_truncation_exact(Ratio::new(1, 3)).unwrap(),
            (Ratio::new(1, 3), Ratio::from_integer(6))
        );
        assert_eq!(critical_truncation(0.0).unwrap(), (0.5, 4.0));
        assert!(critical_truncation(0.7).is_err());
        assert!(critical_truncation_exact(Ratio::new(-1, 5)).is_err());
    }
}
