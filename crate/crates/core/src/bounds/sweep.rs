use super::chain::{log_r_lower_bound, LogBoundBreakdown};
use super::input::BoundInput;
use crate::ensemble::EntryLaw;
use crate::error::Result;

/// One evaluation of the normalized bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub breakdown: LogBoundBreakdown,
}

impl SweepRow {
    pub fn ln_n(&self) -> f64 {
        self.breakdown.input.ln_n
    }

    pub fn value(&self) -> Option<f64> {
        self.breakdown.normalized()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
}

impl Sweep {
    /// First grid point where the normalized bound is defined.
    pub fn first_defined(&self) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.value().is_some())
            .map(SweepRow::ln_n)
    }

    /// First grid point where the normalized bound is positive.
    pub fn first_positive(&self) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.value().is_some_and(|v| v > 0.0))
            .map(SweepRow::ln_n)
    }

    /// First grid point where the bound exceeds `level`.
    pub fn first_above(&self, level: f64) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.value().is_some_and(|v| v > level))
            .map(SweepRow::ln_n)
    }

    /// Smallest grid point from which the bound is defined at every later
    /// point and strictly increasing.
    pub fn increasing_from(&self) -> Option<f64> {
        let mut start = None;
        let mut prev: Option<f64> = None;
        for r in &self.rows {
            match (r.value(), prev) {
                (Some(v), Some(p)) if v > p => {}
                (Some(_), _) => start = Some(r.ln_n()),
                (None, _) => start = None,
            }
            prev = r.value();
            if r.value().is_none() {
                prev = None;
            }
        }
        start
    }

    /// True when the bound is defined and strictly increasing at every grid
    /// point with `ln n >= from`.
    pub fn strictly_increasing_beyond(&self, from: f64) -> bool {
        let vals: Vec<Option<f64>> = self
            .rows
            .iter()
            .filter(|r| r.ln_n() >= from)
            .map(SweepRow::value)
            .collect();
        vals.iter().all(Option::is_some) && vals.windows(2).all(|w| w[1].unwrap() > w[0].unwrap())
    }

    /// True when consecutive defined values never increase.
    pub fn non_increasing_where_defined(&self) -> bool {
        let vals: Vec<f64> = self.rows.iter().filter_map(SweepRow::value).collect();
        !vals.is_empty() && vals.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Evaluate the normalized bound on a grid of `ln n` values, in grid order.
pub fn divergence_sweep(
    theta: f64,
    epsilon: f64,
    epsilon_prime: f64,
    ln_n_grid: &[f64],
    law: &EntryLaw,
) -> Result<Sweep> {
    let rows = ln_n_grid
        .iter()
        .map(|&ln_n| {
            let b = BoundInput::new(ln_n, theta, epsilon, epsilon_prime)?;
            Ok(SweepRow {
                breakdown: log_r_lower_bound(&b, law)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep { rows })
}

/// `ln n` from `start` to `stop` inclusive in steps of `step`.
pub fn ln_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    if !(step > 0.0) || stop < start {
        return Vec::new();
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| start + i as f64 * step).collect()
}

/// `ln n* = 3 ln 4 / (theta eps')`, where the leading term
/// `n^{2/3}((theta eps'/3) ln n - ln 4)` of the final estimate changes sign.
pub fn leading_term_threshold(theta: f64, epsilon_prime: f64) -> f64 {
    3.0 * 4f64.ln() / (theta * epsilon_prime)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_construction() {
        assert_eq!(ln_grid(10.0, 12.0, 0.5), vec![10.0, 10.5, 11.0, 11.5, 12.0]);
        assert!(ln_grid(1.0, 0.0, 1.0).is_empty());
        assert!((leading_term_threshold(1.0, 0.2) - 20.794_415_416_798_36).abs() < 1e-12);
    }

    #[test]
    fn late_tail_grows_without_bound() {
        let s = divergence_sweep(
            1.0,
            0.25,
            0.2,
            &ln_grid(185.0, 200.0, 1.0),
            &EntryLaw::heavy_tail(),
        )
        .unwrap();
        assert!(s.strictly_increasing_beyond(185.0));
        assert!(s.first_above(1e3).is_some());
    }

    #[test]
    fn negative_control_decreases() {
        let s = divergence_sweep(
            1.0,
            0.25,
            0.6,
            &ln_grid(30.0, 200.0, 5.0),
            &EntryLaw::heavy_tail(),
        )
        .unwrap();
        assert!(s
            .rows
            .iter()
            .all(|r| r.breakdown.flags.principal_nonpositive));
        assert!(s.non_increasing_where_defined());
    }

    #[test]
    fn increasing_from_tracks_the_tail() {
        let s = divergence_sweep(
            1.0,
            0.25,
            0.2,
            &ln_grid(30.0, 200.0, 1.0),
            &EntryLaw::heavy_tail(),
        )
        .unwrap();
        let from = s.increasing_from().unwrap();
        assert!(from > 150.0 && from < 200.0);
        assert_eq!(s.first_defined(), Some(from));
    }
}
