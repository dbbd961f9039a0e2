use std::f64::consts::{E, PI};

use super::input::{BoundInput, Derived, RegimeFlags};
use crate::combinatorics::tilde_t_lower_bound;
use crate::ensemble::{EntryLaw, C_PHI};
use crate::error::{Error, Result};
use crate::witness::CORE_HALF_MULTIPLICITY;

const P: f64 = CORE_HALF_MULTIPLICITY as f64;

/// Log of the lower estimate for `n^{-s} |C(w)|` over walks with
/// `s + 1 - 5D - nu2 - L` vertices:
/// `-(5D + nu2 + L) ln n - (s' + 2 - nu2 - 5D)^2 / (2n)` with `s' = s - 1 - L`.
pub fn log_class_count_factor(ln_n: f64, s: f64, big_d: f64, nu2: f64, l: f64) -> Result<f64> {
    if s - P * big_d - nu2 - l < 0.0 {
        return Err(Error::Domain(format!(
            "vertex surplus s - 5D - nu2 - L = {} is negative",
            s - P * big_d - nu2 - l
        )));
    }
    let s_prime = s - 1.0 - l;
    let q = s_prime + 2.0 - nu2 - P * big_d;
    Ok(-(P * big_d + nu2 + l) * ln_n - q * q / (2.0 * ln_n.exp()))
}

/// Exact `ln[n (n-1) ... (n - m) / n^s]` with `m = s - 5D - nu2 - L`, the
/// number of labellings of a walk with `m + 1` vertices.
pub fn exact_log_class_count(n: u64, s: u64, big_d: u64, nu2: u64, l: u64) -> Result<f64> {
    let m = s
        .checked_sub(CORE_HALF_MULTIPLICITY as u64 * big_d + nu2 + l)
        .ok_or_else(|| Error::Domain("vertex surplus is negative".into()))?;
    if m >= n {
        return Ok(f64::NEG_INFINITY);
    }
    let nf = n as f64;
    let tail: f64 = (1..=m).map(|i| (-(i as f64) / nf).ln_1p()).sum();
    Ok((m as f64 + 1.0 - s as f64) * nf.ln() + tail)
}

/// Lower estimate for the sum over `nu2` of the placement factor, and the
/// exact partial sum it bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nu2Sum {
    /// `ln(1/2) + (s' - 2 sigma - 5D)^2 / (2n)`.
    pub ln_bound: f64,
    /// `ln sum_{nu2 <= sigma} ((s' - 2 nu2 - 5D)^2 / 2n)^{nu2} / nu2!`, when
    /// `sigma` is small enough to sum term by term.
    pub ln_exact: Option<f64>,
    pub base: f64,
    pub y_too_small: bool,
    pub base_negative: bool,
}

const MAX_EXACT_SIGMA: f64 = 1e7;

pub fn log_nu2_sum(s_prime: f64, big_d: f64, sigma: f64, ln_n: f64, theta: f64, y: f64) -> Nu2Sum {
    let n = ln_n.exp();
    let base = s_prime - 2.0 * sigma - P * big_d;
    let ln_bound = -std::f64::consts::LN_2 + base * base / (2.0 * n);
    let ln_exact = (sigma <= MAX_EXACT_SIGMA).then(|| {
        let mut terms = Vec::with_capacity(sigma as usize + 1);
        let mut ln_fact = 0.0;
        for k in 0..=sigma as u64 {
            let kf = k as f64;
            if k > 0 {
                ln_fact += kf.ln();
            }
            let b = s_prime - 2.0 * kf - P * big_d;
            let x = b * b / (2.0 * n);
            terms.push(if k == 0 { 0.0 } else { kf * x.ln() - ln_fact });
        }
        log_sum_exp(&terms)
    });
    Nu2Sum {
        ln_bound,
        ln_exact,
        base,
        y_too_small: !(y > E * theta * theta / 4.0),
        base_negative: base < 0.0,
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// `(L - D) ln(D U_n^2 / (4n))`, the factor responsible for divergence.
pub fn log_principal_factor(b: &BoundInput) -> f64 {
    let d = b.derive();
    (d.l - d.big_d) * (d.big_d.ln() + 2.0 * d.u_n.ln() - 4f64.ln() - b.ln_n)
}

/// Every factor of the lower bound for `R_{2s}(D, L)`, in log domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBoundBreakdown {
    pub input: BoundInput,
    pub derived: Derived,
    /// `s ln(v^2 / 2)`.
    pub weight: f64,
    /// Bound for the number of inserted trees; `None` when not positive.
    pub tilde_t: Option<f64>,
    /// `-1 - ln sqrt(2 pi D) + D (1 + ln(s'/5 - 1 - d0^3 D) - ln D)`.
    pub selection: Option<f64>,
    /// Lower estimate for the self-intersection sum.
    pub nu2_sum: f64,
    /// `-(s' + 2 - 5D)^2 / (2n)`, the smallest class-count exponential.
    pub class_count: f64,
    /// `-(5D + L) ln n`.
    pub n_power: f64,
    /// `D ln(2^6 C_phi / (v^10 ln U_n))`.
    pub core_weight: Option<f64>,
    /// `2 (L - D) ln U~_n`.
    pub truncation: f64,
    /// `(L - D) ln D`.
    pub trips: f64,
    /// `-s ln(4 v^2)`.
    pub normalization: f64,
    pub flags: RegimeFlags,
}

impl LogBoundBreakdown {
    pub fn parts(&self) -> [(&'static str, Option<f64>); 10] {
        [
            ("weight", Some(self.weight)),
            ("tilde_t", self.tilde_t),
            ("selection", self.selection),
            ("nu2_sum", Some(self.nu2_sum)),
            ("class_count", Some(self.class_count)),
            ("n_power", Some(self.n_power)),
            ("core_weight", self.core_weight),
            ("truncation", Some(self.truncation)),
            ("trips", Some(self.trips)),
            ("normalization", Some(self.normalization)),
        ]
    }

    /// Log of the bound itself; `None` if some factor is not positive.
    pub fn log_bound(&self) -> Option<f64> {
        Some(
            self.weight
                + self.tilde_t?
                + self.selection?
                + self.nu2_sum
                + self.class_count
                + self.n_power
                + self.core_weight?
                + self.truncation
                + self.trips,
        )
    }

    /// Log of `(4 v^2)^{-s}` times the bound.
    pub fn normalized(&self) -> Option<f64> {
        self.log_bound().map(|x| x + self.normalization)
    }
}

/// Assemble the lower bound for the given parameters and entry law.
pub fn log_r_lower_bound(b: &BoundInput, law: &EntryLaw) -> Result<LogBoundBreakdown> {
    let (v2, c_phi) = match law {
        EntryLaw::HeavyTail { .. } => (law.even_moment(1).expect("finite variance"), C_PHI),
        EntryLaw::Rademacher => {
            return Err(Error::Domain("the bound needs the heavy-tailed law".into()));
        }
    };
    let d = b.derive();
    let ln_n = b.ln_n;
    let n = ln_n.exp();
    let mut flags = RegimeFlags {
        sigma_clamped: d.sigma_clamped,
        y_too_small: !d.y_ok,
        epsilon_order: !d.epsilon_order_ok,
        l_below_d: d.l < d.big_d,
        ..Default::default()
    };

    let tt = tilde_t_lower_bound(d.s_prime, d.d0);
    let tilde_t = tt.ln();
    flags.tilde_t_nonpositive = tilde_t.is_none();

    let sel_base = d.s_prime / P - 1.0 - d.d0.powi(3) * d.big_d;
    let selection = (sel_base > 0.0).then(|| {
        -1.0 - 0.5 * (2.0 * PI * d.big_d).ln() + d.big_d * (1.0 + sel_base.ln() - d.big_d.ln())
    });
    flags.selection_nonpositive = selection.is_none();

    let nu = log_nu2_sum(d.s_prime, d.big_d, d.sigma, ln_n, b.theta, d.y);
    flags.nu2_base_negative = nu.base_negative;

    flags.vertex_surplus_negative = d.s - P * d.big_d - d.l < 0.0;
    let q = d.s_prime + 2.0 - P * d.big_d;
    let class_count = -q * q / (2.0 * n);

    let ln_u = d.u_n.ln();
    let core_arg = 64.0 * c_phi / (v2.powi(5) * ln_u);
    let core_weight = (ln_u > 0.0).then(|| d.big_d * core_arg.ln());

    let truncation = 2.0 * (d.l - d.big_d) * d.u_tilde.ln();
    let trips = (d.l - d.big_d) * d.big_d.ln();
    flags.principal_nonpositive = log_principal_factor(b) <= 0.0;

    Ok(LogBoundBreakdown {
        input: *b,
        derived: d,
        weight: d.s * (v2 / 2.0).ln(),
        tilde_t,
        selection,
        nu2_sum: nu.ln_bound,
        class_count,
        n_power: -(P * d.big_d + d.l) * ln_n,
        core_weight,
        truncation,
        trips,
        normalization: -d.s * (4.0 * v2).ln(),
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_count_examples() {
        // nothing removed, s = 1: only the quadratic term, with s' = 0
        let v = log_class_count_factor(10f64.ln(), 1.0, 0.0, 0.0, 0.0).unwrap();
        assert!((v + 4.0 / 20.0).abs() < 1e-15);
        assert!(log_class_count_factor(1.0, 3.0, 1.0, 0.0, 0.0).is_err());
        // zero surplus: the exact product is empty
        let exact = exact_log_class_count(1000, 7, 1, 0, 2).unwrap();
        assert!((exact - (1.0 - 7.0) * 1000f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn exact_class_count_dominates_bound() {
        for &n in &[1_000u64, 10_000, 100_000, 1_000_000] {
            let top = (n as f64).powf(2.0 / 3.0) as u64;
            for s in [top / 4, top / 2, top] {
                for &(dd, nu, l) in &[(0u64, 0u64, 0u64), (1, 0, s / 3), (2, 3, s / 2)] {
                    if s < 5 * dd + nu + l {
                        continue;
                    }
                    let exact = exact_log_class_count(n, s, dd, nu, l).unwrap();
                    let bound = log_class_count_factor(
                        (n as f64).ln(),
                        s as f64,
                        dd as f64,
                        nu as f64,
                        l as f64,
                    )
                    .unwrap();
                    assert!(exact >= bound, "n={n}, s={s}: {exact} < {bound}");
                }
            }
        }
    }

    #[test]
    fn nu2_sum_cases() {
        let z = log_nu2_sum(40.0, 2.0, 0.0, 100f64.ln(), 1.0, 2.0);
        assert_eq!(z.ln_exact, Some(0.0));
        let neg = log_nu2_sum(10.0, 3.0, 2.0, 100f64.ln(), 1.0, 2.0);
        assert!(neg.base_negative);
        assert!(log_nu2_sum(10.0, 1.0, 1.0, 100f64.ln(), 1.0, 0.1).y_too_small);
    }

    #[test]
    fn breakdown_sums_and_flags() {
        let b = BoundInput::new(190.0, 1.0, 0.25, 0.2).unwrap();
        let r = log_r_lower_bound(&b, &EntryLaw::heavy_tail()).unwrap();
        let sum: f64 = r.parts().iter().filter_map(|(_, v)| *v).sum();
        let total = r.normalized().unwrap();
        assert!((sum - total).abs() <= 1e-12 * total.abs().max(1.0));
        assert!(!r.flags.any(), "{}", r.flags);
        assert!(log_r_lower_bound(&b, &EntryLaw::Rademacher).is_err());
        let early = log_r_lower_bound(
            &BoundInput::new(30.0, 1.0, 0.25, 0.2).unwrap(),
            &EntryLaw::heavy_tail(),
        )
        .unwrap();
        assert!(early.flags.tilde_t_nonpositive);
        assert_eq!(early.normalized(), None);
    }

    #[test]
    fn principal_factor_sign_follows_exponents() {
        for (eps, eps_p, positive) in [
            (0.25, 0.2, true),
            (0.25, 0.45, true),
            (0.25, 0.55, false),
            (0.1, 0.3, false),
        ] {
            let b = BoundInput::new(150.0, 1.0, eps, eps_p).unwrap();
            assert_eq!(
                log_principal_factor(&b) > 0.0,
                positive,
                "eps={eps}, eps'={eps_p}"
            );
        }
    }

    #[test]
    fn increasing_in_epsilon() {
        let law = EntryLaw::heavy_tail();
        let mut prev = f64::NEG_INFINITY;
        for eps in [0.21, 0.25, 0.3, 0.4, 0.6] {
            let b = BoundInput::new(195.0, 1.0, eps, 0.2).unwrap();
            let v = log_r_lower_bound(&b, &law).unwrap().normalized().unwrap();
            assert!(v > prev);
            prev = v;
        }
    }
}
