use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::enumerate::WalkCensus;
use super::frame::frame_of;
use super::profile::{int, MomentProfile};
use super::walk::Walk;
use crate::error::{invalid, Result};
use crate::numeric::{falling_factorial, falling_factorial_coefficients};

/// Product of `E|a|^{m}` over the edges of the frame; zero if any
/// multiplicity is odd.
pub fn walk_weight(w: &Walk, m: &MomentProfile) -> Result<BigRational> {
    match frame_of(w).half_multiplicities() {
        None => Ok(BigRational::zero()),
        Some(h) => shape_weight(&h, m, &mut HashMap::new()),
    }
}

pub fn walk_weight_f64(w: &Walk, m: &MomentProfile) -> Result<f64> {
    match frame_of(w).half_multiplicities() {
        None => Ok(0.0),
        Some(h) => h
            .iter()
            .try_fold(1.0, |acc, &k| Ok(acc * m.even_moment(k)?)),
    }
}

fn shape_weight(
    half: &[u32],
    m: &MomentProfile,
    cache: &mut HashMap<u32, BigRational>,
) -> Result<BigRational> {
    let mut acc = BigRational::one();
    for &k in half {
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(k) {
            e.insert(m.even_moment_exact(k)?);
        }
        acc *= &cache[&k];
    }
    Ok(acc)
}

/// `M_{2s} = E Tr A^{2s}` as the exact walk sum
/// `sum_w n(n-1)...(n-r+1) / n^s * weight(w)`.
pub fn exact_moment(n: u64, s: usize, m: &MomentProfile) -> Result<BigRational> {
    if n == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let census = WalkCensus::build(s)?;
    exact_moment_from_census(n, &census, m)
}

pub fn exact_moment_from_census(
    n: u64,
    census: &WalkCensus,
    m: &MomentProfile,
) -> Result<BigRational> {
    let mut cache = HashMap::new();
    let mut total = BigRational::zero();
    for ((r, half), count) in &census.classes {
        let labels = falling_factorial(n, *r as u64);
        if labels.is_zero() {
            continue;
        }
        let w = shape_weight(half, m, &mut cache)?;
        total += w * int(BigInt::from(labels) * BigInt::from(*count));
    }
    Ok(total / int(num_traits::pow(BigInt::from(n), census.s)))
}

/// Floating version for profiles whose moments are only known as reals.
pub fn exact_moment_f64(n: u64, s: usize, m: &MomentProfile) -> Result<f64> {
    if n == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let census = WalkCensus::build(s)?;
    let nf = n as f64;
    let mut memo: HashMap<u32, f64> = HashMap::new();
    let mut total = 0.0;
    for ((r, half), count) in &census.classes {
        if (*r as u64) > n {
            continue;
        }
        // n(n-1)...(n-r+1)/n^s = n^{r-s} prod_{i<r} (1 - i/n)
        let ratio =
            (0..*r).map(|i| 1.0 - i as f64 / nf).product::<f64>() * nf.powi(*r as i32 - s as i32);
        let mut w = 1.0;
        for &k in half {
            w *= match memo.get(&k) {
                Some(v) => *v,
                None => {
                    let v = m.even_moment(k)?;
                    memo.insert(k, v);
                    v
                }
            };
        }
        total += *count as f64 * ratio * w;
    }
    Ok(total)
}

/// Coefficient of `n^1` in `M_{2s}` seen as a polynomial in `n`, divided by
/// `(E|a|^2)^s`.
pub fn semicircle_leading_term(s: usize, m: &MomentProfile) -> Result<BigRational> {
    let census = WalkCensus::build(s)?;
    let mut cache = HashMap::new();
    let mut total = BigRational::zero();
    for ((r, half), count) in &census.classes {
        let coeffs = falling_factorial_coefficients(*r);
        let Some(c) = coeffs.get(s + 1) else { continue };
        if c.is_zero() {
            continue;
        }
        total += shape_weight(half, m, &mut cache)? * int(c * BigInt::from(*count));
    }
    let v2 = m.even_moment_exact(1)?;
    if v2.is_zero() {
        return Err(invalid("variance of the profile is zero"));
    }
    Ok(total / num_traits::pow(v2, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::catalan;
    use crate::walks::enumerate_even_walks;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn walk_weights() {
        let ones = MomentProfile::ones();
        let w = Walk::new(vec![0, 1, 0, 1, 0], None).unwrap();
        assert_eq!(walk_weight(&w, &ones).unwrap(), int(1));
        let odd = Walk::new(vec![0, 1, 2, 0, 0], None).unwrap();
        assert!(walk_weight(&odd, &ones).unwrap().is_zero());
        let p = MomentProfile::table(vec![rat(2, 3), rat(7, 2)]).unwrap();
        let tree = Walk::new(vec![0, 1, 2, 1, 0, 3, 0], None).unwrap();
        assert_eq!(walk_weight(&tree, &p).unwrap(), rat(8, 27));
        assert_eq!(walk_weight(&w, &p).unwrap(), rat(7, 2));
        assert_eq!(walk_weight_f64(&w, &p).unwrap(), 3.5);
    }

    #[test]
    fn second_moment_is_n_times_variance() {
        let p = MomentProfile::table(vec![rat(5, 7)]).unwrap();
        for n in 1..6u64 {
            assert_eq!(exact_moment(n, 1, &p).unwrap(), rat(5 * n as i64, 7));
        }
    }

    #[test]
    fn sign_matrix_value() {
        assert_eq!(exact_moment(2, 2, &MomentProfile::ones()).unwrap(), int(3));
        assert_eq!(exact_moment(3, 2, &MomentProfile::ones()).unwrap(), int(5));
    }

    #[test]
    fn float_version_agrees() {
        let p = MomentProfile::heavy_tail_exact(rat(5, 2)).unwrap();
        let q = MomentProfile::heavy_tail(2.5).unwrap();
        for (n, s) in [(1, 1), (3, 2), (7, 3), (20, 4)] {
            let a = crate::numeric::rational_to_f64(&exact_moment(n, s, &p).unwrap());
            let b = exact_moment_f64(n, s, &q).unwrap();
            assert!((a - b).abs() < 1e-12 * a, "n={n}, s={s}");
        }
    }

    #[test]
    fn catalan_leading_terms() {
        for s in 1..=5usize {
            let c = semicircle_leading_term(s, &MomentProfile::ones()).unwrap();
            assert_eq!(c, BigRational::from_integer(catalan(s as u64).into()));
        }
        let p = MomentProfile::table(vec![rat(3, 2), rat(11, 1), rat(1, 9)]).unwrap();
        assert_eq!(semicircle_leading_term(3, &p).unwrap(), int(5));
    }

    #[test]
    fn relabeling_keeps_weight() {
        let p = MomentProfile::table(vec![rat(2, 1), rat(3, 1), rat(4, 1)]).unwrap();
        for w in enumerate_even_walks(3).unwrap() {
            let shifted: Vec<u32> = w.vertices().iter().map(|v| 10 * v + 3).collect();
            let relabeled = Walk::new(shifted, None).unwrap();
            assert_eq!(
                walk_weight(&relabeled, &p).unwrap(),
                walk_weight(&w, &p).unwrap()
            );
            assert_eq!(relabeled.canonical(), w);
        }
    }
}
