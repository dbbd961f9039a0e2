//! Brute-force verifiers for the walk sum.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::profile::{int, MomentProfile};
use crate::caps::Caps;
use crate::error::{ensure_cap, invalid, Result};

/// Sum of `E prod a_{i_t i_{t+1}}` over all `n^{2s}` closed index sequences,
/// divided by `n^s`.
pub fn trajectory_oracle(n: u64, s: usize, m: &MomentProfile) -> Result<BigRational> {
    trajectory_oracle_with_budget(n, s, m, Caps::current().trajectory_budget)
}

pub fn trajectory_oracle_with_budget(
    n: u64,
    s: usize,
    m: &MomentProfile,
    budget: u64,
) -> Result<BigRational> {
    if n == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let steps = 2 * s;
    let total = (n as u128).checked_pow(steps as u32).unwrap_or(u128::MAX);
    ensure_cap(
        "index trajectories",
        total.min(u64::MAX as u128) as u64,
        budget,
    )?;
    let nu = n as usize;
    let mut idx = vec![0usize; steps];
    let mut pairs = vec![0u32; nu * nu];
    let mut by_shape: HashMap<Vec<u32>, u64> = HashMap::new();
    loop {
        pairs.iter_mut().for_each(|c| *c = 0);
        for t in 0..steps {
            let (a, b) = (idx[t], idx[(t + 1) % steps]);
            pairs[a.min(b) * nu + a.max(b)] += 1;
        }
        if pairs.iter().all(|c| c % 2 == 0) {
            let mut half: Vec<u32> = pairs.iter().filter(|&&c| c > 0).map(|c| c / 2).collect();
            half.sort_unstable();
            *by_shape.entry(half).or_insert(0) += 1;
        }
        // odometer
        let mut t = 0;
        loop {
            if t == steps {
                return finish(by_shape, n, s, m);
            }
            idx[t] += 1;
            if idx[t] < nu {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

fn finish(
    by_shape: HashMap<Vec<u32>, u64>,
    n: u64,
    s: usize,
    m: &MomentProfile,
) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for (half, count) in by_shape {
        let mut w = int(count);
        for k in half {
            w *= m.even_moment_exact(k)?;
        }
        total += w;
    }
    Ok(total / int(num_traits::pow(BigInt::from(n), s)))
}

/// `E Tr A^{2s}` for `A = S/sqrt(n)` with `S` a uniformly random symmetric
/// sign matrix, averaged over all `2^{n(n+1)/2}` matrices.
pub fn sign_matrix_moment(n: usize, s: usize) -> Result<BigRational> {
    let free = n * (n + 1) / 2;
    ensure_cap("sign matrix entries", free as u64, 20)?;
    if n == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let mut sum = BigInt::zero();
    for code in 0u64..(1u64 << free) {
        let mut a = vec![0i128; n * n];
        let mut bit = 0;
        for i in 0..n {
            for j in i..n {
                let v = if code >> bit & 1 == 1 { -1 } else { 1 };
                a[i * n + j] = v;
                a[j * n + i] = v;
                bit += 1;
            }
        }
        let mut p = identity(n);
        for _ in 0..2 * s {
            p = mul(&p, &a, n);
        }
        sum += BigInt::from((0..n).map(|i| p[i * n + i]).sum::<i128>());
    }
    let denom = BigInt::from(1u64 << free) * num_traits::pow(BigInt::from(n), s);
    Ok(BigRational::new(sum, denom))
}

fn identity(n: usize) -> Vec<i128> {
    let mut m = vec![0; n * n];
    (0..n).for_each(|i| m[i * n + i] = 1);
    m
}

fn mul(x: &[i128], y: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let xik = x[i * n + k];
            for j in 0..n {
                out[i * n + j] += xik * y[k * n + j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::exact_moment;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn hand_values() {
        let p = MomentProfile::table(vec![rat(3, 4)]).unwrap();
        assert_eq!(trajectory_oracle(2, 1, &p).unwrap(), rat(3, 2));
        assert_eq!(
            trajectory_oracle(2, 2, &MomentProfile::ones()).unwrap(),
            int(3)
        );
        assert_eq!(sign_matrix_moment(2, 2).unwrap(), int(3));
        assert_eq!(sign_matrix_moment(3, 2).unwrap(), int(5));
    }

    #[test]
    fn oracle_matches_walk_sum() {
        let profiles = [
            MomentProfile::ones(),
            MomentProfile::table(vec![rat(2, 3), rat(5, 1), rat(7, 9)]).unwrap(),
            MomentProfile::heavy_tail_exact(rat(3, 1)).unwrap(),
        ];
        for m in &profiles {
            for n in 1..=3u64 {
                for s in 1..=3usize {
                    assert_eq!(
                        trajectory_oracle(n, s, m).unwrap(),
                        exact_moment(n, s, m).unwrap(),
                        "n={n}, s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(trajectory_oracle_with_budget(3, 3, &MomentProfile::ones(), 100).is_err());
        assert!(sign_matrix_moment(6, 1).is_err());
    }
}
