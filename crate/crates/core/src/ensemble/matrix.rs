use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::law::{sample_entry, EntryLaw, TruncationRule};
use crate::error::{Error, Result};

/// Symmetric `n x n` matrix with entries `a_ij / sqrt(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledMatrix {
    pub n: usize,
    pub u_n: Option<f64>,
    pub seed: u64,
    pub entries: DMatrix<f64>,
}

impl SampledMatrix {
    /// Row-major text with a `n U_n seed` header; `U_n` is `inf` without truncation.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let u = self.u_n.map_or("inf".to_string(), |u| format!("{u:.16e}"));
        let _ = writeln!(out, "{} {} {}", self.n, u, self.seed);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| format!("{:.16e}", self.entries[(i, j)]))
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// `Tr A^{2s}`, computed as the squared Frobenius norm of `A^s`.
    pub fn trace_power(&self, s: u32) -> f64 {
        trace_even_power(&self.entries, s)
    }
}

pub fn trace_even_power(a: &DMatrix<f64>, s: u32) -> f64 {
    if s == 0 {
        return a.nrows() as f64;
    }
    let mut p = a.clone();
    for _ in 1..s {
        p = &p * a;
    }
    p.norm_squared()
}

/// Per-trial stream: the master seed selects the ChaCha8 key and the trial
/// index selects the stream, so trials never share state.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

pub fn sample_matrix(
    n: usize,
    law: &EntryLaw,
    rule: Option<&TruncationRule>,
    seed: u64,
) -> SampledMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = sample_with(n, law, rule, &mut rng);
    m.seed = seed;
    m
}

fn sample_with(
    n: usize,
    law: &EntryLaw,
    rule: Option<&TruncationRule>,
    rng: &mut ChaCha8Rng,
) -> SampledMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    let mut entries = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = sample_entry(law, rng);
            let x = rule.map_or(x, |r| r.apply(x)) * scale;
            entries[(i, j)] = x;
            entries[(j, i)] = x;
        }
    }
    SampledMatrix {
        n,
        u_n: rule.map(|r| r.u_n),
        seed: 0,
        entries,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct McConfig<'a> {
    pub n: usize,
    pub s: u32,
    pub trials: usize,
    pub law: &'a EntryLaw,
    pub rule: Option<&'a TruncationRule>,
    pub master_seed: u64,
}

/// Monte Carlo estimate of `E Tr A^{2s}` using the global rayon pool.
pub fn mc_trace_moment(cfg: &McConfig<'_>) -> Result<McEstimate> {
    let traces = traces(cfg, None)?;
    summarize(&traces)
}

/// Same estimate with the trials split into `workers` contiguous partitions,
/// each evaluated on a dedicated pool of that size.
pub fn mc_trace_moment_partitioned(cfg: &McConfig<'_>, workers: usize) -> Result<McEstimate> {
    let traces = traces(cfg, Some(workers.max(1)))?;
    summarize(&traces)
}

fn traces(cfg: &McConfig<'_>, workers: Option<usize>) -> Result<Vec<f64>> {
    if cfg.trials < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 trials, got {}",
            cfg.trials
        )));
    }
    if cfg.n == 0 {
        return Err(Error::Domain("matrix dimension must be positive".into()));
    }
    let one = |t: usize| -> Result<f64> {
        let mut rng = trial_rng(cfg.master_seed, t as u64);
        let m = sample_with(cfg.n, cfg.law, cfg.rule, &mut rng);
        let tr = m.trace_power(cfg.s);
        if tr.is_finite() {
            Ok(tr)
        } else {
            Err(Error::Overflow { trial: t })
        }
    };
    match workers {
        None => (0..cfg.trials).into_par_iter().map(one).collect(),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Invalid(e.to_string()))?;
            let chunk = cfg.trials.div_ceil(w);
            let parts: Vec<Result<Vec<f64>>> = pool.install(|| {
                (0..w)
                    .into_par_iter()
                    .map(|p| {
                        let lo = (p * chunk).min(cfg.trials);
                        let hi = ((p + 1) * chunk).min(cfg.trials);
                        (lo..hi).map(one).collect()
                    })
                    .collect()
            });
            let mut out = Vec::with_capacity(cfg.trials);
            for part in parts {
                out.extend(part?);
            }
            Ok(out)
        }
    }
}

/// Mean and standard error, summed in trial order.
fn summarize(traces: &[f64]) -> Result<McEstimate> {
    let k = traces.len() as f64;
    let mean = traces.iter().sum::<f64>() / k;
    let var = traces.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (k - 1.0);
    Ok(McEstimate {
        estimate: mean,
        standard_error: (var / k).sqrt(),
        trials: traces.len(),
    })
}
