//! Monte Carlo expectations over the fading distribution.

use alloc::vec::Vec;

use super::BoundOptions;
use crate::channel::{FadingRealization, FadingSampler, RandomStream};
use crate::exec::{Executor, Sequential};
use crate::Error;

/// Mean of `f(H)` and its batch-mean standard error. Batch `b` draws from
/// stream `b` of `opts.seed`, so the result does not depend on how the
/// executor schedules batches.
pub(crate) fn batched_mean<E: Executor>(
    m: f64,
    n: usize,
    opts: &BoundOptions,
    exec: &E,
    f: &(dyn Fn(&FadingRealization) -> Result<f64, Error> + Sync),
) -> Result<(f64, f64), Error> {
    opts.validate()?;
    let sampler = FadingSampler::new(m, n)?;
    let nb = opts.batches as u64;
    let per = opts.samples.div_ceil(nb);
    let job = |b: usize| -> Result<f64, Error> {
        let mut rng = RandomStream::new(opts.seed, b as u64);
        let mut h = FadingRealization { h: Vec::new(), gamma: Vec::new() };
        let mut sum = 0.0;
        for _ in 0..per {
            sampler.fill(&mut rng, &mut h);
            sum += f(&h)?;
        }
        Ok(sum / per as f64)
    };
    let means: Vec<f64> = exec.run(nb as usize, &job).into_iter().collect::<Result<_, _>>()?;
    let k = means.len() as f64;
    let mean = means.iter().sum::<f64>() / k;
    let var = means.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (k - 1.0);
    Ok((mean, (var / k).sqrt()))
}

/// `E[inner(H)^L]` with its standard error, from `samples` draws.
pub fn numeric_expectation(
    inner: &(dyn Fn(&FadingRealization) -> f64 + Sync),
    l: u32,
    m: f64,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64), Error> {
    let opts = BoundOptions { samples, seed, ..BoundOptions::default() };
    numeric_expectation_with(inner, l, m, n, &opts, &Sequential)
}

pub fn numeric_expectation_with<E: Executor>(
    inner: &(dyn Fn(&FadingRealization) -> f64 + Sync),
    l: u32,
    m: f64,
    n: usize,
    opts: &BoundOptions,
    exec: &E,
) -> Result<(f64, f64), Error> {
    let l = l as i32;
    batched_mean(m, n, opts, exec, &|h: &FadingRealization| Ok(f64::powi(inner(h), l)))
}
