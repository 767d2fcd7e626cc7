use latbound::exec::Executor;
use rayon::prelude::*;

/// Runs batches on the rayon pool.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rayon;

impl Executor for Rayon {
    fn run<R: Send>(&self, count: usize, job: &(dyn Fn(usize) -> R + Sync)) -> Vec<R> {
        (0..count).into_par_iter().map(job).collect()
    }
}

pub const WORKERS_ENV: &str = "LATBOUND_WORKERS";

/// Worker count from the environment, if set to a positive integer.
pub fn workers_from_env() -> Result<Option<usize>, String> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{WORKERS_ENV}={s:?} is not a positive integer")),
        },
    }
}

pub fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool, rayon::ThreadPoolBuildError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        b = b.num_threads(n);
    }
    b.build()
}
