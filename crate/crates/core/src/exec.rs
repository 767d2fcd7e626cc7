//! Pluggable batch execution.
//!
//! Monte Carlo work is split into indexed batches whose randomness depends
//! only on the batch index. An executor may run them in any order or in
//! parallel; callers combine the results in index order.

use alloc::vec::Vec;

pub trait Executor: Sync {
    fn run<R: Send>(&self, count: usize, job: &(dyn Fn(usize) -> R + Sync)) -> Vec<R>;
}

/// Runs batches one after another on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn run<R: Send>(&self, count: usize, job: &(dyn Fn(usize) -> R + Sync)) -> Vec<R> {
        (0..count).map(job).collect()
    }
}
