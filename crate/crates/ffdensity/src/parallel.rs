//! Splits each chain point's work range across scoped threads.
//!
//! Work items are keyed by index (tuple index or sample index), so hit
//! counts do not depend on how the range is cut.

use std::thread;

use ffdensity_core::density::{DensityExperiment, DensityReport, Evaluator};
use ffdensity_core::Result;

pub fn run_parallel(exp: &DensityExperiment, workers: usize) -> Result<DensityReport> {
    let ev = exp.evaluator()?;
    let mut hits = Vec::with_capacity(exp.chain().len());
    for j in 0..exp.chain().len() {
        let n = exp.work_size(j)?;
        hits.push(count_point(exp, &ev, j, n, workers.max(1))?);
    }
    exp.assemble(&hits)
}

fn count_point(exp: &DensityExperiment, ev: &Evaluator, j: usize, n: u64, workers: usize) -> Result<u64> {
    if workers == 1 || n < 2 {
        return exp.count_hits(ev, j, 0..n);
    }
    let chunk = n.div_ceil(workers as u64);
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let range = (w * chunk).min(n)..((w + 1) * chunk).min(n);
                s.spawn(move || exp.count_hits(ev, j, range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .sum()
    })
}
