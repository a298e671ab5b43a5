//! Sweep rows computed on a rayon pool; results keep schedule order.

use rayon::prelude::*;
use spectra_core::counting::{Threshold, Weight};
use spectra_core::sweep::{sweep_row, SweepMeta};
use spectra_core::{ContourSpec, Result, Schedule, SweepResult, TruncationPolicy};

/// Parallel counterpart of [`spectra_core::sweep::run_sweep`].
///
/// `threads = None` uses rayon's default pool size. Each row is evaluated
/// independently and deterministically, so the output does not depend on
/// the thread count.
pub fn run_sweep_parallel(
    schedule: &Schedule,
    w: Weight,
    t: Threshold,
    policy: &TruncationPolicy,
    contour: &ContourSpec,
    use_bromwich: bool,
    threads: Option<usize>,
) -> Result<SweepResult> {
    let points = schedule.points()?;
    let work = || {
        points
            .par_iter()
            .map(|ps| sweep_row(ps, w, t, policy, contour, use_bromwich))
            .collect::<Vec<_>>()
    };
    let rows = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        },
        None => work(),
    };
    Ok(SweepResult {
        rows,
        meta: SweepMeta { w: w.value(), t: t.value(), policy: *policy, contour: *contour, use_bromwich },
    })
}
