//! Threaded version of the eigenvalue scan.
//!
//! Windows of sample indices are independent, so batches of windows run
//! on scoped threads and are merged in window order. The result is the
//! same list the sequential scan produces.

use std::f64::consts::PI;
use std::thread;

use nlbc_core::constraints::ProblemSpec;
use nlbc_core::spectral::{self, det_mode, finalize, resolve_candidates, scan_window, EigenMode, SCAN_STEP, WINDOW_SAMPLES};
use nlbc_core::Error;

pub fn find_eigenvalues(spec: &ProblemSpec, k_max: usize, threads: usize) -> nlbc_core::Result<Vec<EigenMode>> {
    if threads <= 1 {
        return spectral::find_eigenvalues(spec, k_max);
    }
    spec.validate()?;
    spec.require_hermitian()?;
    let mode = det_mode(spec)?;
    let limit = ((2 * k_max + 16) as f64 * PI / SCAN_STEP) as usize;
    let mut modes = Vec::new();
    let mut start = 1;
    while modes.len() < k_max {
        if start >= limit {
            return Err(Error::BracketExhausted {
                found: modes.len(),
                wanted: k_max,
                scanned_to: start as f64 * SCAN_STEP,
            });
        }
        let windows: Vec<(usize, usize)> = (0..threads)
            .map(|i| start + i * WINDOW_SAMPLES)
            .take_while(|&s| s < limit)
            .map(|s| (s, (s + WINDOW_SAMPLES).min(limit)))
            .collect();
        let results: Vec<nlbc_core::Result<Vec<EigenMode>>> = thread::scope(|scope| {
            let handles: Vec<_> = windows
                .iter()
                .map(|&(a, b)| scope.spawn(move || resolve_candidates(spec, scan_window(spec, mode, a, b)?)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("scan thread panicked")).collect()
        });
        for r in results {
            modes.extend(r?);
        }
        start = windows.last().map_or(limit, |w| w.1);
    }
    Ok(finalize(modes, k_max))
}
