//! Timing of the iterative recurrence against the `Q`-power path.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kbx::fast_term;
use crate::sequence::{iterate_term, Order};

/// One measured index. Timings are informational; `digits` is the number of
/// decimal digits of `|f[j, k]|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub j: i64,
    pub iter_seconds: f64,
    pub qpow_seconds: f64,
    pub digits: usize,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

/// Computes `f[j, k]` both ways for `j = step, 2 step, ..., j_max`. Any
/// disagreement aborts with [`Error::BenchMismatch`].
pub fn bench(k: Order, j_max: i64, step: i64) -> Result<Vec<BenchRow>> {
    if step < 1 || j_max < step {
        return Err(Error::InvalidStep { j_max, step });
    }
    let mut rows = Vec::new();
    let mut j = step;
    while j <= j_max {
        let (iterated, iter_time) = timed(|| iterate_term(k, j));
        let (powered, qpow_time) = timed(|| fast_term(k, j));
        if powered? != iterated {
            return Err(Error::BenchMismatch { j });
        }
        rows.push(BenchRow {
            j,
            iter_seconds: iter_time.as_secs_f64(),
            qpow_seconds: qpow_time.as_secs_f64(),
            digits: iterated.magnitude().to_string().len(),
        });
        j += step;
    }
    Ok(rows)
}
