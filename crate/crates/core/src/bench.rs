//! Wall-clock comparison of the brute-force and closed-form DFT paths.

use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use crate::dft::{dft_closed_with, dft_naive, dft_zero_brute, dft_zero_closed_with};
use crate::error::{Result, ZcError};
use crate::io::SCHEMA_VERSION;
use crate::number_theory::{LegendreTable, PrimeModulus};
use crate::sequence::{generate, ZcParams};

pub const MIN_ITERATIONS: usize = 100;
pub const WARMUP_ITERATIONS: usize = 10;

/// Median over `iterations` of the mean time per call, in nanoseconds.
/// Each iteration times `batch` consecutive calls `f(0), f(1), …`.
pub fn median_ns(iterations: usize, batch: usize, mut f: impl FnMut(usize)) -> f64 {
    let batch = batch.max(1);
    let mut call = 0usize;
    for _ in 0..WARMUP_ITERATIONS {
        for _ in 0..batch {
            f(call);
            call += 1;
        }
    }
    let mut samples: Vec<f64> = (0..iterations.max(1))
        .map(|_| {
            let start = Instant::now();
            for _ in 0..batch {
                f(call);
                call += 1;
            }
            start.elapsed().as_nanos() as f64 / batch as f64
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    let mid = samples.len() / 2;
    if samples.len().is_multiple_of(2) {
        (samples[mid - 1] + samples[mid]) / 2.0
    } else {
        samples[mid]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub n_zc: u64,
    pub iterations: usize,
    pub warmup: usize,
    pub zero_brute_ns: f64,
    pub zero_closed_ns: f64,
    pub full_naive_ns: f64,
    pub full_closed_ns: f64,
    pub zero_speedup: f64,
    pub full_speedup: f64,
}

/// Batch sizes are chosen so one iteration lasts long enough to time.
fn batch_for(ops_per_call: f64) -> usize {
    (2e5 / ops_per_call).clamp(1.0, 4096.0) as usize
}

/// Times single-coefficient and full-spectrum computation, cycling the root
/// through `1..N` so no single root is favoured.
pub fn run(m: PrimeModulus, iterations: usize) -> Result<BenchReport> {
    if iterations < MIN_ITERATIONS {
        return Err(ZcError::TooFewIterations {
            got: iterations,
            min: MIN_ITERATIONS,
        });
    }
    let n_zc = m.value();
    let nf = n_zc as f64;
    let root = |i: usize| 1 + (i as u64 % (n_zc - 1));
    let table = LegendreTable::build(m);
    let sequences: Vec<_> = (1..n_zc)
        .map(|u| generate(&ZcParams::new(n_zc, u).expect("prime length")))
        .collect();

    let zero_brute_ns = median_ns(iterations, batch_for(nf), |i| {
        black_box(dft_zero_brute(m, black_box(root(i))).expect("valid root"));
    });
    let zero_closed_ns = median_ns(iterations, batch_for(1.0), |i| {
        black_box(dft_zero_closed_with(&table, black_box(root(i))).expect("valid root"));
    });
    let full_naive_ns = median_ns(iterations, batch_for(nf * nf), |i| {
        black_box(dft_naive(black_box(&sequences[i % sequences.len()])));
    });
    let full_closed_ns = median_ns(iterations, batch_for(nf), |i| {
        black_box(dft_closed_with(&table, black_box(root(i))).expect("valid root"));
    });

    Ok(BenchReport {
        schema_version: SCHEMA_VERSION,
        n_zc,
        iterations,
        warmup: WARMUP_ITERATIONS,
        zero_brute_ns,
        zero_closed_ns,
        full_naive_ns,
        full_closed_ns,
        zero_speedup: zero_brute_ns / zero_closed_ns,
        full_speedup: full_naive_ns / full_closed_ns,
    })
}
