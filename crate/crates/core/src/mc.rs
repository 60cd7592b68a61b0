//! Ginibre-based sampling of uniform pure states and unbiased estimation of
//! Schmidt-spectrum functionals — the stochastic oracle for every closed form
//! in this crate.
//!
//! Reproducibility contract: the generator is ChaCha8 (counter-based, from
//! `rand_chacha`), one independent substream per 4096-sample chunk via
//! `set_stream(chunk)`. Chunks are farmed out to however many workers the
//! surrounding rayon pool has, but partial sums are reduced in chunk-index
//! order with compensated summation, so the estimate is bit-identical for any
//! worker count.

use crate::entropy::shannon_entropy_unchecked;
use crate::error::{Error, Result};
use crate::page::PageParams;
use crate::svd::{schmidt_probabilities, StateMatrix};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

/// Name of the pinned generator, recorded in run manifests.
pub const GENERATOR_NAME: &str = "chacha8";
/// Version of the crate providing the generator, recorded in run manifests.
pub const GENERATOR_VERSION: &str = "rand_chacha-0.3";

/// Samples per reduction chunk; one RNG substream per chunk.
pub const CHUNK_SIZE: u64 = 4096;

/// Seed and substream index identifying one reproducible RNG stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RngStreamSpec {
    pub seed: u64,
    pub stream: u64,
}

impl RngStreamSpec {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Monte-Carlo estimate of a scalar: sample mean, standard error, provenance.
#[derive(Debug, Clone, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation divided by √samples.
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    /// Wall-clock seconds; informational, excluded from deterministic output.
    pub elapsed: f64,
}

fn draw_state(params: PageParams, rng: &mut ChaCha8Rng) -> StateMatrix {
    let n = params.n() as usize;
    let m = params.m() as usize;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    loop {
        // Column-major entry order; each entry is (g₁ + i·g₂)/√2 with
        // g ~ N(0,1), so E|z|² = 1.
        let mut data = Vec::with_capacity(n * m);
        let mut norm_sq = 0.0;
        for _ in 0..n * m {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = Complex64::new(re * inv_sqrt2, im * inv_sqrt2);
            norm_sq += z.norm_sqr();
            data.push(z);
        }
        let norm = norm_sq.sqrt();
        if norm < 1e-300 {
            continue;
        }
        for z in &mut data {
            *z /= norm;
        }
        return StateMatrix::new(n, m, data).expect("sampled matrix is structurally valid");
    }
}

/// One uniform pure state drawn from the given (seed, stream) pair.
///
/// Identical spec → byte-identical matrix, independent of anything else the
/// process is doing.
pub fn sample_state(params: PageParams, stream: RngStreamSpec) -> StateMatrix {
    draw_state(params, &mut stream.rng())
}

struct ChunkSums {
    sum: f64,
    sum_sq: f64,
}

fn kahan_step(sum: &mut f64, c: &mut f64, v: f64) {
    let y = v - *c;
    let t = *sum + y;
    *c = (t - *sum) - y;
    *sum = t;
}

fn estimate_functional<F>(params: PageParams, samples: u64, seed: u64, f: F) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let start = Instant::now();
    let chunk_count = samples.div_ceil(CHUNK_SIZE);
    let partials: Vec<ChunkSums> = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| -> Result<ChunkSums> {
            let mut rng = RngStreamSpec::new(seed, chunk).rng();
            let lo = chunk * CHUNK_SIZE;
            let hi = (lo + CHUNK_SIZE).min(samples);
            let mut sum = 0.0;
            let mut c1 = 0.0;
            let mut sum_sq = 0.0;
            let mut c2 = 0.0;
            for _ in lo..hi {
                let state = draw_state(params, &mut rng);
                let p = schmidt_probabilities(&state)?;
                let x = f(&p);
                kahan_step(&mut sum, &mut c1, x);
                kahan_step(&mut sum_sq, &mut c2, x * x);
            }
            Ok(ChunkSums { sum, sum_sq })
        })
        .collect::<Result<Vec<_>>>()?;

    // Fixed chunk-order reduction keeps the result independent of scheduling.
    let mut total = 0.0;
    let mut ct = 0.0;
    let mut total_sq = 0.0;
    let mut ctq = 0.0;
    for p in &partials {
        kahan_step(&mut total, &mut ct, p.sum);
        kahan_step(&mut total_sq, &mut ctq, p.sum_sq);
    }
    let nf = samples as f64;
    let mean = total / nf;
    let variance = ((total_sq - total * total / nf) / (nf - 1.0)).max(0.0);
    let std_error = (variance / nf).sqrt();
    Ok(McEstimate {
        mean,
        std_error,
        samples,
        seed,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// Mean entanglement entropy over `samples` uniform pure states.
///
/// Deterministic given (params, samples, seed), whatever the rayon worker
/// count. Requires samples ≥ 100.
pub fn mc_average_entropy(params: PageParams, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples < 100 {
        return Err(Error::Invalid(format!(
            "Monte-Carlo entropy estimation needs ≥ 100 samples, got {samples}"
        )));
    }
    estimate_functional(params, samples, seed, shannon_entropy_unchecked)
}

/// Unbiased estimate of E[f(p)] for a bounded functional of the Schmidt
/// probability vector (ascending order).
pub fn mc_expectation<F>(params: PageParams, f: F, samples: u64, seed: u64) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if samples < 2 {
        return Err(Error::Invalid(format!(
            "Monte-Carlo expectation needs ≥ 2 samples, got {samples}"
        )));
    }
    estimate_functional(params, samples, seed, f)
}
