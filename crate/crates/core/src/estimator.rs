//! Importance-sampling estimates of walk counts and relative variances.
//!
//! Weights `1/p` are integers, so sums are kept exact; floats appear only in
//! the standard error and the log-domain maximum.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SawError};
use crate::rng;
use crate::samplers::{ModelParams, ProbTrace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentAccumulator {
    pub n: u64,
    #[serde(with = "crate::decimal")]
    pub sum_w: BigUint,
    #[serde(with = "crate::decimal")]
    pub sum_w2: BigUint,
    /// Largest `ln(1/p)` seen so far.
    pub log_max: f64,
}

impl Default for MomentAccumulator {
    fn default() -> Self {
        MomentAccumulator {
            n: 0,
            sum_w: BigUint::zero(),
            sum_w2: BigUint::zero(),
            log_max: f64::NEG_INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub n: u64,
    pub mean: BigRational,
    pub mean_f64: f64,
    /// `None` for fewer than two samples.
    pub std_error: Option<f64>,
    pub relative_variance_estimate: f64,
}

impl MomentAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_weight(&mut self, w: &BigUint) {
        self.n += 1;
        self.sum_w += w;
        self.sum_w2 += w * w;
    }

    pub fn add_sample(&mut self, trace: &ProbTrace) {
        self.add_weight(&trace.inverse_probability());
        self.log_max = self.log_max.max(trace.log_weight());
    }

    pub fn merge(&mut self, other: &MomentAccumulator) {
        self.n += other.n;
        self.sum_w += &other.sum_w;
        self.sum_w2 += &other.sum_w2;
        self.log_max = self.log_max.max(other.log_max);
    }

    pub fn estimate(&self) -> Result<Estimate> {
        if self.n == 0 {
            return Err(SawError::EmptyAccumulator);
        }
        let n = BigInt::from(self.n);
        let s1 = BigInt::from(self.sum_w.clone());
        let s2 = BigInt::from(self.sum_w2.clone());
        let mean = BigRational::new(s1.clone(), n.clone());
        let std_error = (self.n >= 2).then(|| {
            // unbiased sample variance (s2 - s1^2/n) / (n-1), then / n
            let var = BigRational::new(&s2 * &n - &s1 * &s1, &n * (&n - 1));
            (ratio_to_f64(&var) / self.n as f64).sqrt()
        });
        let relative_variance_estimate = if s1.is_zero() {
            f64::NAN
        } else {
            ratio_to_f64(
                &(BigRational::new(&n * s2, &s1 * &s1) - BigRational::from_integer(1.into())),
            )
        };
        Ok(Estimate {
            n: self.n,
            mean_f64: ratio_to_f64(&mean),
            mean,
            std_error,
            relative_variance_estimate,
        })
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `m2/m1^2 - 1`, exactly.
pub fn relative_variance_exact(m1: &BigUint, m2: &BigUint) -> Result<BigRational> {
    if m1.is_zero() {
        return Err(SawError::ZeroMoment);
    }
    let m1 = BigInt::from(m1.clone());
    Ok(BigRational::new(BigInt::from(m2.clone()), &m1 * &m1) - BigRational::from_integer(1.into()))
}

/// Draws `n` samples on one stream.
pub fn run_stream(
    params: &ModelParams,
    n: u64,
    seed: u64,
    index: u64,
) -> Result<MomentAccumulator> {
    let mut rng = rng::stream(seed, index);
    let mut acc = MomentAccumulator::new();
    for _ in 0..n {
        acc.add_sample(&params.sample(&mut rng)?.trace);
    }
    Ok(acc)
}

/// Draws `n` samples split over `threads` streams `(seed, 0..threads)` and
/// merges them in stream order.
///
/// The result depends on `threads`: the same seed with a different thread
/// count gives a different (equally valid) sample.
pub fn estimate_parallel(
    params: &ModelParams,
    n: u64,
    seed: u64,
    threads: usize,
) -> Result<MomentAccumulator> {
    let threads = threads.max(1) as u64;
    let share = |t: u64| n / threads + u64::from(t < n % threads);
    let parts: Vec<Result<MomentAccumulator>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| scope.spawn(move || run_stream(params, share(t), seed, t)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling thread panicked"))
            .collect()
    });
    let mut acc = MomentAccumulator::new();
    for part in parts {
        acc.merge(&part?);
    }
    Ok(acc)
}
