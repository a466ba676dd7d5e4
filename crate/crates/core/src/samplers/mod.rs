//! Importance samplers with exact per-walk probability traces.
//!
//! Every sampler grows a walk one step at a time, choosing uniformly among
//! the eligible steps. The trace records the size of each eligible set, so
//! the sampling probability `p = 2^-a 3^-b` is known exactly and `1/p` is
//! an integer.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SawError};
use crate::lattice::{Direction, Walk};

pub mod crossing;
pub mod directed;
pub mod nes;
pub mod untrapped;

pub use crossing::{eligible_steps_crossing, sample_crossing_saw};
pub use directed::sample_directed;
pub use nes::{nes_walk_stats, sample_nes, NesStats};
pub use untrapped::{is_trapping_step, sample_untrapped};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Self-avoiding walks crossing a k x k square.
    Crossing,
    /// North/East walks crossing a k x k square.
    Directed,
    /// North/East/South walks crossing a rectangle of height k, width l.
    Nes,
    /// Unconfined self-avoiding walks that never trap themselves.
    Untrapped,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Crossing => "crossing",
            Model::Directed => "directed",
            Model::Nes => "nes",
            Model::Untrapped => "untrapped",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = SawError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "crossing" => Ok(Model::Crossing),
            "directed" => Ok(Model::Directed),
            "nes" => Ok(Model::Nes),
            "untrapped" => Ok(Model::Untrapped),
            _ => Err(SawError::Parse(s.to_string())),
        }
    }
}

/// Size of the walk problem handed to a sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelParams {
    Crossing { k: usize },
    Directed { k: usize },
    Nes { k: usize, l: usize },
    Untrapped { n: usize },
}

impl ModelParams {
    pub fn model(&self) -> Model {
        match self {
            ModelParams::Crossing { .. } => Model::Crossing,
            ModelParams::Directed { .. } => Model::Directed,
            ModelParams::Nes { .. } => Model::Nes,
            ModelParams::Untrapped { .. } => Model::Untrapped,
        }
    }

    /// Draws one sample for these parameters.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Sample> {
        match *self {
            ModelParams::Crossing { k } => sample_crossing_saw(k, rng),
            ModelParams::Directed { k } => sample_directed(k, rng),
            ModelParams::Nes { k, l } => sample_nes(k, l, rng),
            ModelParams::Untrapped { n } => sample_untrapped(n, rng),
        }
    }

    /// Recomputes the eligible-set sizes along an existing walk.
    pub fn retrace(&self, walk: &Walk) -> Result<ProbTrace> {
        match *self {
            ModelParams::Crossing { k } => crossing::trace_walk(k, walk),
            ModelParams::Directed { k } => directed::trace_walk(k, walk),
            ModelParams::Nes { k, l } => nes::trace_walk(k, l, walk),
            ModelParams::Untrapped { .. } => untrapped::trace_walk(walk),
        }
    }
}

/// Exact sampling probability of one walk.
///
/// `a` counts factors of two and `b` factors of three in `1/p`; an eligible
/// set of size 4 (only possible for the first unconfined step) contributes
/// two to `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ProbTrace {
    pub a: u32,
    pub b: u32,
    pub per_step: Vec<u8>,
}

impl ProbTrace {
    pub fn new() -> Self {
        ProbTrace::default()
    }

    pub fn from_sizes(sizes: impl IntoIterator<Item = u8>) -> Self {
        let mut t = ProbTrace::new();
        for s in sizes {
            t.record(s);
        }
        t
    }

    /// Records one step chosen among `size` eligible options.
    pub fn record(&mut self, size: u8) {
        match size {
            1 => {}
            2 => self.a += 1,
            3 => self.b += 1,
            4 => self.a += 2,
            _ => panic!("eligible-set size {size} is not in 1..=4"),
        }
        self.per_step.push(size);
    }

    /// `1/p = 2^a 3^b`, exactly.
    pub fn inverse_probability(&self) -> BigUint {
        BigUint::from(2u8).pow(self.a) * BigUint::from(3u8).pow(self.b)
    }

    pub fn probability(&self) -> f64 {
        2f64.powi(-(self.a as i32)) * 3f64.powi(-(self.b as i32))
    }

    /// Natural log of `1/p`.
    pub fn log_weight(&self) -> f64 {
        self.a as f64 * std::f64::consts::LN_2 + self.b as f64 * 3f64.ln()
    }

    /// Steps taken with probability one.
    pub fn forced_steps(&self) -> Vec<bool> {
        self.per_step.iter().map(|&s| s == 1).collect()
    }

    /// Checks that `a`, `b` agree with `per_step`.
    pub fn is_consistent(&self) -> bool {
        let product = self
            .per_step
            .iter()
            .fold(BigUint::one(), |acc, &s| acc * BigUint::from(s));
        self.per_step.iter().all(|&s| (1..=4).contains(&s)) && product == self.inverse_probability()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub model: Model,
    pub walk: Walk,
    pub trace: ProbTrace,
}

impl Sample {
    pub fn inverse_probability(&self) -> BigUint {
        self.trace.inverse_probability()
    }
}

/// Picks uniformly from `options[..len]` and records the choice in `trace`.
pub(crate) fn choose<R: Rng + ?Sized>(
    rng: &mut R,
    options: &[Direction],
    trace: &mut ProbTrace,
) -> Direction {
    debug_assert!(!options.is_empty());
    let i = if options.len() == 1 {
        0
    } else {
        rng.random_range(0..options.len())
    };
    trace.record(options.len() as u8);
    options[i]
}
