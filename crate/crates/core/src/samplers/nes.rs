//! Partially directed (North/East/South) walks crossing a rectangle of
//! height `k` and width `l`, from (0,0) to (l,k).
//!
//! Eligible steps are N, E, S minus those that leave the rectangle or
//! reverse the current vertical run; on the last column only N remains.
//! This yields the transition table
//!
//! | previous step                         | next-step probability |
//! |---------------------------------------|-----------------------|
//! | none (first step)                     | 1/2                   |
//! | horizontal, strictly inside the strip | 1/3                   |
//! | horizontal, on `y = 0` or `y = k`     | 1/2                   |
//! | vertical, ending strictly inside      | 1/2                   |
//! | vertical, ending on `y = 0` or `y = k`| 1                     |
//!
//! so that `1/p(w0) = 2 * 3^h * 2^hc * 2^v`, where the counts are taken on
//! the prefix of `w0` before its last East step (see [`nes_walk_stats`]).

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{choose, Model, ProbTrace, Sample};
use crate::error::{Result, SawError};
use crate::lattice::{Direction, Point, Walk};

/// Contact statistics of the prefix before the last East step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NesStats {
    /// Horizontal steps strictly inside the strip.
    pub h: u32,
    /// Horizontal steps on height 0 or k.
    pub h_c: u32,
    /// Vertical steps ending strictly inside the strip.
    pub v: u32,
    /// Vertical steps ending on height 0 or k.
    pub v_c: u32,
}

impl NesStats {
    /// `2 * 3^h * 2^hc * 2^v * 1^vc`.
    pub fn inverse_probability(&self) -> BigUint {
        BigUint::from(2u8)
            * BigUint::from(3u8).pow(self.h)
            * BigUint::from(2u8).pow(self.h_c + self.v)
    }
}

fn eligible(k: i64, l: i64, p: Point, last: Option<Direction>) -> Vec<Direction> {
    if p.x == l {
        return if p.y < k {
            vec![Direction::N]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::with_capacity(3);
    if p.y < k && last != Some(Direction::S) {
        out.push(Direction::N);
    }
    out.push(Direction::E);
    if p.y > 0 && last != Some(Direction::N) {
        out.push(Direction::S);
    }
    out
}

fn check_dims(k: usize, l: usize) -> Result<()> {
    if k == 0 || l == 0 {
        return Err(SawError::InvalidParameter(
            "rectangle height k and width l must be >= 1".into(),
        ));
    }
    Ok(())
}

pub fn sample_nes<R: Rng + ?Sized>(k: usize, l: usize, rng: &mut R) -> Result<Sample> {
    check_dims(k, l)?;
    let (k, l) = (k as i64, l as i64);
    let goal = Point::new(l, k);
    let mut p = Point::ORIGIN;
    let mut last = None;
    let mut walk = Walk::default();
    let mut trace = ProbTrace::new();
    while p != goal {
        let d = choose(rng, &eligible(k, l, p, last), &mut trace);
        p = p + d;
        last = Some(d);
        walk.push(d);
    }
    Ok(Sample {
        model: Model::Nes,
        walk,
        trace,
    })
}

pub(crate) fn trace_walk(k: usize, l: usize, walk: &Walk) -> Result<ProbTrace> {
    check_dims(k, l)?;
    if walk.start != Point::ORIGIN {
        return Err(SawError::InvalidWalk("NES walks start at (0,0)".into()));
    }
    let (k, l) = (k as i64, l as i64);
    let mut p = Point::ORIGIN;
    let mut last = None;
    let mut trace = ProbTrace::new();
    for &d in &walk.steps {
        let options = eligible(k, l, p, last);
        if !options.contains(&d) {
            return Err(SawError::InvalidWalk(format!(
                "step {d} from {p} is not eligible"
            )));
        }
        trace.record(options.len() as u8);
        p = p + d;
        last = Some(d);
    }
    if p != Point::new(l, k) {
        return Err(SawError::InvalidWalk("walk does not end at (l,k)".into()));
    }
    Ok(trace)
}

/// Contact statistics and the exact `1/p` of an NES walk crossing a
/// rectangle of height `k`, computed from the geometry of the walk alone.
pub fn nes_walk_stats(walk: &Walk, k: usize) -> Result<(NesStats, BigUint)> {
    if k == 0 {
        return Err(SawError::InvalidParameter(
            "strip height k must be >= 1".into(),
        ));
    }
    if walk.start != Point::ORIGIN {
        return Err(SawError::InvalidWalk("NES walks start at (0,0)".into()));
    }
    let height = k as i64;
    let mut y = 0i64;
    let mut prev: Option<Direction> = None;
    for &d in &walk.steps {
        match d {
            Direction::W => return Err(SawError::InvalidWalk("West step in an NES walk".into())),
            Direction::N if prev == Some(Direction::S) => {
                return Err(SawError::InvalidWalk("vertical reversal".into()))
            }
            Direction::S if prev == Some(Direction::N) => {
                return Err(SawError::InvalidWalk("vertical reversal".into()))
            }
            _ => {}
        }
        y += d.delta().1;
        if !(0..=height).contains(&y) {
            return Err(SawError::InvalidWalk("walk leaves the strip".into()));
        }
        prev = Some(d);
    }
    let last_e = walk
        .steps
        .iter()
        .rposition(|&d| d == Direction::E)
        .ok_or_else(|| SawError::InvalidWalk("walk has no East step".into()))?;
    if walk.steps[last_e + 1..].iter().any(|&d| d != Direction::N) || y != height {
        return Err(SawError::InvalidWalk(
            "walk must end with North steps up to height k".into(),
        ));
    }

    let mut stats = NesStats::default();
    let mut y = 0i64;
    let on_boundary = |y: i64| y == 0 || y == height;
    for &d in &walk.steps[..last_e] {
        if d == Direction::E {
            if on_boundary(y) {
                stats.h_c += 1;
            } else {
                stats.h += 1;
            }
        } else {
            y += d.delta().1;
            if on_boundary(y) {
                stats.v_c += 1;
            } else {
                stats.v += 1;
            }
        }
    }
    let inv = stats.inverse_probability();
    Ok((stats, inv))
}
