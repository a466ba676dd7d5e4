//! North/East walks crossing a k x k square.
//!
//! Both steps are eligible until the walk reaches the north or east side;
//! from then on the remaining steps are forced.

use rand::Rng;

use super::{choose, Model, ProbTrace, Sample};
use crate::error::{Result, SawError};
use crate::lattice::{Direction, Point, Walk};

fn eligible(k: i64, p: Point) -> Vec<Direction> {
    let mut out = Vec::with_capacity(2);
    if p.y < k {
        out.push(Direction::N);
    }
    if p.x < k {
        out.push(Direction::E);
    }
    out
}

pub fn sample_directed<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<Sample> {
    if k == 0 {
        return Err(SawError::InvalidParameter(
            "square side k must be >= 1".into(),
        ));
    }
    let side = k as i64;
    let mut p = Point::ORIGIN;
    let mut walk = Walk::from_origin(Vec::with_capacity(2 * k));
    let mut trace = ProbTrace::new();
    for _ in 0..2 * k {
        let d = choose(rng, &eligible(side, p), &mut trace);
        p = p + d;
        walk.push(d);
    }
    Ok(Sample {
        model: Model::Directed,
        walk,
        trace,
    })
}

pub(crate) fn trace_walk(k: usize, walk: &Walk) -> Result<ProbTrace> {
    let side = k as i64;
    let mut p = walk.start;
    if p != Point::ORIGIN {
        return Err(SawError::InvalidWalk(
            "directed walks start at (0,0)".into(),
        ));
    }
    let mut trace = ProbTrace::new();
    for &d in &walk.steps {
        let options = eligible(side, p);
        if !options.contains(&d) {
            return Err(SawError::InvalidWalk(format!(
                "step {d} from {p} is not eligible"
            )));
        }
        trace.record(options.len() as u8);
        p = p + d;
    }
    if p != Point::new(side, side) {
        return Err(SawError::InvalidWalk("walk does not end at (k,k)".into()));
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn inv_p(k: usize, s: &str) -> BigUint {
        trace_walk(k, &s.parse().unwrap())
            .unwrap()
            .inverse_probability()
    }

    #[test]
    fn rule_examples() {
        assert_eq!(inv_p(1, "EN"), BigUint::from(2u8));
        assert_eq!(inv_p(1, "NE"), BigUint::from(2u8));
        assert_eq!(inv_p(2, "EENN"), BigUint::from(4u8));
        assert_eq!(inv_p(2, "ENEN"), BigUint::from(8u8));
        assert!(trace_walk(2, &"ENES".parse().unwrap()).is_err());
    }

    #[test]
    fn samples_reach_the_corner() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let s = sample_directed(6, &mut rng).unwrap();
            assert_eq!(s.walk.end(), Point::new(6, 6));
            assert_eq!(trace_walk(6, &s.walk).unwrap(), s.trace);
        }
    }
}
