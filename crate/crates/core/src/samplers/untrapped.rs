//! Unconfined self-avoiding walks that never trap themselves.
//!
//! A step is eligible when the extended walk is self-avoiding and can still
//! be continued forever. Trapping is detected locally. Rotate the picture so
//! that the last step points West, with head `(i,j)`. A new step traps the
//! walk exactly when one of the following holds (together with the mirror
//! images under `y -> -y`, which swap N/S and negate the winding):
//!
//! 1. `(i-1, j)` is on the walk, the step is N, and the winding from that
//!    vertex to the head is `-2 pi`;
//! 2. `(i-1, j+1)` is on the walk, the step is N, and the winding is `-2 pi`;
//! 3. `(i-1, j+1)` is on the walk, the step is W or S, and the winding is
//!    `+2 pi`.
//!
//! Windings use the convention of [`Walk::winding_number`] in the rotated
//! frame; in the original frame that means the incoming heading at the
//! earlier vertex is the direction of the walk's last step.

use std::collections::HashMap;

use rand::Rng;

use super::{choose, Model, ProbTrace, Sample};
use crate::error::{Result, SawError};
use crate::lattice::{Direction, Point, Walk};

/// One full turn, in quarter turns.
const FULL_TURN: i32 = 4;

#[derive(Debug, Clone, Default)]
pub(crate) struct UntrappedState {
    steps: Vec<Direction>,
    index: HashMap<Point, usize>,
    head: Point,
    /// `turns[i]` = signed turns accumulated between steps 0 and i.
    turns: Vec<i32>,
}

impl UntrappedState {
    pub(crate) fn new(start: Point) -> Self {
        let mut index = HashMap::new();
        index.insert(start, 0);
        UntrappedState {
            steps: Vec::new(),
            index,
            head: start,
            turns: Vec::new(),
        }
    }

    pub(crate) fn from_walk(walk: &Walk) -> Result<Self> {
        let mut state = UntrappedState::new(walk.start);
        for &d in &walk.steps {
            if state.is_occupied(state.head + d) {
                return Err(SawError::InvalidWalk("walk is not self-avoiding".into()));
            }
            state.advance(d);
        }
        Ok(state)
    }

    pub(crate) fn is_occupied(&self, p: Point) -> bool {
        self.index.contains_key(&p)
    }

    pub(crate) fn advance(&mut self, d: Direction) {
        let turn = match self.steps.last() {
            Some(&prev) => self.turns.last().copied().unwrap_or(0) + prev.turn_to(d),
            None => 0,
        };
        self.steps.push(d);
        self.turns.push(turn);
        self.head = self.head + d;
        self.index.insert(self.head, self.steps.len());
    }

    /// Winding from vertex `from` to the head, with incoming heading
    /// `incoming` at `from`.
    fn winding_from(&self, from: usize, incoming: Direction) -> i32 {
        let n = self.steps.len();
        debug_assert!(from < n);
        incoming.turn_to(self.steps[from]) + self.turns[n - 1] - self.turns[from]
    }

    fn winding_at(&self, p: Point, incoming: Direction) -> Option<i32> {
        self.index.get(&p).map(|&i| self.winding_from(i, incoming))
    }

    /// Whether appending `d` (to a free vertex) traps the walk.
    pub(crate) fn is_trapping(&self, d: Direction) -> bool {
        let Some(&forward) = self.steps.last() else {
            return false;
        };
        // Rotated frame: forward = W, right = N, left = S.
        let right = forward.right();
        let left = forward.left();
        let ahead = self.head + forward;
        let ahead_right = ahead + right;
        let ahead_left = ahead + left;

        let wind = |p: Point| self.winding_at(p, forward);
        if d == right {
            wind(ahead) == Some(-FULL_TURN)
                || wind(ahead_right) == Some(-FULL_TURN)
                || wind(ahead_left) == Some(-FULL_TURN)
        } else if d == left {
            wind(ahead) == Some(FULL_TURN)
                || wind(ahead_left) == Some(FULL_TURN)
                || wind(ahead_right) == Some(FULL_TURN)
        } else if d == forward {
            wind(ahead_right) == Some(FULL_TURN) || wind(ahead_left) == Some(-FULL_TURN)
        } else {
            // reversal always revisits the previous vertex
            false
        }
    }

    pub(crate) fn eligible(&self) -> Vec<Direction> {
        Direction::ALL
            .into_iter()
            .filter(|&d| !self.is_occupied(self.head + d) && !self.is_trapping(d))
            .collect()
    }
}

/// Whether appending `d` to the untrapped self-avoiding `walk` leaves the
/// new head in a finite region.
pub fn is_trapping_step(walk: &Walk, d: Direction) -> Result<bool> {
    let state = UntrappedState::from_walk(walk)?;
    if state.is_occupied(state.head + d) {
        return Err(SawError::Precondition(format!(
            "step {d} revisits {}",
            state.head + d
        )));
    }
    Ok(state.is_trapping(d))
}

/// Draws an untrapped walk of `n` steps from the origin.
///
/// All four directions are eligible for the first step.
pub fn sample_untrapped<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Sample> {
    if n == 0 {
        return Err(SawError::InvalidParameter(
            "walk length n must be >= 1".into(),
        ));
    }
    let mut state = UntrappedState::new(Point::ORIGIN);
    let mut trace = ProbTrace::new();
    for _ in 0..n {
        let options = state.eligible();
        assert!(!options.is_empty(), "untrapped walk has no eligible step");
        let d = choose(rng, &options, &mut trace);
        state.advance(d);
    }
    Ok(Sample {
        model: Model::Untrapped,
        walk: Walk::from_origin(state.steps),
        trace,
    })
}

pub(crate) fn trace_walk(walk: &Walk) -> Result<ProbTrace> {
    let mut state = UntrappedState::new(walk.start);
    let mut trace = ProbTrace::new();
    for &d in &walk.steps {
        let options = state.eligible();
        if !options.contains(&d) {
            return Err(SawError::InvalidWalk(format!(
                "step {d} from {} is not eligible",
                state.head
            )));
        }
        trace.record(options.len() as u8);
        state.advance(d);
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::lattice::Direction::*;

    fn walk(s: &str) -> Walk {
        s.parse().unwrap()
    }

    #[test]
    fn straight_walk_never_traps() {
        for d in [N, E, W] {
            assert!(!is_trapping_step(&walk("NNN"), d).unwrap());
        }
    }

    #[test]
    fn closing_a_clockwise_loop_traps() {
        let w = walk("NNEESSW");
        assert!(is_trapping_step(&w, N).unwrap());
        assert!(!is_trapping_step(&w, S).unwrap());
        assert!(is_trapping_step(&w, W).is_err());
    }

    #[test]
    fn mirrored_loop_traps_the_other_way() {
        let w = walk("SSEENNW");
        assert!(is_trapping_step(&w, S).unwrap());
        assert!(!is_trapping_step(&w, N).unwrap());
    }

    #[test]
    fn prefix_turns_match_direct_winding() {
        let w = walk("NNEESSEEENNNNWWWWWWSS");
        let state = UntrappedState::from_walk(&w).unwrap();
        for from in 0..w.len() {
            for incoming in Direction::ALL {
                assert_eq!(
                    state.winding_from(from, incoming),
                    w.winding_with_heading(from, incoming).unwrap()
                );
            }
        }
    }

    #[test]
    fn first_steps() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = sample_untrapped(1, &mut rng).unwrap();
        assert_eq!(s.trace.per_step, vec![4]);
        let s = sample_untrapped(2, &mut rng).unwrap();
        assert_eq!(s.trace.per_step, vec![4, 3]);
        assert!(sample_untrapped(0, &mut rng).is_err());
    }

    #[test]
    fn samples_are_self_avoiding_and_retrace() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let s = sample_untrapped(300, &mut rng).unwrap();
            assert!(s.walk.is_self_avoiding());
            assert_eq!(s.walk.len(), 300);
            assert_eq!(trace_walk(&s.walk).unwrap(), s.trace);
        }
    }
}
