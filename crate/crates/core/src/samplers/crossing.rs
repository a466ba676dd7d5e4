//! Self-avoiding walks crossing a k x k square from (0,0) to (k,k).
//!
//! A step is eligible when the extended walk is still self-avoiding, stays
//! in the square and can still be completed to the North-East corner.

use std::collections::VecDeque;

use rand::Rng;

use super::{choose, Model, ProbTrace, Sample};
use crate::error::{Result, SawError};
use crate::lattice::{DenseOccupancy, Direction, Point, Rect, Walk};

/// Growing crossing walk with its occupancy grid and a reusable flood-fill
/// buffer.
#[derive(Debug, Clone)]
pub(crate) struct CrossingState {
    occ: DenseOccupancy,
    head: Point,
    target: Point,
    stamp: Vec<u32>,
    generation: u32,
    queue: VecDeque<Point>,
}

impl CrossingState {
    pub(crate) fn new(k: usize) -> Self {
        let rect = Rect::square(k);
        let mut occ = DenseOccupancy::new(rect);
        occ.set(Point::ORIGIN, true);
        CrossingState {
            occ,
            head: Point::ORIGIN,
            target: rect.corner(),
            stamp: vec![0; rect.cells()],
            generation: 0,
            queue: VecDeque::new(),
        }
    }

    pub(crate) fn head(&self) -> Point {
        self.head
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.head == self.target
    }

    pub(crate) fn advance(&mut self, d: Direction) {
        self.head = self.head + d;
        self.occ.set(self.head, true);
    }

    pub(crate) fn retreat(&mut self, d: Direction) {
        self.occ.set(self.head, false);
        self.head = self.head.step(d.reverse());
    }

    /// Eligible steps from the current head, in N, E, S, W order.
    ///
    /// One breadth-first fill from the target over free cells marks the
    /// target's component; a free neighbour of the head can still reach the
    /// corner exactly when it lies in that component.
    pub(crate) fn eligible(&mut self) -> Vec<Direction> {
        if self.is_complete() {
            return Vec::new();
        }
        self.flood_from_target();
        let rect = self.occ.rect();
        Direction::ALL
            .into_iter()
            .filter(|&d| {
                let p = self.head + d;
                self.occ.is_free(p) && self.stamp[rect.index(p)] == self.generation
            })
            .collect()
    }

    fn flood_from_target(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.fill(0);
            self.generation = 1;
        }
        let rect = self.occ.rect();
        self.queue.clear();
        if !self.occ.is_free(self.target) {
            return;
        }
        self.stamp[rect.index(self.target)] = self.generation;
        self.queue.push_back(self.target);
        while let Some(p) = self.queue.pop_front() {
            for d in Direction::ALL {
                let q = p + d;
                if self.occ.is_free(q) && self.stamp[rect.index(q)] != self.generation {
                    self.stamp[rect.index(q)] = self.generation;
                    self.queue.push_back(q);
                }
            }
        }
    }
}

fn check_side(k: usize) -> Result<()> {
    if k == 0 {
        return Err(SawError::InvalidParameter(
            "square side k must be >= 1".into(),
        ));
    }
    Ok(())
}

fn replay(k: usize, walk: &Walk) -> Result<CrossingState> {
    check_side(k)?;
    if walk.start != Point::ORIGIN {
        return Err(SawError::InvalidWalk(
            "crossing walks start at (0,0)".into(),
        ));
    }
    let mut state = CrossingState::new(k);
    for &d in &walk.steps {
        let p = state.head() + d;
        if !state.occ.is_free(p) {
            return Err(SawError::InvalidWalk(format!(
                "step to {p} leaves the square or revisits a vertex"
            )));
        }
        state.advance(d);
    }
    Ok(state)
}

/// Steps that keep `partial_walk` self-avoiding, inside `[0,k]^2` and
/// completable to `(k,k)`.
pub fn eligible_steps_crossing(partial_walk: &Walk, k: usize) -> Result<Vec<Direction>> {
    Ok(replay(k, partial_walk)?.eligible())
}

/// Draws one crossing walk of the k x k square.
pub fn sample_crossing_saw<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<Sample> {
    check_side(k)?;
    let mut state = CrossingState::new(k);
    let mut walk = Walk::from_origin(Vec::with_capacity(2 * k));
    let mut trace = ProbTrace::new();
    while !state.is_complete() {
        let options = state.eligible();
        // the target component always touches the head of an unfinished walk
        assert!(!options.is_empty(), "crossing sampler reached a dead end");
        let d = choose(rng, &options, &mut trace);
        state.advance(d);
        walk.push(d);
    }
    Ok(Sample {
        model: Model::Crossing,
        walk,
        trace,
    })
}

/// Eligible-set sizes along a complete crossing walk.
pub(crate) fn trace_walk(k: usize, walk: &Walk) -> Result<ProbTrace> {
    check_side(k)?;
    let mut state = CrossingState::new(k);
    let mut trace = ProbTrace::new();
    for &d in &walk.steps {
        let options = state.eligible();
        if !options.contains(&d) {
            return Err(SawError::InvalidWalk(format!(
                "step {d} from {} is not eligible",
                state.head()
            )));
        }
        trace.record(options.len() as u8);
        state.advance(d);
    }
    if !state.is_complete() {
        return Err(SawError::InvalidWalk("walk does not end at (k,k)".into()));
    }
    Ok(trace)
}
