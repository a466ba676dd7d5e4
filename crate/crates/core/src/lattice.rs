//! Square-lattice geometry: unit steps, points, walks and their winding.

use std::collections::HashSet;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SawError};

/// A unit step on the square lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    N,
    E,
    S,
    W,
}

impl Direction {
    /// Fixed enumeration order used by every sampler and enumerator.
    pub const ALL: [Direction; 4] = [Direction::N, Direction::E, Direction::S, Direction::W];

    pub const fn delta(self) -> (i64, i64) {
        match self {
            Direction::N => (0, 1),
            Direction::E => (1, 0),
            Direction::S => (0, -1),
            Direction::W => (-1, 0),
        }
    }

    pub const fn reverse(self) -> Direction {
        match self {
            Direction::N => Direction::S,
            Direction::E => Direction::W,
            Direction::S => Direction::N,
            Direction::W => Direction::E,
        }
    }

    /// Quarter turn counterclockwise.
    pub const fn left(self) -> Direction {
        match self {
            Direction::N => Direction::W,
            Direction::W => Direction::S,
            Direction::S => Direction::E,
            Direction::E => Direction::N,
        }
    }

    /// Quarter turn clockwise.
    pub const fn right(self) -> Direction {
        self.left().reverse()
    }

    pub const fn is_vertical(self) -> bool {
        matches!(self, Direction::N | Direction::S)
    }

    /// Signed turn from heading `self` to heading `next`: +1 for a left
    /// turn, -1 for a right turn, 0 when going straight. A reversal is
    /// neither a left nor a right turn and also counts 0.
    pub const fn turn_to(self, next: Direction) -> i32 {
        if next as u8 == self.left() as u8 {
            1
        } else if next as u8 == self.right() as u8 {
            -1
        } else {
            0
        }
    }

    pub const fn letter(self) -> char {
        match self {
            Direction::N => 'N',
            Direction::E => 'E',
            Direction::S => 'S',
            Direction::W => 'W',
        }
    }

    pub fn from_letter(c: char) -> Option<Direction> {
        match c.to_ascii_uppercase() {
            'N' => Some(Direction::N),
            'E' => Some(Direction::E),
            'S' => Some(Direction::S),
            'W' => Some(Direction::W),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub const fn step(self, d: Direction) -> Point {
        let (dx, dy) = d.delta();
        Point::new(self.x + dx, self.y + dy)
    }
}

impl Add<Direction> for Point {
    type Output = Point;

    fn add(self, d: Direction) -> Point {
        self.step(d)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A rectangle `[0, width] x [0, height]` of lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub width: usize,
    pub height: usize,
}

impl Rect {
    pub const fn new(width: usize, height: usize) -> Self {
        Rect { width, height }
    }

    pub const fn square(side: usize) -> Self {
        Rect::new(side, side)
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= 0 && p.y >= 0 && p.x <= self.width as i64 && p.y <= self.height as i64
    }

    pub fn corner(&self) -> Point {
        Point::new(self.width as i64, self.height as i64)
    }

    /// Number of lattice points in the rectangle.
    pub fn cells(&self) -> usize {
        (self.width + 1) * (self.height + 1)
    }

    /// Row-major index of a contained point.
    pub fn index(&self, p: Point) -> usize {
        p.y as usize * (self.width + 1) + p.x as usize
    }
}

/// A walk: a start point followed by unit steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Walk {
    pub start: Point,
    pub steps: Vec<Direction>,
}

impl Walk {
    pub fn new(start: Point, steps: Vec<Direction>) -> Self {
        Walk { start, steps }
    }

    pub fn from_origin(steps: Vec<Direction>) -> Self {
        Walk::new(Point::ORIGIN, steps)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertex sequence `v_0 = start, v_{i+1} = v_i + steps[i]`.
    pub fn vertices(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut p = self.start;
        out.push(p);
        for &d in &self.steps {
            p = p + d;
            out.push(p);
        }
        out
    }

    pub fn end(&self) -> Point {
        self.steps.iter().fold(self.start, |p, &d| p + d)
    }

    pub fn is_self_avoiding(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.steps.len() + 1);
        self.vertices().into_iter().all(|p| seen.insert(p))
    }

    pub fn is_confined_to(&self, rect: Rect) -> bool {
        self.vertices().into_iter().all(|p| rect.contains(p))
    }

    /// Winding between vertex `from_index` and the final vertex, in quarter
    /// turns (multiply by pi/2 for radians).
    ///
    /// The heading into `v_from_index` is taken to be `W`, as if a half-edge
    /// arrived from the East; the result is the number of left turns minus the
    /// number of right turns along the headings `W, steps[from_index..]`.
    pub fn winding_number(&self, from_index: usize) -> Result<i32> {
        self.winding_with_heading(from_index, Direction::W)
    }

    /// As [`Walk::winding_number`] with an arbitrary incoming heading.
    pub fn winding_with_heading(&self, from_index: usize, incoming: Direction) -> Result<i32> {
        if from_index > self.steps.len() {
            return Err(SawError::IndexOutOfRange {
                index: from_index,
                len: self.steps.len() + 1,
            });
        }
        let mut heading = incoming;
        let mut total = 0;
        for &d in &self.steps[from_index..] {
            total += heading.turn_to(d);
            heading = d;
        }
        Ok(total)
    }

    pub fn push(&mut self, d: Direction) {
        self.steps.push(d);
    }

    pub fn step_string(&self) -> String {
        self.steps.iter().map(|d| d.letter()).collect()
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.step_string())
    }
}

impl FromStr for Walk {
    type Err = SawError;

    /// Parses a step string such as `"NNEES"`; the walk starts at the origin.
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| Direction::from_letter(c).ok_or_else(|| SawError::Parse(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Walk::from_origin(steps))
    }
}

/// Visited-vertex set for a walk confined to a rectangle.
#[derive(Debug, Clone)]
pub struct DenseOccupancy {
    rect: Rect,
    cells: Vec<bool>,
}

impl DenseOccupancy {
    pub fn new(rect: Rect) -> Self {
        DenseOccupancy {
            rect,
            cells: vec![false; rect.cells()],
        }
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    /// Points outside the rectangle count as occupied.
    pub fn is_free(&self, p: Point) -> bool {
        self.rect.contains(p) && !self.cells[self.rect.index(p)]
    }

    pub fn set(&mut self, p: Point, occupied: bool) {
        let i = self.rect.index(p);
        self.cells[i] = occupied;
    }
}
