//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use sawsis::{Direction, Point, Walk};

/// All-pairs vertex comparison.
pub fn quadratic_self_avoiding(walk: &Walk) -> bool {
    let vs = walk.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if vs[i] == vs[j] {
                return false;
            }
        }
    }
    true
}

/// Whether appending `d` leaves the new head with no route to infinity:
/// flood fill from its free neighbours inside the bounding box of the new
/// walk inflated by one; reaching the box border means escape.
pub fn head_is_enclosed(walk: &Walk, d: Direction) -> bool {
    let mut w = walk.clone();
    w.push(d);
    let vs = w.vertices();
    let occupied: HashSet<Point> = vs.iter().copied().collect();
    let min_x = vs.iter().map(|p| p.x).min().unwrap() - 1;
    let max_x = vs.iter().map(|p| p.x).max().unwrap() + 1;
    let min_y = vs.iter().map(|p| p.y).min().unwrap() - 1;
    let max_y = vs.iter().map(|p| p.y).max().unwrap() + 1;
    let inside = |p: Point| (min_x..=max_x).contains(&p.x) && (min_y..=max_y).contains(&p.y);
    let on_border = |p: Point| p.x == min_x || p.x == max_x || p.y == min_y || p.y == max_y;

    let head = w.end();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for dir in Direction::ALL {
        let p = head + dir;
        if !occupied.contains(&p) && seen.insert(p) {
            queue.push_back(p);
        }
    }
    while let Some(p) = queue.pop_front() {
        if on_border(p) {
            return false;
        }
        for dir in Direction::ALL {
            let q = p + dir;
            if inside(q) && !occupied.contains(&q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    true
}
