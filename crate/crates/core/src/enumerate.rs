//! Exhaustive enumeration with exact weighted sums.
//!
//! For a sampler with trace `p(w)`, summing `1/p(w)` over all walks gives the
//! second moment `E(X^2)`, and the number of walks is `E(X)`.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SawError};
use crate::lattice::{Direction, Walk};
use crate::samplers::crossing::CrossingState;
use crate::samplers::{nes_walk_stats, Model, ProbTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumLimits {
    pub crossing_max_k: usize,
    /// Largest side enumerated walk by walk; beyond it closed forms are used.
    pub directed_max_k: usize,
    pub nes_max_walks: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            crossing_max_k: 5,
            directed_max_k: 12,
            nes_max_walks: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumReport {
    pub model: Model,
    pub k: usize,
    pub l: Option<usize>,
    /// Number of walks, `E(X)`.
    #[serde(with = "crate::decimal")]
    pub count: BigUint,
    /// `sum 1/p(w)`, i.e. `E(X^2)`.
    #[serde(with = "crate::decimal")]
    pub weighted_sum: BigUint,
    /// `sum 1/p(w)^2`, i.e. `E(X^3)`.
    #[serde(with = "crate::decimal::option")]
    pub weighted_sq_sum: Option<BigUint>,
    /// False when the totals come from closed forms only.
    pub exhaustive: bool,
}

#[derive(Default)]
struct Totals {
    count: u64,
    sum: BigUint,
    sq_sum: BigUint,
}

impl Totals {
    fn add(&mut self, w: u128) {
        self.count += 1;
        self.sum += w;
        let w = BigUint::from(w);
        self.sq_sum += &w * &w;
    }

    fn merge(&mut self, other: Totals) {
        self.count += other.count;
        self.sum += other.sum;
        self.sq_sum += other.sq_sum;
    }

    fn report(self, model: Model, k: usize, l: Option<usize>) -> EnumReport {
        EnumReport {
            model,
            k,
            l,
            count: self.count.into(),
            weighted_sum: self.sum,
            weighted_sq_sum: Some(self.sq_sum),
            exhaustive: true,
        }
    }
}

fn crossing_dfs(state: &mut CrossingState, weight: u128, out: &mut Totals) {
    if state.is_complete() {
        out.add(weight);
        return;
    }
    let options = state.eligible();
    let w = weight * options.len() as u128;
    for d in options {
        state.advance(d);
        crossing_dfs(state, w, out);
        state.retreat(d);
    }
}

/// Prefixes of depth `depth` (or complete walks) in N, E, S, W order.
fn crossing_prefixes(k: usize, depth: usize) -> Vec<(Vec<Direction>, u128)> {
    let mut frontier = vec![(Vec::new(), 1u128)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (steps, w) in frontier {
            let mut state = CrossingState::new(k);
            for &d in &steps {
                state.advance(d);
            }
            if state.is_complete() {
                next.push((steps, w));
                continue;
            }
            let options = state.eligible();
            let len = options.len() as u128;
            for d in options {
                let mut s = steps.clone();
                s.push(d);
                next.push((s, w * len));
            }
        }
        frontier = next;
    }
    frontier
}

fn worker_count() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// All crossing walks of the k x k square: `count = c(k)`,
/// `weighted_sum = d(k)`.
pub fn enumerate_crossing(k: usize, limits: &EnumLimits) -> Result<EnumReport> {
    if k == 0 {
        return Err(SawError::InvalidParameter(
            "square side k must be >= 1".into(),
        ));
    }
    if k > limits.crossing_max_k {
        return Err(SawError::limit("crossing side k", k, limits.crossing_max_k));
    }
    let prefixes = crossing_prefixes(k, 2 * k);
    let workers = worker_count().min(prefixes.len()).max(1);
    let parts: Vec<Totals> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|t| {
                let prefixes = &prefixes;
                scope.spawn(move || {
                    let mut out = Totals::default();
                    for (steps, w) in prefixes.iter().skip(t).step_by(workers) {
                        let mut state = CrossingState::new(k);
                        for &d in steps {
                            state.advance(d);
                        }
                        crossing_dfs(&mut state, *w, &mut out);
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration thread panicked"))
            .collect()
    });
    let mut total = Totals::default();
    for p in parts {
        total.merge(p);
    }
    Ok(total.report(Model::Crossing, k, None))
}

/// Every crossing walk of the k x k square with its trace, in N, E, S, W
/// depth-first order.
pub fn crossing_walks(k: usize, limits: &EnumLimits) -> Result<Vec<(Walk, ProbTrace)>> {
    if k == 0 {
        return Err(SawError::InvalidParameter(
            "square side k must be >= 1".into(),
        ));
    }
    if k > limits.crossing_max_k {
        return Err(SawError::limit("crossing side k", k, limits.crossing_max_k));
    }
    fn go(
        state: &mut CrossingState,
        steps: &mut Vec<Direction>,
        sizes: &mut Vec<u8>,
        out: &mut Vec<(Walk, ProbTrace)>,
    ) {
        if state.is_complete() {
            out.push((
                Walk::from_origin(steps.clone()),
                ProbTrace::from_sizes(sizes.iter().copied()),
            ));
            return;
        }
        let options = state.eligible();
        for &d in &options {
            state.advance(d);
            steps.push(d);
            sizes.push(options.len() as u8);
            go(state, steps, sizes, out);
            sizes.pop();
            steps.pop();
            state.retreat(d);
        }
    }
    let mut out = Vec::new();
    go(
        &mut CrossingState::new(k),
        &mut Vec::new(),
        &mut Vec::new(),
        &mut out,
    );
    Ok(out)
}

/// `sum_{i<k} 2^(k+i+1) C(k+i-1, i)`: the weighted sum of directed walks
/// grouped by where they first hit the north or east side.
pub fn directed_closed_sum(k: usize) -> BigUint {
    let two = BigUint::from(2u8);
    (0..k)
        .map(|i| Pow::pow(&two, k + i + 1) * binomial(BigUint::from(k + i - 1), BigUint::from(i)))
        .sum()
}

/// Directed walks of the k x k square; `count = C(2k,k)`.
///
/// Up to `limits.directed_max_k` the walks are enumerated one by one and the
/// result is checked against the closed sum; beyond it only closed forms are
/// used.
pub fn enumerate_directed(k: usize, limits: &EnumLimits) -> Result<EnumReport> {
    if k == 0 {
        return Err(SawError::InvalidParameter(
            "square side k must be >= 1".into(),
        ));
    }
    let closed = directed_closed_sum(k);
    let count = binomial(BigUint::from(2 * k), BigUint::from(k));
    if k > limits.directed_max_k {
        return Ok(EnumReport {
            model: Model::Directed,
            k,
            l: None,
            count,
            weighted_sum: closed,
            weighted_sq_sum: None,
            exhaustive: false,
        });
    }

    fn go(k: i64, x: i64, y: i64, w: u128, out: &mut Totals) {
        if x == k && y == k {
            out.add(w);
            return;
        }
        let both = x < k && y < k;
        let w = if both { 2 * w } else { w };
        if y < k {
            go(k, x, y + 1, w, out);
        }
        if x < k {
            go(k, x + 1, y, w, out);
        }
    }
    let mut totals = Totals::default();
    go(k as i64, 0, 0, 1, &mut totals);
    let report = totals.report(Model::Directed, k, None);
    assert_eq!(report.count, count, "directed walk count");
    assert_eq!(report.weighted_sum, closed, "directed weighted sum");
    Ok(report)
}

/// The NES walk of height `k` whose i-th East step is taken at height
/// `heights[i]`.
pub fn nes_walk_from_heights(k: usize, heights: &[usize]) -> Walk {
    fn move_to(walk: &mut Walk, y: &mut usize, h: usize) {
        let d = if h > *y { Direction::N } else { Direction::S };
        for _ in 0..h.abs_diff(*y) {
            walk.push(d);
        }
        *y = h;
    }
    let mut walk = Walk::default();
    let mut y = 0;
    for &h in heights {
        move_to(&mut walk, &mut y, h);
        walk.push(Direction::E);
    }
    move_to(&mut walk, &mut y, k);
    walk
}

/// NES walks crossing the rectangle of height `k` and width `l`.
pub fn enumerate_nes(k: usize, l: usize, limits: &EnumLimits) -> Result<EnumReport> {
    if k == 0 || l == 0 {
        return Err(SawError::InvalidParameter(
            "rectangle height k and width l must be >= 1".into(),
        ));
    }
    let expected: BigUint = Pow::pow(BigUint::from(k + 1), l);
    if expected > BigUint::from(limits.nes_max_walks) {
        return Err(SawError::limit(
            "NES walk count (k+1)^l",
            expected,
            limits.nes_max_walks,
        ));
    }
    let mut heights = vec![0usize; l];
    let mut count = 0u64;
    let mut sum = BigUint::zero();
    let mut sq_sum = BigUint::zero();
    loop {
        let walk = nes_walk_from_heights(k, &heights);
        let (_, w) = nes_walk_stats(&walk, k)?;
        count += 1;
        sq_sum += &w * &w;
        sum += w;
        // odometer over {0..=k}^l
        let Some(i) = heights.iter().rposition(|&h| h < k) else {
            break;
        };
        heights[i] += 1;
        heights[i + 1..].fill(0);
    }
    debug_assert_eq!(BigUint::from(count), expected);
    Ok(EnumReport {
        model: Model::Nes,
        k,
        l: Some(l),
        count: count.into(),
        weighted_sum: sum,
        weighted_sq_sum: Some(sq_sum),
        exhaustive: true,
    })
}

/// Largest `n` with `(k+1)(2n+1) - 1 <= big_k`, i.e. how many odd rows of
/// k-squares tile the `big_k` square.
pub fn tiling_order(k: usize, big_k: usize) -> Option<u32> {
    let side = k + 1;
    if side > big_k + 1 {
        return None;
    }
    let m = (big_k + 1) / side;
    Some(((m - 1) / 2) as u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingCheck {
    pub k: usize,
    pub big_k: usize,
    pub n: u32,
    /// `c(K) >= c(k)^((2n+1)^2)`
    pub count_holds: bool,
    /// `d(K) >= 2^(2n^2) d(k)^((2n+1)^2)`
    pub weighted_holds: bool,
}

/// Checks the tiling inequalities for every pair `k <= K` of crossing
/// reports.
pub fn super_multiplicativity(reports: &[EnumReport]) -> Vec<TilingCheck> {
    let mut out = Vec::new();
    for small in reports {
        for big in reports {
            let Some(n) = tiling_order(small.k, big.k) else {
                continue;
            };
            if small.k > big.k {
                continue;
            }
            let tiles = (2 * n + 1) * (2 * n + 1);
            let bonus = Pow::pow(BigUint::from(2u8), 2 * n * n);
            out.push(TilingCheck {
                k: small.k,
                big_k: big.k,
                n,
                count_holds: big.count >= Pow::pow(&small.count, tiles),
                weighted_holds: big.weighted_sum >= bonus * Pow::pow(&small.weighted_sum, tiles),
            });
        }
    }
    out
}

/// Exact integer check that `w` is `2^a 3^b`.
pub fn is_smooth_weight(w: &BigUint) -> bool {
    let mut w = w.clone();
    if w.is_zero() {
        return false;
    }
    for p in [2u8, 3] {
        let p = BigUint::from(p);
        while (&w % &p).is_zero() {
            w /= &p;
        }
    }
    w.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> EnumLimits {
        EnumLimits::default()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn crossing_small_sides() {
        let r = enumerate_crossing(1, &lim()).unwrap();
        assert_eq!((r.count, r.weighted_sum), (big(2), big(4)));
        let r = enumerate_crossing(2, &lim()).unwrap();
        assert_eq!((r.count, r.weighted_sum), (big(12), big(152)));
        let r = enumerate_crossing(3, &lim()).unwrap();
        assert_eq!((r.count, r.weighted_sum), (big(184), big(49776)));
        assert!(matches!(
            enumerate_crossing(6, &lim()),
            Err(SawError::LimitExceeded { .. })
        ));
    }

    #[test]
    fn crossing_walk_list_matches_report() {
        let walks = crossing_walks(3, &lim()).unwrap();
        assert_eq!(walks.len(), 184);
        let total: BigUint = walks.iter().map(|(_, t)| t.inverse_probability()).sum();
        assert_eq!(total, big(49776));
        assert!(walks.iter().all(|(w, _)| w.is_self_avoiding()));
    }

    #[test]
    fn directed_small_sides() {
        let r = enumerate_directed(1, &lim()).unwrap();
        assert_eq!((r.count, r.weighted_sum), (big(2), big(4)));
        let r = enumerate_directed(2, &lim()).unwrap();
        assert_eq!((r.count, r.weighted_sum), (big(6), big(40)));
        assert_eq!(directed_closed_sum(2), big(40));
        let r = enumerate_directed(30, &lim()).unwrap();
        assert!(!r.exhaustive);
    }

    #[test]
    fn nes_small_rectangles() {
        let cases = [(2, 2, 9, 96), (1, 3, 8, 64), (2, 1, 3, 10)];
        for (k, l, count, sum) in cases {
            let r = enumerate_nes(k, l, &lim()).unwrap();
            assert_eq!(
                (r.count, r.weighted_sum),
                (big(count), big(sum)),
                "k={k} l={l}"
            );
        }
        assert!(enumerate_nes(9, 8, &lim()).is_err());
    }

    #[test]
    fn walks_from_heights() {
        assert_eq!(nes_walk_from_heights(2, &[0, 0]).to_string(), "EENN");
        assert_eq!(nes_walk_from_heights(2, &[1, 0]).to_string(), "NESENN");
        assert_eq!(nes_walk_from_heights(2, &[2]).to_string(), "NNE");
    }

    #[test]
    fn tiling() {
        assert_eq!(tiling_order(1, 3), Some(0));
        assert_eq!(tiling_order(1, 5), Some(1));
        assert_eq!(tiling_order(2, 8), Some(1));
        assert_eq!(tiling_order(2, 7), Some(0));
        assert_eq!(tiling_order(3, 2), None);
    }

    #[test]
    fn smooth_weights() {
        assert!(is_smooth_weight(&big(48)));
        assert!(!is_smooth_weight(&big(10)));
        assert!(!is_smooth_weight(&big(0)));
    }
}
