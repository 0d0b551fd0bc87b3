//! The 2-Opt local search: move enumeration, move application and the
//! 2-optimality and simplicity checkers.
//!
//! A move removes the directed edges `(a, b)` and `(x, y)` and reconnects the
//! tour with `(a, x)` and `(b, y)`, reversing the segment from `b` to `x`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::segments_conflict;
use crate::tsp::{tour_length, Instance, Tour};

/// Absolute improvement a move must exceed to count as improving.
pub const MOVE_EPSILON: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    FirstImprovement,
    BestImprovement,
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::FirstImprovement => "first-improvement",
            Policy::BestImprovement => "best-improvement",
        })
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "first-improvement" => Ok(Policy::FirstImprovement),
            "best" | "best-improvement" => Ok(Policy::BestImprovement),
            other => Err(Error::InvalidMove(format!("unknown policy `{other}`"))),
        }
    }
}

/// Exchange of the directed edges `(a, b)` and `(x, y)` for `(a, x)` and `(b, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoMove {
    pub a: usize,
    pub b: usize,
    pub x: usize,
    pub y: usize,
    /// `c(a,x) + c(b,y) - c(a,b) - c(x,y)`; negative when improving.
    pub delta: f64,
}

impl TwoMove {
    pub fn new(inst: &Instance, (a, b): (usize, usize), (x, y): (usize, usize)) -> Self {
        TwoMove {
            a,
            b,
            x,
            y,
            delta: move_delta(inst, a, b, x, y),
        }
    }
}

#[inline]
pub fn move_delta(inst: &Instance, a: usize, b: usize, x: usize, y: usize) -> f64 {
    (inst.dist(a, x) + inst.dist(b, y)) - (inst.dist(a, b) + inst.dist(x, y))
}

/// Finds a move with `delta < -epsilon`. Edge pairs are scanned as index pairs
/// `(i, j)`, `i < j`, in lexicographic order; adjacent pairs are skipped.
pub fn find_improving_move_with(
    inst: &Instance,
    tour: &Tour,
    policy: Policy,
    epsilon: f64,
) -> Option<TwoMove> {
    let order = tour.order();
    let n = order.len();
    let mut best: Option<TwoMove> = None;
    for i in 0..n {
        let (a, b) = (order[i], order[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (x, y) = (order[j], order[(j + 1) % n]);
            let delta = move_delta(inst, a, b, x, y);
            if delta < -epsilon {
                let m = TwoMove { a, b, x, y, delta };
                match policy {
                    Policy::FirstImprovement => return Some(m),
                    Policy::BestImprovement => {
                        if best.is_none_or(|cur| delta < cur.delta) {
                            best = Some(m);
                        }
                    }
                }
            }
        }
    }
    best
}

pub fn find_improving_move(inst: &Instance, tour: &Tour, policy: Policy) -> Option<TwoMove> {
    find_improving_move_with(inst, tour, policy, MOVE_EPSILON)
}

/// Applies `m` regardless of its sign. Reverses whichever of the two
/// subpaths is shorter, so the orientation of the result may be flipped;
/// the resulting cycle is the same either way.
pub fn apply_move(tour: &Tour, m: &TwoMove) -> Result<Tour> {
    let mut order = tour.order().to_vec();
    let mut pos = tour.positions();
    apply_in_place(&mut order, &mut pos, m)?;
    Ok(Tour::from_vec_unchecked(order))
}

fn apply_in_place(order: &mut [usize], pos: &mut [usize], m: &TwoMove) -> Result<()> {
    let n = order.len();
    let edge_at = |u: usize, v: usize| -> Option<usize> {
        let i = *pos.get(u)?;
        (i < n && order[(i + 1) % n] == v).then_some(i)
    };
    let i = edge_at(m.a, m.b)
        .ok_or_else(|| Error::InvalidMove(format!("({}, {}) is not a tour edge", m.a, m.b)))?;
    let j = edge_at(m.x, m.y)
        .ok_or_else(|| Error::InvalidMove(format!("({}, {}) is not a tour edge", m.x, m.y)))?;
    if i == j || (i + 1) % n == j || (j + 1) % n == i {
        return Err(Error::InvalidMove(
            "edges must be distinct and non-adjacent".into(),
        ));
    }
    // Segment b..x runs from i+1 to j (cyclically); its complement y..a from j+1 to i.
    let inner = (j + n - i) % n;
    let (start, len) = if inner <= n - inner {
        ((i + 1) % n, inner)
    } else {
        ((j + 1) % n, n - inner)
    };
    for k in 0..len / 2 {
        let p = (start + k) % n;
        let q = (start + len - 1 - k) % n;
        order.swap(p, q);
        pos[order[p]] = p;
        pos[order[q]] = q;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunOutcome {
    /// No improving move remained.
    Converged,
    /// Stopped at the iteration budget; the tour is the best found so far.
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub iterations: usize,
    pub start_length: f64,
    pub final_length: f64,
    pub policy: Policy,
    pub outcome: RunOutcome,
}

impl RunStats {
    pub fn converged(&self) -> bool {
        self.outcome == RunOutcome::Converged
    }
}

/// Runs 2-Opt from `start` until no improving move exists or `max_iters`
/// moves have been applied. The returned tour is in canonical form.
pub fn run_two_opt(
    inst: &Instance,
    start: &Tour,
    policy: Policy,
    max_iters: usize,
) -> Result<(Tour, RunStats)> {
    if start.len() != inst.len() {
        return Err(Error::InvalidTour(
            "start tour does not match instance".into(),
        ));
    }
    let start_length = tour_length(inst, start);
    let mut tour = start.clone();
    let mut order = start.order().to_vec();
    let mut pos = start.positions();
    let mut iterations = 0;
    let outcome = loop {
        let Some(m) = find_improving_move(inst, &tour, policy) else {
            break RunOutcome::Converged;
        };
        if iterations == max_iters {
            break RunOutcome::BudgetExceeded;
        }
        apply_in_place(&mut order, &mut pos, &m)?;
        tour = Tour::from_vec_unchecked(order.clone());
        iterations += 1;
    };
    let tour = tour.canonical();
    let final_length = tour_length(inst, &tour);
    Ok((
        tour,
        RunStats {
            iterations,
            start_length,
            final_length,
            policy,
            outcome,
        },
    ))
}

/// A seeded uniformly random tour.
pub fn random_tour(n: usize, seed: u64) -> Result<Tour> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Tour::new(order, n)
}

/// Pair of directed edges violating the 2-optimality condition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub delta: f64,
}

/// Checks `c(a,x) + c(b,y) >= c(a,b) + c(x,y) - epsilon` over all pairs of
/// distinct edges, returning the first violating pair in scan order.
pub fn two_optimality_violation(inst: &Instance, tour: &Tour, epsilon: f64) -> Option<Violation> {
    let n = tour.len();
    for i in 0..n {
        let (a, b) = tour.edge(i);
        for j in (i + 1)..n {
            let (x, y) = tour.edge(j);
            let delta = move_delta(inst, a, b, x, y);
            if delta < -epsilon {
                return Some(Violation {
                    first: (a, b),
                    second: (x, y),
                    delta,
                });
            }
        }
    }
    None
}

pub fn is_two_optimal(inst: &Instance, tour: &Tour) -> (bool, Option<Violation>) {
    let witness = two_optimality_violation(inst, tour, MOVE_EPSILON);
    (witness.is_none(), witness)
}

/// True if no two tour edges meet in a point interior to either of them.
pub fn is_simple(inst: &Instance, tour: &Tour) -> bool {
    let n = tour.len();
    let edges: Vec<_> = tour.edges().collect();
    for i in 0..n {
        let (a, b) = edges[i];
        for &(x, y) in &edges[(i + 1)..] {
            if segments_conflict(inst.point(a), inst.point(b), inst.point(x), inst.point(y)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::{generate_instance, Family};

    fn square() -> Instance {
        Instance::from_integers("sq", &[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn square_crossing_move() {
        let sq = square();
        let crossing = Tour::new(vec![0, 2, 1, 3], 4).unwrap();
        let m = find_improving_move(&sq, &crossing, Policy::FirstImprovement).unwrap();
        assert!((m.delta - (4.0 - (2.0 + 2.0 * 2f64.sqrt()))).abs() < 1e-12);
        let fixed = apply_move(&crossing, &m).unwrap();
        assert_eq!(tour_length(&sq, &fixed), 4.0);
        assert!(
            find_improving_move(&sq, &Tour::identity(4).unwrap(), Policy::BestImprovement)
                .is_none()
        );
    }

    #[test]
    fn checkers_on_square() {
        let sq = square();
        let hull = Tour::identity(4).unwrap();
        assert!(is_two_optimal(&sq, &hull).0);
        assert!(is_simple(&sq, &hull));
        let crossing = Tour::new(vec![0, 2, 1, 3], 4).unwrap();
        let (ok, witness) = is_two_optimal(&sq, &crossing);
        assert!(!ok);
        let w = witness.unwrap();
        // The two diagonals (0,2) and (1,3).
        assert_eq!((w.first, w.second), ((0, 2), (1, 3)));
        assert!(!is_simple(&sq, &crossing));
    }

    #[test]
    fn apply_move_rejects_foreign_or_adjacent_edges() {
        let sq = square();
        let t = Tour::identity(4).unwrap();
        let bad = TwoMove::new(&sq, (0, 2), (1, 3));
        assert!(matches!(apply_move(&t, &bad), Err(Error::InvalidMove(_))));
        let adjacent = TwoMove::new(&sq, (0, 1), (1, 2));
        assert!(matches!(
            apply_move(&t, &adjacent),
            Err(Error::InvalidMove(_))
        ));
    }

    #[test]
    fn zero_delta_move_keeps_length() {
        // (a,b) and (x,y) are both 3-4-5 diagonals, and so are (a,x) and (b,y).
        let inst = Instance::from_integers("rhombus", &[(0, 0), (3, 4), (3, -4), (6, 0)]).unwrap();
        let t = Tour::identity(4).unwrap();
        let m = TwoMove::new(&inst, (0, 1), (2, 3));
        assert_eq!(m.delta, 0.0);
        let moved = apply_move(&t, &m).unwrap();
        assert_eq!(tour_length(&inst, &moved), tour_length(&inst, &t));
        assert!(moved.contains_edge(0, 2) && moved.contains_edge(1, 3));
    }

    #[test]
    fn delta_matches_length_change() {
        let inst = Instance::from_integers("k", &[(0, 0), (3, 0), (3, 4), (0, 4), (6, 2), (-3, 2)])
            .unwrap();
        let t = Tour::new(vec![0, 1, 4, 2, 3, 5], 6).unwrap();
        let m = TwoMove::new(&inst, (0, 1), (2, 3));
        // c(0,2) + c(1,3) = 5 + 5 against c(0,1) + c(2,3) = 3 + 3.
        assert_eq!(m.delta, 4.0);
        let moved = apply_move(&t, &m).unwrap();
        assert_eq!(tour_length(&inst, &moved) - tour_length(&inst, &t), 4.0);
    }

    #[test]
    fn one_move_on_random_instance() {
        let inst = generate_instance(5, 6, Family::UniformBox, 50).unwrap();
        let t = random_tour(6, 11).unwrap();
        if let Some(m) = find_improving_move(&inst, &t, Policy::BestImprovement) {
            let before = tour_length(&inst, &t);
            let after = tour_length(&inst, &apply_move(&t, &m).unwrap());
            assert!((before - after - m.delta.abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn run_from_crossing_square() {
        let sq = square();
        let (t, stats) = run_two_opt(
            &sq,
            &Tour::new(vec![0, 2, 1, 3], 4).unwrap(),
            Policy::FirstImprovement,
            100,
        )
        .unwrap();
        assert_eq!(stats.iterations, 1);
        assert_eq!(stats.final_length, 4.0);
        assert!(stats.converged());
        assert_eq!(t.order(), &[0, 1, 2, 3]);
    }

    #[test]
    fn budget_exceeded_returns_best_so_far() {
        let inst = generate_instance(9, 12, Family::UniformBox, 100).unwrap();
        let start = random_tour(12, 9).unwrap();
        let (_, stats) = run_two_opt(&inst, &start, Policy::FirstImprovement, 0).unwrap();
        assert_eq!(stats.outcome, RunOutcome::BudgetExceeded);
        assert_eq!(stats.final_length, stats.start_length);
    }

    #[test]
    fn policy_parsing() {
        assert_eq!("best".parse::<Policy>().unwrap(), Policy::BestImprovement);
        assert!("worst".parse::<Policy>().is_err());
    }
}
