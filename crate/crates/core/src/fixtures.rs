//! Hand-encoded reference instances with both tours supplied.
//!
//! Vertex `i` of each instance is the point labelled `P{i+1}` in the source
//! drawing. Tours are listed in their drawn orientation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::tsp::{Instance, Tour};

/// An instance with an (assumed) optimal tour `t` and a 2-optimal tour `s`.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub instance: Instance,
    pub t: Tour,
    pub s: Tour,
    /// Anchor edge for the interior partition, when the drawing fixes one.
    pub interior_anchor: Option<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureName {
    /// Twelve points, two simple tours with three crossing pairs.
    Crossings12,
    /// Forty-two points, a crossing-free pair with a marked anchor edge.
    CrossingFree42,
}

impl FixtureName {
    pub fn load(self) -> Fixture {
        match self {
            FixtureName::Crossings12 => crossings12(),
            FixtureName::CrossingFree42 => crossing_free42(),
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixtureName::Crossings12 => "fig2",
            FixtureName::CrossingFree42 => "fig3",
        })
    }
}

impl FromStr for FixtureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" | "crossings12" => Ok(FixtureName::Crossings12),
            "fig3" | "crossing-free42" => Ok(FixtureName::CrossingFree42),
            other => Err(Error::InvalidInstance(format!("unknown fixture `{other}`"))),
        }
    }
}

fn labels(seq: &[usize]) -> Vec<usize> {
    seq.iter().map(|&p| p - 1).collect()
}

fn build(id: &str, coords: &[(i64, i64)], t: &[usize], s: &[usize]) -> (Instance, Tour, Tour) {
    let instance = Instance::from_integers(id, coords).expect("fixture points are distinct");
    let n = instance.len();
    let t = Tour::new(labels(t), n).expect("fixture tour");
    let s = Tour::new(labels(s), n).expect("fixture tour");
    (instance, t, s)
}

pub const CROSSINGS12_POINTS: [(i64, i64); 12] = [
    (11, 12),
    (9, 3),
    (0, 7),
    (11, 4),
    (5, 13),
    (3, 15),
    (4, 12),
    (11, 2),
    (6, 9),
    (10, 5),
    (12, 14),
    (14, 13),
];

/// The three crossing points of the twelve-point pair.
pub fn crossings12_points() -> [Point; 3] {
    [
        Point::int(11, 7),
        Point::ratio(59, 6, 439, 36),
        Point::ratio(70, 9, 49, 9),
    ]
}

pub fn crossings12() -> Fixture {
    let (instance, t, s) = build(
        "fig2",
        &CROSSINGS12_POINTS,
        &[1, 11, 12, 10, 4, 8, 2, 9, 3, 7, 6, 5],
        &[1, 4, 8, 2, 10, 3, 7, 6, 5, 9, 11, 12],
    );
    Fixture {
        instance,
        t,
        s,
        interior_anchor: None,
    }
}

pub const CROSSING_FREE42_POINTS: [(i64, i64); 42] = [
    (32, 5),
    (18, 18),
    (27, 1),
    (15, 1),
    (23, 13),
    (40, 13),
    (34, 1),
    (15, 11),
    (11, 3),
    (32, 11),
    (35, 19),
    (5, 10),
    (21, 3),
    (29, 19),
    (25, 7),
    (40, 7),
    (36, 15),
    (10, 16),
    (1, 20),
    (32, 16),
    (9, 7),
    (28, 14),
    (36, 6),
    (2, 5),
    (7, 1),
    (40, 1),
    (1, 14),
    (9, 20),
    (20, 10),
    (17, 6),
    (6, 15),
    (14, 15),
    (22, 20),
    (29, 8),
    (1, 9),
    (40, 20),
    (9, 12),
    (14, 20),
    (37, 10),
    (1, 1),
    (19, 14),
    (5, 19),
];

const CROSSING_FREE42_T: [usize; 42] = [
    26, 16, 23, 39, 6, 17, 36, 11, 20, 10, 22, 14, 33, 2, 41, 5, 29, 8, 32, 38, 28, 42, 19, 27, 31,
    18, 37, 21, 12, 35, 24, 40, 25, 9, 4, 30, 13, 3, 15, 34, 1, 7,
];

const CROSSING_FREE42_S: [usize; 42] = [
    26, 23, 16, 6, 36, 11, 14, 20, 17, 39, 10, 1, 34, 22, 5, 15, 29, 30, 8, 32, 41, 33, 2, 38, 18,
    28, 42, 19, 31, 37, 12, 27, 35, 24, 40, 25, 21, 9, 4, 13, 3, 7,
];

/// Compatible interior edges for the marked anchor, as `(tail, head)` labels
/// converted to 0-based vertex indices.
pub fn crossing_free42_compatible() -> Vec<(usize, usize)> {
    [
        (26, 23),
        (20, 17),
        (17, 39),
        (34, 22),
        (15, 29),
        (30, 8),
        (41, 33),
        (18, 28),
        (25, 21),
    ]
    .iter()
    .map(|&(a, b)| (a - 1, b - 1))
    .collect()
}

/// Drawn positions of the ten dual vertices, root first.
pub const CROSSING_FREE42_DUAL_SITES: [(f64, f64); 10] = [
    (38.667, 4.667),
    (33.600, 8.700),
    (37.667, 12.667),
    (35.750, 17.500),
    (25.375, 13.125),
    (19.667, 17.333),
    (20.833, 6.333),
    (12.300, 11.100),
    (5.333, 17.333),
    (4.167, 5.500),
];

pub fn crossing_free42() -> Fixture {
    let (instance, t, s) = build(
        "fig3",
        &CROSSING_FREE42_POINTS,
        &CROSSING_FREE42_T,
        &CROSSING_FREE42_S,
    );
    Fixture {
        instance,
        t,
        s,
        interior_anchor: Some((25, 22)),
    }
}
