//! Instances, oriented tours and their lengths.

mod exact;
mod generate;
mod json;

pub use exact::{brute_force_optimum, exact_optimum, BRUTE_FORCE_LIMIT, DEFAULT_EXACT_LIMIT};
pub use generate::{generate_instance, Family};
pub use json::{
    instance_from_json, instance_to_json, read_instance, read_tour, write_instance, write_tour,
    InstanceDoc,
};

use crate::error::{Error, Result};
use crate::geometry::{all_collinear, Point};

/// A finite set of distinct planar points with a label.
#[derive(Clone, Debug)]
pub struct Instance {
    id: String,
    points: Vec<Point>,
    dist: Vec<f64>,
}

impl Instance {
    pub fn new(id: impl Into<String>, points: Vec<Point>) -> Result<Self> {
        let mut sorted: Vec<&Point> = points.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance(format!("duplicate point {}", w[0])));
        }
        let n = points.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = points[i].distance(&points[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(Instance {
            id: id.into(),
            points,
            dist,
        })
    }

    pub fn from_integers(id: impl Into<String>, coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(id, coords.iter().map(|&(x, y)| Point::int(x, y)).collect())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.points.len() + j]
    }

    pub fn is_degenerate(&self) -> bool {
        all_collinear(&self.points)
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }
}

/// A directed Hamiltonian cycle, stored as the sequence of visited vertex
/// indices. The edge set is `(order[i], order[i + 1 mod n])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tour {
    order: Vec<usize>,
}

impl Tour {
    /// Validates that `order` is a permutation of `0..n`, `n >= 3`.
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self> {
        if order.len() != n {
            return Err(Error::InvalidTour(format!(
                "tour has {} vertices, instance has {n}",
                order.len()
            )));
        }
        if n < 3 {
            return Err(Error::InvalidTour(format!(
                "need at least 3 vertices, got {n}"
            )));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidTour(format!(
                    "vertex {v} out of range or repeated"
                )));
            }
        }
        Ok(Tour { order })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).collect(), n)
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        Tour { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        let n = self.order.len();
        (self.order[i], self.order[(i + 1) % n])
    }

    /// Directed edges in tour order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order.len()).map(move |i| self.edge(i))
    }

    /// `pos[v]` is the index of vertex `v` in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn reversed(&self) -> Tour {
        let mut order = self.order.clone();
        order.reverse();
        Tour { order }
    }

    /// Starts at the smallest vertex and heads toward its smaller neighbor.
    pub fn canonical(&self) -> Tour {
        let n = self.order.len();
        let (start, _) = self
            .order
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| *v)
            .expect("empty tour");
        let next = self.order[(start + 1) % n];
        let prev = self.order[(start + n - 1) % n];
        let order = if next < prev {
            (0..n).map(|k| self.order[(start + k) % n]).collect()
        } else {
            (0..n).map(|k| self.order[(start + n - k) % n]).collect()
        };
        Tour { order }
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.edges()
            .any(|(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
    }

    pub fn polygon(&self, inst: &Instance) -> Vec<Point> {
        self.order.iter().map(|&v| inst.point(v).clone()).collect()
    }
}

/// Total Euclidean length. Summation follows the canonical form of the tour,
/// so the result is bit-identical under rotation and reversal.
pub fn tour_length(inst: &Instance, tour: &Tour) -> f64 {
    let canon = tour.canonical();
    canon.edges().map(|(a, b)| inst.dist(a, b)).sum()
}

/// Sum of edge lengths in the given order.
pub fn edges_length(inst: &Instance, edges: &[(usize, usize)]) -> f64 {
    edges.iter().map(|&(a, b)| inst.dist(a, b)).sum()
}
