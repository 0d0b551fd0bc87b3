//! Crossings between two tours of one instance, and the subdivision that
//! removes them by inserting every crossing point into both tours.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{param_along, proper_crossing, Point, Segment};
use crate::tsp::{Instance, InstanceDoc, Tour};
use crate::two_opt::is_simple;

/// A proper crossing between the directed edges `t_edge` of T and `s_edge` of S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub t_edge: (usize, usize),
    pub s_edge: (usize, usize),
    pub point: Point,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingReport {
    /// Ordered by T-edge position, then S-edge position.
    pub crossings: Vec<Crossing>,
}

impl CrossingReport {
    pub fn count(&self) -> usize {
        self.crossings.len()
    }

    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.crossings.iter().map(|c| &c.point)
    }
}

fn segment(inst: &Instance, (a, b): (usize, usize)) -> Segment {
    Segment::new(inst.point(a).clone(), inst.point(b).clone())
}

pub fn enumerate_crossings(inst: &Instance, t: &Tour, s: &Tour) -> CrossingReport {
    let s_segs: Vec<((usize, usize), Segment)> = s.edges().map(|e| (e, segment(inst, e))).collect();
    let mut crossings = Vec::new();
    for te in t.edges() {
        let tseg = segment(inst, te);
        for (se, sseg) in &s_segs {
            if let Some(point) = proper_crossing(&tseg, sseg) {
                crossings.push(Crossing {
                    t_edge: te,
                    s_edge: *se,
                    point,
                });
            }
        }
    }
    CrossingReport { crossings }
}

pub fn is_crossing_free(inst: &Instance, t: &Tour, s: &Tour) -> bool {
    let s_segs: Vec<Segment> = s.edges().map(|e| segment(inst, e)).collect();
    t.edges().all(|te| {
        let tseg = segment(inst, te);
        s_segs
            .iter()
            .all(|sseg| proper_crossing(&tseg, sseg).is_none())
    })
}

/// The instance `V' = V ∪ crossings` with both tours routed through every
/// crossing point. Vertices `0..n` are the original points, followed by the
/// crossing points in report order.
#[derive(Clone, Debug)]
pub struct SubdividedPair {
    pub instance: Instance,
    pub t: Tour,
    pub s: Tour,
    pub n_prime: usize,
    pub report: CrossingReport,
}

/// Serialized form: the instance document plus the two tours.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairDoc {
    #[serde(flatten)]
    pub instance: InstanceDoc,
    pub t: Vec<usize>,
    pub s: Vec<usize>,
}

impl SubdividedPair {
    pub fn to_doc(&self) -> Result<PairDoc> {
        Ok(PairDoc {
            instance: InstanceDoc::from_instance(&self.instance)?,
            t: self.t.order().to_vec(),
            s: self.s.order().to_vec(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_doc()?)?)
    }
}

impl PairDoc {
    pub fn to_pair(&self) -> Result<(Instance, Tour, Tour)> {
        let inst = self.instance.to_instance()?;
        let n = inst.len();
        let t = Tour::new(self.t.clone(), n)?;
        let s = Tour::new(self.s.clone(), n)?;
        Ok((inst, t, s))
    }
}

/// Inserts every crossing point into both tours.
///
/// Both tours must be simple. Under that condition an S edge overlapping a T
/// edge in a segment must coincide with it, so proper crossings are the only
/// points that need inserting.
pub fn subdivide_pair(inst: &Instance, t: &Tour, s: &Tour) -> Result<SubdividedPair> {
    for (name, tour) in [("T", t), ("S", s)] {
        if tour.len() != inst.len() {
            return Err(Error::InvalidTour(format!(
                "{name} does not match the instance"
            )));
        }
        if !is_simple(inst, tour) {
            return Err(Error::InvalidTour(format!("{name} is not simple")));
        }
    }
    let report = enumerate_crossings(inst, t, s);
    let n = inst.len();

    let originals: BTreeSet<&Point> = inst.points().iter().collect();
    let mut added: BTreeSet<&Point> = BTreeSet::new();
    for c in &report.crossings {
        if originals.contains(&c.point) || !added.insert(&c.point) {
            return Err(Error::CoincidentPoint(Box::new(c.point.clone())));
        }
    }

    let mut points = inst.points().to_vec();
    points.extend(report.points().cloned());
    let instance = Instance::new(inst.id().to_string(), points)?;

    let t_prime = route(inst, t, &report, |c| c.t_edge);
    let s_prime = route(inst, s, &report, |c| c.s_edge);
    let n_prime = n + report.count();
    Ok(SubdividedPair {
        t: Tour::new(t_prime, n_prime)?,
        s: Tour::new(s_prime, n_prime)?,
        instance,
        n_prime,
        report,
    })
}

/// Walks `tour`, inserting after each tail the crossing vertices on that edge
/// in increasing distance from the tail.
fn route(
    inst: &Instance,
    tour: &Tour,
    report: &CrossingReport,
    edge_of: impl Fn(&Crossing) -> (usize, usize),
) -> Vec<usize> {
    let n = inst.len();
    let mut order = Vec::with_capacity(n + report.count());
    for (a, b) in tour.edges() {
        order.push(a);
        let (pa, pb) = (inst.point(a), inst.point(b));
        let mut on_edge: Vec<(BigRational, usize)> = report
            .crossings
            .iter()
            .enumerate()
            .filter(|(_, c)| edge_of(c) == (a, b))
            .map(|(k, c)| (param_along(&c.point, pa, pb), n + k))
            .collect();
        on_edge.sort();
        order.extend(on_edge.into_iter().map(|(_, v)| v));
    }
    order
}
