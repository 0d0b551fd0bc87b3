//! Partition of the edges of S against the polygon of T.
//!
//! Edges of S are split into those inside T (`s1`), outside T (`s2`) and on
//! the boundary of T (`s3`). Each side is further split by an anchor edge
//! `e0 = (x0, y0)` and the path of T from `x0` to `y0` that carries every other
//! endpoint of that side: edges running forward along the path go to the
//! primed set, the rest to the double-primed set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_simple_polygon, locate_in_simple_polygon, segment_on_polygon, Location};
use crate::tsp::{edges_length, Instance, Tour};
use crate::uncross::is_crossing_free;

pub type Edge = (usize, usize);

/// Edges of S by location relative to the polygon of T, each in S order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub interior: Vec<Edge>,
    pub exterior: Vec<Edge>,
    pub boundary: Vec<Edge>,
}

pub fn classify_edges(inst: &Instance, t: &Tour, s: &Tour) -> Result<Classification> {
    let poly = t.polygon(inst);
    if !is_simple_polygon(&poly) {
        return Err(Error::NonSimplePolygon);
    }
    if !is_crossing_free(inst, t, s) {
        return Err(Error::InvalidTour(
            "tours cross; subdivide the pair first".into(),
        ));
    }
    let mut out = Classification::default();
    for (a, b) in s.edges() {
        let (pa, pb) = (inst.point(a), inst.point(b));
        if segment_on_polygon(pa, pb, &poly) {
            out.boundary.push((a, b));
            continue;
        }
        match locate_in_simple_polygon(&pa.midpoint(pb), &poly) {
            Location::Interior => out.interior.push((a, b)),
            Location::Exterior => out.exterior.push((a, b)),
            Location::Boundary => return Err(Error::MixedEdge(a, b)),
        }
    }
    Ok(out)
}

/// An anchor edge with the path of T from its tail to its head that holds the
/// endpoints of all other edges of its set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub edge: Edge,
    pub path: Vec<usize>,
}

impl Anchor {
    /// `phi[v]` is the position of `v` along the path, if it lies on it.
    pub fn positions(&self, n: usize) -> Vec<Option<usize>> {
        let mut phi = vec![None; n];
        for (i, &v) in self.path.iter().enumerate() {
            phi[v] = Some(i);
        }
        phi
    }
}

/// The x0 -> y0 path for `e0`, or `None` if both arcs of T between its
/// endpoints carry endpoints of other edges in their interiors.
fn anchor_path(t: &Tour, edges: &[Edge], e0: Edge) -> Option<Vec<usize>> {
    let n = t.len();
    let pos = t.positions();
    let (x0, y0) = e0;
    let (px, py) = (pos[x0], pos[y0]);
    // Forward arc runs x0 -> y0 in tour direction; the other runs y0 -> x0.
    let forward_len = (py + n - px) % n;
    let in_forward = |v: usize| {
        let d = (pos[v] + n - px) % n;
        d > 0 && d < forward_len
    };
    let others = edges
        .iter()
        .filter(|&&e| e != e0)
        .flat_map(|&(a, b)| [a, b])
        .filter(|&v| v != x0 && v != y0);
    let (mut fwd_hit, mut back_hit) = (false, false);
    for v in others {
        if in_forward(v) {
            fwd_hit = true;
        } else {
            back_hit = true;
        }
    }
    let order = t.order();
    match (fwd_hit, back_hit) {
        (true, true) => None,
        (_, false) => Some((0..=forward_len).map(|k| order[(px + k) % n]).collect()),
        (false, true) => Some(
            (0..=n - forward_len)
                .map(|k| order[(px + n - k) % n])
                .collect(),
        ),
    }
}

/// Picks the qualifying edge with the lexicographically smallest
/// `(x0, y0)`. Needs at least two edges.
pub fn choose_anchor(t: &Tour, edges: &[Edge]) -> Result<Anchor> {
    if edges.len() < 2 {
        return Err(Error::NoAnchor);
    }
    let mut sorted = edges.to_vec();
    sorted.sort();
    sorted
        .into_iter()
        .find_map(|e| anchor_path(t, edges, e).map(|path| Anchor { edge: e, path }))
        .ok_or(Error::NoAnchor)
}

/// Uses `e0` as the anchor, failing if it is not in `edges` or does not qualify.
pub fn anchor_for(t: &Tour, edges: &[Edge], e0: Edge) -> Result<Anchor> {
    if !edges.contains(&e0) {
        return Err(Error::InvalidAnchor(e0.0, e0.1));
    }
    anchor_path(t, edges, e0)
        .map(|path| Anchor { edge: e0, path })
        .ok_or(Error::InvalidAnchor(e0.0, e0.1))
}

/// Splits `edges` into those with `phi(a) < phi(b)` along the anchor path and
/// the rest.
pub fn split_compatible(edges: &[Edge], anchor: &Anchor, n: usize) -> (Vec<Edge>, Vec<Edge>) {
    let phi = anchor.positions(n);
    edges
        .iter()
        .partition(|&&(a, b)| matches!((phi[a], phi[b]), (Some(pa), Some(pb)) if pa < pb))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    S1Prime,
    S1DoublePrime,
    S2Prime,
    S2DoublePrime,
    S3,
}

impl Role {
    pub const ALL: [Role; 5] = [
        Role::S1Prime,
        Role::S1DoublePrime,
        Role::S2Prime,
        Role::S2DoublePrime,
        Role::S3,
    ];
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::S1Prime => "s1-prime",
            Role::S1DoublePrime => "s1-double-prime",
            Role::S2Prime => "s2-prime",
            Role::S2DoublePrime => "s2-double-prime",
            Role::S3 => "s3",
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct PartitionOptions {
    /// Anchor for the interior side instead of the lexicographic choice.
    pub interior_anchor: Option<Edge>,
    /// Anchor for the exterior side instead of the lexicographic choice.
    pub exterior_anchor: Option<Edge>,
    /// Treat the exterior of T as its interior and vice versa.
    pub swap_sides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    pub s1: Vec<Edge>,
    pub s2: Vec<Edge>,
    pub s3: Vec<Edge>,
    pub s1_prime: Vec<Edge>,
    pub s1_dprime: Vec<Edge>,
    pub s2_prime: Vec<Edge>,
    pub s2_dprime: Vec<Edge>,
    pub anchor1: Option<Anchor>,
    pub anchor2: Option<Anchor>,
}

impl EdgePartition {
    pub fn set(&self, role: Role) -> &[Edge] {
        match role {
            Role::S1Prime => &self.s1_prime,
            Role::S1DoublePrime => &self.s1_dprime,
            Role::S2Prime => &self.s2_prime,
            Role::S2DoublePrime => &self.s2_dprime,
            Role::S3 => &self.s3,
        }
    }

    /// The anchor whose path orders the given set.
    pub fn anchor(&self, role: Role) -> Option<&Anchor> {
        match role {
            Role::S1Prime | Role::S1DoublePrime => self.anchor1.as_ref(),
            Role::S2Prime | Role::S2DoublePrime => self.anchor2.as_ref(),
            Role::S3 => None,
        }
    }

    /// `(|S1'|, |S1''|, |S2'|, |S2''|, |S3|)`.
    pub fn sizes(&self) -> [usize; 5] {
        Role::ALL.map(|r| self.set(r).len())
    }

    pub fn costs(&self, inst: &Instance) -> [f64; 5] {
        Role::ALL.map(|r| edges_length(inst, self.set(r)))
    }

    pub fn role_of(&self, e: Edge) -> Option<Role> {
        Role::ALL.into_iter().find(|&r| self.set(r).contains(&e))
    }

    pub fn to_doc(&self, s: &Tour) -> PartitionDoc {
        PartitionDoc {
            anchor1: self.anchor1.as_ref().map(|a| a.edge),
            path1: self.anchor1.as_ref().map(|a| a.path.clone()),
            anchor2: self.anchor2.as_ref().map(|a| a.edge),
            path2: self.anchor2.as_ref().map(|a| a.path.clone()),
            edges: s
                .edges()
                .filter_map(|e| {
                    self.role_of(e).map(|role| TaggedEdge {
                        edge: [e.0, e.1],
                        role,
                    })
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedEdge {
    pub edge: [usize; 2],
    pub role: Role,
}

/// JSON form of a partition: every S edge in tour order with its role.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub anchor1: Option<Edge>,
    pub path1: Option<Vec<usize>>,
    pub anchor2: Option<Edge>,
    pub path2: Option<Vec<usize>>,
    pub edges: Vec<TaggedEdge>,
}

fn split_side(
    t: &Tour,
    edges: &[Edge],
    preferred: Option<Edge>,
    n: usize,
) -> Result<(Vec<Edge>, Vec<Edge>, Option<Anchor>)> {
    if edges.len() <= 1 {
        return Ok((edges.to_vec(), Vec::new(), None));
    }
    let anchor = match preferred {
        Some(e0) => anchor_for(t, edges, e0)?,
        None => choose_anchor(t, edges)?,
    };
    let (prime, dprime) = split_compatible(edges, &anchor, n);
    Ok((prime, dprime, Some(anchor)))
}

pub fn partition_all(
    inst: &Instance,
    t: &Tour,
    s: &Tour,
    opts: &PartitionOptions,
) -> Result<EdgePartition> {
    let c = classify_edges(inst, t, s)?;
    let (s1, s2) = if opts.swap_sides {
        (c.exterior, c.interior)
    } else {
        (c.interior, c.exterior)
    };
    let n = inst.len();
    let (s1_prime, s1_dprime, anchor1) = split_side(t, &s1, opts.interior_anchor, n)?;
    let (s2_prime, s2_dprime, anchor2) = split_side(t, &s2, opts.exterior_anchor, n)?;
    Ok(EdgePartition {
        s1,
        s2,
        s3: c.boundary,
        s1_prime,
        s1_dprime,
        s2_prime,
        s2_dprime,
        anchor1,
        anchor2,
    })
}
