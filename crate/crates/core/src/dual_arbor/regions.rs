//! Faces of T plus a set of non-crossing chords, found from the nesting of
//! chord intervals along a path of T.

use crate::error::{Error, Result};
use crate::partition::Edge;
use crate::tsp::{edges_length, Instance, Tour};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub parent: Option<usize>,
    /// The chord separating this region from its parent; `None` for the root.
    pub chord: Option<Edge>,
    /// Path positions `[lo, hi]` spanned by the chord.
    pub interval: Option<(usize, usize)>,
    /// Edges of T on this region's boundary, directed as in T.
    pub t_edges: Vec<Edge>,
    pub children: Vec<usize>,
}

/// Regions of the plane graph T + chords on one side of T. Region 0 is the
/// root: the region that touches the part of T outside the path.
#[derive(Clone, Debug)]
pub struct RegionTree {
    regions: Vec<Region>,
    path: Vec<usize>,
}

impl RegionTree {
    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region(&self, id: usize) -> &Region {
        &self.regions[id]
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    /// Distinct vertices on the region's boundary, sorted.
    pub fn boundary_vertices(&self, id: usize) -> Vec<usize> {
        let r = &self.regions[id];
        let mut vs: Vec<usize> = r.t_edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let chords = r.chord.iter().chain(
            r.children
                .iter()
                .filter_map(|&c| self.regions[c].chord.as_ref()),
        );
        vs.extend(chords.flat_map(|&(a, b)| [a, b]));
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Mean of the boundary vertices; used as the drawing position of the
    /// region's dual vertex.
    pub fn site(&self, inst: &Instance, id: usize) -> (f64, f64) {
        let vs = self.boundary_vertices(id);
        let (sx, sy) = vs.iter().fold((0.0, 0.0), |(sx, sy), &v| {
            let (x, y) = inst.point(v).to_f64();
            (sx + x, sy + y)
        });
        (sx / vs.len() as f64, sy / vs.len() as f64)
    }

    /// Total length of the T edges on the region's boundary.
    pub fn t_length(&self, inst: &Instance, id: usize) -> f64 {
        edges_length(inst, &self.regions[id].t_edges)
    }
}

/// Builds the regions cut out of T by `chords`, all of whose endpoints must
/// lie on `path`. Chords are given as `[min phi, max phi]` intervals; they
/// must nest or be disjoint, sharing at most an endpoint.
pub fn build_regions(t: &Tour, chords: &[Edge], path: &[usize]) -> Result<RegionTree> {
    let n = t.len();
    let mut phi = vec![None; n];
    for (i, &v) in path.iter().enumerate() {
        phi[v] = Some(i);
    }
    let mut spans = Vec::with_capacity(chords.len());
    for &(a, b) in chords {
        let (Some(pa), Some(pb)) = (phi[a], phi[b]) else {
            return Err(Error::InvalidArborescence(format!(
                "chord ({a}, {b}) has an endpoint off the path"
            )));
        };
        spans.push((pa.min(pb), pa.max(pb), (a, b)));
    }
    spans.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));

    let mut regions = vec![Region {
        parent: None,
        chord: None,
        interval: None,
        t_edges: Vec::new(),
        children: Vec::new(),
    }];
    let mut stack: Vec<usize> = Vec::new();
    for (lo, hi, chord) in spans {
        while let Some(&top) = stack.last() {
            if regions[top].interval.unwrap().1 <= lo {
                stack.pop();
            } else {
                break;
            }
        }
        let parent = match stack.last() {
            Some(&top) => {
                let (tlo, thi) = regions[top].interval.unwrap();
                if hi > thi || (tlo, thi) == (lo, hi) {
                    return Err(Error::CrossingChords(regions[top].chord.unwrap(), chord));
                }
                top
            }
            None => 0,
        };
        let id = regions.len();
        regions[parent].children.push(id);
        regions.push(Region {
            parent: Some(parent),
            chord: Some(chord),
            interval: Some((lo, hi)),
            t_edges: Vec::new(),
            children: Vec::new(),
        });
        stack.push(id);
    }

    for (u, v) in t.edges() {
        let owner = match (phi[u], phi[v]) {
            (Some(pu), Some(pv)) if pu.abs_diff(pv) == 1 => {
                let lo = pu.min(pv);
                regions
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, r)| {
                        let (a, b) = r.interval.unwrap();
                        a <= lo && lo < b
                    })
                    .min_by_key(|(_, r)| {
                        let (a, b) = r.interval.unwrap();
                        b - a
                    })
                    .map_or(0, |(id, _)| id)
            }
            _ => 0,
        };
        regions[owner].t_edges.push((u, v));
    }

    Ok(RegionTree {
        regions,
        path: path.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octagon() -> (Instance, Tour) {
        let inst = Instance::from_integers(
            "oct",
            &[
                (2, 0),
                (4, 0),
                (6, 2),
                (6, 4),
                (4, 6),
                (2, 6),
                (0, 4),
                (0, 2),
            ],
        )
        .unwrap();
        (inst, Tour::identity(8).unwrap())
    }

    #[test]
    fn single_chord_gives_two_regions() {
        let (inst, t) = octagon();
        let rt = build_regions(&t, &[(0, 4)], &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(rt.len(), 2);
        assert_eq!(rt.region(1).t_edges, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(rt.region(0).t_edges, vec![(4, 5), (5, 6), (6, 7), (7, 0)]);
        let total = rt.t_length(&inst, 0) + rt.t_length(&inst, 1);
        let perimeter = crate::tsp::tour_length(&inst, &t);
        assert!((total - perimeter).abs() < 1e-12);
    }

    #[test]
    fn nested_chords_form_a_path() {
        let (_, t) = octagon();
        let path = [0, 1, 2, 3, 4, 5, 6];
        let rt = build_regions(&t, &[(2, 4), (0, 6), (1, 5)], &path).unwrap();
        assert_eq!(rt.len(), 4);
        let parents: Vec<Option<usize>> = rt.regions().iter().map(|r| r.parent).collect();
        assert_eq!(parents, vec![None, Some(0), Some(1), Some(2)]);
        assert_eq!(rt.region(3).t_edges, vec![(2, 3), (3, 4)]);
        assert_eq!(rt.boundary_vertices(2), vec![1, 2, 4, 5]);
    }

    #[test]
    fn touching_chords_are_siblings() {
        let (_, t) = octagon();
        let path = [0, 1, 2, 3, 4, 5, 6];
        let rt = build_regions(&t, &[(0, 2), (2, 4)], &path).unwrap();
        assert_eq!(rt.region(0).children, vec![1, 2]);
    }

    #[test]
    fn crossing_chords_are_rejected() {
        let (_, t) = octagon();
        let path = [0, 1, 2, 3, 4, 5, 6];
        assert!(matches!(
            build_regions(&t, &[(0, 3), (2, 5)], &path),
            Err(Error::CrossingChords(_, _))
        ));
        assert!(build_regions(&t, &[(0, 7)], &path).is_err());
    }
}
