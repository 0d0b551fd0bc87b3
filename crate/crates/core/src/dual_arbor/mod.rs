//! Weighted arborescences dual to T plus one edge set of S, and the checks
//! on them.
//!
//! For a set of chords on one side of T, every chord cuts off one region;
//! the arborescence has a vertex per region and an edge per chord, directed
//! away from the region touching the part of T off the anchor path. An edge
//! carries `c`, the chord length, and `w`, the length of T on the boundary of
//! the region it enters.

mod arborescence;
mod certificate;
pub mod lemmas;
mod regions;
mod synthetic;

pub use arborescence::{ArborEdge, WeightedArborescence};
pub use certificate::{
    bound_certificate, cover_at, size_and_ratio_bounds, Certificate, Cover, RatioBounds, Regime,
    MIN_K,
};
pub use lemmas::{
    check_all, check_combined_triangle, check_combined_two_opt, check_e_prime, check_e_r,
    check_max_bound, check_weight_bound, e_prime_set, e_r_set, radii, ratio_k, Condition, EdgeSet,
    LemmaReport, Witness, TOLERANCE,
};
pub use regions::{build_regions, Region, RegionTree};
pub use synthetic::{synthetic_arborescence, SyntheticConfig};

use crate::error::Result;
use crate::partition::{Edge, EdgePartition, Role};
use crate::tsp::{Instance, Tour};

/// One arborescence per region tree: edge `i` enters region `i + 1`.
pub fn build_arborescence(inst: &Instance, rt: &RegionTree) -> Result<WeightedArborescence> {
    let edges = rt
        .regions()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(id, r)| {
            let (a, b) = r.chord.expect("non-root regions carry a chord");
            ArborEdge {
                from: r.parent.expect("non-root regions have a parent"),
                to: id,
                c: inst.dist(a, b),
                w: rt.t_length(inst, id),
            }
        })
        .collect();
    WeightedArborescence::new(rt.root(), edges)
}

/// The arborescence of one edge set of the partition.
#[derive(Clone, Debug)]
pub struct SetArborescence {
    pub role: Role,
    pub regions: RegionTree,
    pub arborescence: WeightedArborescence,
    /// Length of T on the boundary of the root region.
    pub root_t_length: f64,
}

pub fn set_arborescence(
    inst: &Instance,
    t: &Tour,
    role: Role,
    chords: &[Edge],
    path: &[usize],
) -> Result<SetArborescence> {
    let regions = build_regions(t, chords, path)?;
    let arborescence = build_arborescence(inst, &regions)?;
    let root_t_length = regions.t_length(inst, regions.root());
    Ok(SetArborescence {
        role,
        regions,
        arborescence,
        root_t_length,
    })
}

/// Arborescences for `S1'`, `S1''`, `S2'` and `S2''`, skipping sets with
/// fewer than two edges. Both sets of a side use that side's anchor path.
pub fn pipeline_arborescences(
    inst: &Instance,
    t: &Tour,
    p: &EdgePartition,
) -> Result<Vec<SetArborescence>> {
    let mut out = Vec::new();
    for role in [
        Role::S1Prime,
        Role::S1DoublePrime,
        Role::S2Prime,
        Role::S2DoublePrime,
    ] {
        let set = p.set(role);
        if set.len() < 2 {
            continue;
        }
        let anchor = p
            .anchor(role)
            .expect("sides with two or more edges have an anchor");
        out.push(set_arborescence(inst, t, role, set, &anchor.path)?);
    }
    Ok(out)
}
