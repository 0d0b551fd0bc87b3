//! Regions cut off by the compatible interior chords of the 42-point pair
//! and the weighted arborescence dual to them.

use twoopt_lab::dual_arbor::{check_all, set_arborescence, TOLERANCE};
use twoopt_lab::fixtures::crossing_free42;
use twoopt_lab::partition::{partition_all, PartitionOptions, Role};

fn main() -> twoopt_lab::Result<()> {
    let f = crossing_free42();
    let opts = PartitionOptions {
        interior_anchor: f.interior_anchor,
        ..Default::default()
    };
    let p = partition_all(&f.instance, &f.t, &f.s, &opts)?;
    let path = &p.anchor1.as_ref().expect("interior anchor").path;
    let sa = set_arborescence(&f.instance, &f.t, Role::S1Prime, &p.s1_prime, path)?;

    for id in 0..sa.regions.len() {
        let (x, y) = sa.regions.site(&f.instance, id);
        let r = sa.regions.region(id);
        println!(
            "D{:<2} site ({x:7.3}, {y:7.3}) parent {:?} T-length {:.3}",
            id + 1,
            r.parent.map(|p| p + 1),
            sa.regions.t_length(&f.instance, id),
        );
    }
    let a = &sa.arborescence;
    for e in a.edges() {
        println!(
            "D{} -> D{}: c = {:.3}, w = {:.3}",
            e.from + 1,
            e.to + 1,
            e.c,
            e.w
        );
    }
    println!(
        "c(A) = {:.3}, w(A) = {:.3}, height {}",
        a.c_total(),
        a.w_total(),
        a.height()
    );
    for r in check_all(a, TOLERANCE) {
        println!(
            "{:>18}: {}",
            r.condition.to_string(),
            if r.holds { "holds" } else { "fails" }
        );
    }
    Ok(())
}
