//! The twelve-point pair with three crossings: find them and subdivide both
//! tours so they no longer cross.

use twoopt_lab::fixtures::crossings12;
use twoopt_lab::tour_length;
use twoopt_lab::uncross::{enumerate_crossings, is_crossing_free, subdivide_pair};

fn main() -> twoopt_lab::Result<()> {
    let f = crossings12();
    let report = enumerate_crossings(&f.instance, &f.t, &f.s);
    for c in &report.crossings {
        println!(
            "T{:?} x S{:?} at ({}, {})",
            c.t_edge, c.s_edge, c.point.x, c.point.y
        );
    }

    let sub = subdivide_pair(&f.instance, &f.t, &f.s)?;
    println!("n = {} -> n' = {}", f.instance.len(), sub.n_prime);
    println!("T' = {:?}", sub.t.order());
    println!("S' = {:?}", sub.s.order());
    println!(
        "lengths {:.6} / {:.6} before, {:.6} / {:.6} after",
        tour_length(&f.instance, &f.t),
        tour_length(&f.instance, &f.s),
        tour_length(&sub.instance, &sub.t),
        tour_length(&sub.instance, &sub.s),
    );
    println!(
        "crossing free: {}",
        is_crossing_free(&sub.instance, &sub.t, &sub.s)
    );
    Ok(())
}
