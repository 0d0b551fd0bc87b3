//! Edge partition of the 42-point crossing-free pair, once with the drawn
//! anchor and once with the lexicographic choice.

use twoopt_lab::fixtures::crossing_free42;
use twoopt_lab::partition::{partition_all, PartitionOptions, Role};

fn main() -> twoopt_lab::Result<()> {
    let f = crossing_free42();
    for (label, anchor) in [("drawn anchor", f.interior_anchor), ("lexicographic", None)] {
        let opts = PartitionOptions {
            interior_anchor: anchor,
            ..Default::default()
        };
        let p = partition_all(&f.instance, &f.t, &f.s, &opts)?;
        println!("{label}:");
        println!(
            "  interior {}, exterior {}, on T {}",
            p.s1.len(),
            p.s2.len(),
            p.s3.len()
        );
        if let Some(a) = &p.anchor1 {
            println!("  e0 = {:?}, path of {} vertices", a.edge, a.path.len());
        }
        let costs = p.costs(&f.instance);
        for (role, cost) in Role::ALL.iter().zip(costs) {
            println!(
                "  {:<16} {:2} edges, length {cost:.3}",
                role.to_string(),
                p.set(*role).len()
            );
        }
    }
    Ok(())
}
