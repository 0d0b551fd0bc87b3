//! 2-Opt on a random instance: first vs best improvement, compared with the
//! exact optimum.
//!
//!     cargo run --example two_opt_run -- [n] [seed]

use twoopt_lab::tour_length;
use twoopt_lab::tsp::{exact_optimum, generate_instance, Family, DEFAULT_EXACT_LIMIT};
use twoopt_lab::two_opt::{is_simple, is_two_optimal, random_tour, run_two_opt, Policy};

fn main() -> twoopt_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let inst = generate_instance(seed, n, Family::UniformBox, 100)?;
    let opt = exact_optimum(&inst, DEFAULT_EXACT_LIMIT)?;
    let opt_len = tour_length(&inst, &opt);
    println!(
        "instance {} with {n} points, optimum {opt_len:.4}",
        inst.id()
    );

    let start = random_tour(n, seed)?;
    for policy in [Policy::FirstImprovement, Policy::BestImprovement] {
        let (tour, stats) = run_two_opt(&inst, &start, policy, 100_000)?;
        let (two_opt, _) = is_two_optimal(&inst, &tour);
        println!(
            "{policy:?}: {:.4} -> {:.4} in {} moves, ratio {:.4}, 2-optimal {two_opt}, simple {}",
            stats.start_length,
            stats.final_length,
            stats.iterations,
            stats.final_length / opt_len,
            is_simple(&inst, &tour),
        );
    }
    Ok(())
}
