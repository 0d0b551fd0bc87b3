//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::time::{Duration, Instant};

use twoopt_lab::dual_arbor::{
    bound_certificate, build_arborescence, build_regions, check_all, check_combined_triangle,
    check_combined_two_opt, synthetic_arborescence, SyntheticConfig, TOLERANCE,
};
use twoopt_lab::fixtures::{
    crossing_free42, crossing_free42_compatible, crossings12, crossings12_points, FixtureName,
};
use twoopt_lab::harness::{run_pipeline, sweep, ExperimentConfig, PipelineReport};
use twoopt_lab::partition::{anchor_for, classify_edges, split_compatible};
use twoopt_lab::tsp::{brute_force_optimum, exact_optimum, generate_instance, Family};
use twoopt_lab::two_opt::{is_simple, is_two_optimal, random_tour, run_two_opt, Policy};
use twoopt_lab::uncross::{enumerate_crossings, is_crossing_free, subdivide_pair};
use twoopt_lab::{tour_length, Point};

/// Relative tolerance on lengths.
const LEN_TOL: f64 = 1e-9;
/// Absolute slack on the S3 bound.
const S3_TOL: f64 = 1e-9;
const MAX_ITERS: usize = 1_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= LEN_TOL * a.abs().max(b.abs())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn crossings_fixture() -> Outcome {
    let f = crossings12();
    let report = enumerate_crossings(&f.instance, &f.t, &f.s);
    let mut got: Vec<Point> = report.points().cloned().collect();
    got.sort();
    let mut want = crossings12_points().to_vec();
    want.sort();
    ensure(got == want, || format!("crossing points {got:?}"))?;
    let sub = subdivide_pair(&f.instance, &f.t, &f.s).map_err(|e| e.to_string())?;
    ensure(sub.instance.len() == 15, || {
        format!("n' = {}", sub.instance.len())
    })?;
    ensure(is_crossing_free(&sub.instance, &sub.t, &sub.s), || {
        "still crossing".into()
    })?;
    ensure(
        close(
            tour_length(&sub.instance, &sub.t),
            tour_length(&f.instance, &f.t),
        ) && close(
            tour_length(&sub.instance, &sub.s),
            tour_length(&f.instance, &f.s),
        ),
        || "lengths changed".into(),
    )?;
    Ok("3 exact crossings, 15 points, crossing free, lengths kept".into())
}

fn crossing_free_fixture() -> Outcome {
    let f = crossing_free42();
    let c = classify_edges(&f.instance, &f.t, &f.s).map_err(|e| e.to_string())?;
    let sizes = (c.interior.len(), c.exterior.len(), c.boundary.len());
    ensure(sizes == (17, 12, 13), || format!("class sizes {sizes:?}"))?;
    let find = |x, y| {
        let p = Point::int(x, y);
        (0..f.instance.len())
            .find(|&i| f.instance.point(i) == &p)
            .unwrap()
    };
    let e0 = (find(40, 1), find(36, 6));
    let anchor = anchor_for(&f.t, &c.interior, e0).map_err(|e| e.to_string())?;
    let (mut prime, _) = split_compatible(&c.interior, &anchor, f.instance.len());
    prime.sort();
    let mut want = crossing_free42_compatible();
    want.sort();
    ensure(prime == want, || format!("compatible set {prime:?}"))?;
    let regions = build_regions(&f.t, &prime, &anchor.path).map_err(|e| e.to_string())?;
    let a = build_arborescence(&f.instance, &regions).map_err(|e| e.to_string())?;
    let shape = (regions.len(), a.len(), a.out_edges(a.root()).len());
    ensure(shape == (10, 9, 1), || {
        format!("regions/edges/root degree {shape:?}")
    })?;
    ensure(
        check_combined_triangle(&a, TOLERANCE).holds && check_combined_two_opt(&a, TOLERANCE).holds,
        || "combined conditions fail".into(),
    )?;
    Ok("classes (17, 12, 13), |S1'| = 9, 10 regions, 9 edges, root out-degree 1".into())
}

fn local_search_properties() -> Outcome {
    let mut runs = 0;
    for seed in 0..200u64 {
        let n = 8 + (seed % 7) as usize;
        let inst =
            generate_instance(seed, n, Family::UniformBox, 100).map_err(|e| e.to_string())?;
        let start = random_tour(n, seed).map_err(|e| e.to_string())?;
        let policy = if seed % 2 == 0 {
            Policy::FirstImprovement
        } else {
            Policy::BestImprovement
        };
        let (s, stats) =
            run_two_opt(&inst, &start, policy, MAX_ITERS).map_err(|e| e.to_string())?;
        ensure(stats.converged(), || {
            format!("seed {seed} hit the move budget")
        })?;
        ensure(is_two_optimal(&inst, &s).0, || {
            format!("seed {seed} not 2-optimal")
        })?;
        ensure(is_simple(&inst, &s), || format!("seed {seed} not simple"))?;
        runs += 1;
    }
    for seed in 0..50u64 {
        let n = 3 + (seed % 12) as usize;
        let inst =
            generate_instance(seed, n, Family::Collinear, 1000).map_err(|e| e.to_string())?;
        let start = random_tour(n, seed).map_err(|e| e.to_string())?;
        let (_, stats) = run_two_opt(&inst, &start, Policy::FirstImprovement, MAX_ITERS)
            .map_err(|e| e.to_string())?;
        let span = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| inst.dist(i, j))
            .fold(0.0, f64::max);
        ensure(
            stats.converged() && close(stats.final_length, 2.0 * span),
            || {
                format!(
                    "collinear seed {seed}: {} vs {}",
                    stats.final_length,
                    2.0 * span
                )
            },
        )?;
    }
    Ok(format!(
        "{runs} uniform runs 2-optimal and simple, 50 collinear runs at twice the span"
    ))
}

fn subdivision_properties() -> Outcome {
    let mut checked_opt = 0;
    let mut total_crossings = 0;
    for seed in 0..100u64 {
        let n = 6 + (seed % 9) as usize;
        let inst =
            generate_instance(seed, n, Family::UniformBox, 100).map_err(|e| e.to_string())?;
        let t = exact_optimum(&inst, 18).map_err(|e| e.to_string())?;
        let start = random_tour(n, seed + 1000).map_err(|e| e.to_string())?;
        let (s, _) = run_two_opt(&inst, &start, Policy::FirstImprovement, MAX_ITERS)
            .map_err(|e| e.to_string())?;
        let sub = subdivide_pair(&inst, &t, &s).map_err(|e| e.to_string())?;
        total_crossings += sub.report.count();
        ensure(is_crossing_free(&sub.instance, &sub.t, &sub.s), || {
            format!("seed {seed} crossing")
        })?;
        ensure(is_two_optimal(&sub.instance, &sub.s).0, || {
            format!("seed {seed}: S' not 2-optimal")
        })?;
        if sub.n_prime <= 12 {
            let opt = exact_optimum(&sub.instance, 18).map_err(|e| e.to_string())?;
            let (a, b) = (
                tour_length(&sub.instance, &opt),
                tour_length(&sub.instance, &sub.t),
            );
            ensure(close(a, b), || {
                format!("seed {seed}: optimum {a} vs T' {b}")
            })?;
            checked_opt += 1;
        }
    }
    Ok(format!(
        "100 pairs crossing free with 2-optimal S' ({total_crossings} crossings), {checked_opt} optima rechecked on V'"
    ))
}

fn oracle_equivalence() -> Outcome {
    for seed in 0..50u64 {
        let n = 4 + (seed % 6) as usize;
        let inst =
            generate_instance(seed, n, Family::UniformBox, 100).map_err(|e| e.to_string())?;
        let hk = exact_optimum(&inst, 18).map_err(|e| e.to_string())?;
        let bf = brute_force_optimum(&inst).map_err(|e| e.to_string())?;
        let (a, b) = (tour_length(&inst, &hk), tour_length(&inst, &bf));
        ensure(a == b, || format!("seed {seed}: {a} vs {b}"))?;
    }
    Ok("50 instances, identical lengths".into())
}

fn synthetic_lemma_chain() -> Outcome {
    let cfg = SyntheticConfig::default();
    let (mut accepted, mut seed, mut max_k) = (0, 0u64, 0f64);
    while accepted < 1000 {
        let a = synthetic_arborescence(seed, &cfg);
        seed += 1;
        if !(check_combined_triangle(&a, TOLERANCE).holds
            && check_combined_two_opt(&a, TOLERANCE).holds)
        {
            continue;
        }
        accepted += 1;
        for r in check_all(&a, TOLERANCE) {
            ensure(r.holds, || {
                format!("seed {}: {} fails", seed - 1, r.condition)
            })?;
        }
        let cert =
            bound_certificate(&a, TOLERANCE).map_err(|e| format!("seed {}: {e}", seed - 1))?;
        ensure(cert.holds(), || {
            format!("seed {}: certificate fails", seed - 1)
        })?;
        max_k = max_k.max(cert.k);
    }
    Ok(format!(
        "1000 accepted of {seed} generated, all checks hold, no cover gap, largest k {max_k:.3}"
    ))
}

fn five_set(reports: &[PipelineReport]) -> Outcome {
    for r in reports {
        ensure(
            r.five_set_holds && close(r.partition_costs.iter().sum(), r.length_s),
            || {
                format!(
                    "{}: five-set sum {} vs {}",
                    r.instance_id, r.five_set_sum, r.length_s
                )
            },
        )?;
        ensure(r.partition_costs[4] <= r.length_t + S3_TOL, || {
            format!(
                "{}: c(S3) {} > c(T) {}",
                r.instance_id, r.partition_costs[4], r.length_t
            )
        })?;
    }
    Ok(format!("{} pipeline runs", reports.len()))
}

fn collect_pipeline_runs() -> Result<Vec<PipelineReport>, String> {
    let mut out = Vec::new();
    for name in [FixtureName::Crossings12, FixtureName::CrossingFree42] {
        out.push(run_pipeline(&ExperimentConfig::fixture(name)).map_err(|e| e.to_string())?);
    }
    for n in [8, 10, 12] {
        let (reports, _) =
            sweep(&ExperimentConfig::generated(0, n), 1..=40).map_err(|e| e.to_string())?;
        out.extend(reports);
    }
    Ok(out)
}

fn ratio_report() -> Outcome {
    let mut parts = Vec::new();
    let mut worst = 0f64;
    for n in 8..=14 {
        let (reports, _) =
            sweep(&ExperimentConfig::generated(0, n), 1..=30).map_err(|e| e.to_string())?;
        let max = reports.iter().map(|r| r.ratio).fold(0.0, f64::max);
        let mean = reports.iter().map(|r| r.ratio).sum::<f64>() / reports.len() as f64;
        worst = worst.max(max);
        parts.push(format!("n={n} mean {mean:.4} max {max:.4}"));
    }
    let note = if worst < 1.25 {
        "below 1.25"
    } else {
        "not below 1.25"
    };
    Ok(format!(
        "reported only, worst {worst:.4} ({note}); {}",
        parts.join(", ")
    ))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "AC1 crossing fixture",
            Duration::from_secs(1),
            Box::new(crossings_fixture),
        ),
        (
            "AC2 crossing-free fixture",
            Duration::from_secs(1),
            Box::new(crossing_free_fixture),
        ),
        (
            "AC3 local search properties",
            Duration::from_secs(30),
            Box::new(local_search_properties),
        ),
        (
            "AC4 subdivision properties",
            Duration::from_secs(300),
            Box::new(subdivision_properties),
        ),
        (
            "AC5 exact oracles agree",
            Duration::from_secs(60),
            Box::new(oracle_equivalence),
        ),
        (
            "AC6 synthetic lemma chain",
            Duration::from_secs(60),
            Box::new(synthetic_lemma_chain),
        ),
        (
            "AC7 five-set assembly",
            Duration::from_secs(300),
            Box::new(|| collect_pipeline_runs().and_then(|r| five_set(&r))),
        ),
        (
            "AC8 ratio sweep",
            Duration::from_secs(300),
            Box::new(ratio_report),
        ),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let started = Instant::now();
        let outcome = check();
        let took = started.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > limit => Err(format!("{msg}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {name}: {msg} [{took:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg} [{took:.2?}]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
